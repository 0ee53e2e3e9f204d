//! The left and right zero-mode algebras, their normal ordering and the
//! relation-consistency checks.

mod checks;
mod element;

pub use checks::{
    check_confluence_samples, check_genex, check_rmatrix_equivalence, confluent_on, det_a, det_terms, dq_p,
    exchange_index_choices, genex_residual, require_height, rmatrix_exchange_residual, GenexPlacement,
};
pub use element::{content, is_normal, termination_measure, AlgElement, Chirality, Gen, RewriteOrder, Rewriter, Word};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{FieldCtx, PCoeff};
    use crate::qtensor::AlphaChoice;

    #[test]
    fn exchange_example_two_terms() {
        let ctx = FieldCtx::get(2, 4);
        let e = AlgElement::word(ctx, Chirality::Left, vec![Gen::new(2, 1), Gen::new(1, 2)]).normal_form();
        let den = PCoeff::qnum_pij(ctx, 2, 1, 2, -1);
        let c1 = PCoeff::qnum_pij(ctx, 2, 1, 2, 0).div(&den).unwrap();
        let c2 = PCoeff::q_pij(ctx, 2, 1, 2, 1).div(&den).unwrap().neg();
        let mut want = AlgElement::zero(ctx, Chirality::Left);
        want.add_term(vec![Gen::new(1, 2), Gen::new(2, 1)], c1);
        want.add_term(vec![Gen::new(1, 1), Gen::new(2, 2)], c2);
        assert_eq!(e.len(), 2);
        assert!(e.sub(&want).unwrap().normal_form().is_zero());
    }

    #[test]
    fn weight_symbol_moves_right() {
        for n in [2u32, 3] {
            let ctx = FieldCtx::get(n, 5);
            let x1 = PCoeff::qp(ctx, n as usize, 1);
            let e = AlgElement::from_coeff(x1.clone(), Chirality::Left)
                .mul(&AlgElement::gen(ctx, Chirality::Left, 1, 2))
                .unwrap()
                .normal_form();
            let shift = &ctx.q_pow(1) * &ctx.q_frac_pow(-1);
            let want = AlgElement::gen(ctx, Chirality::Left, 1, 2).mul_coeff_right(&x1.scale(&shift));
            assert!(e.sub(&want).unwrap().is_zero());
        }
    }

    #[test]
    fn already_normal_is_fixed() {
        let ctx = FieldCtx::get(3, 4);
        let w = vec![Gen::new(1, 1), Gen::new(1, 1), Gen::new(2, 3)];
        let e = AlgElement::word(ctx, Chirality::Right, w.clone());
        let nf = e.normal_form();
        assert_eq!(nf.len(), 1);
        assert!(nf.terms().contains_key(&w));
    }

    #[test]
    fn determinant_expansion() {
        let c3 = FieldCtx::get(3, 5);
        assert_eq!(det_terms(c3).unwrap().len(), 36);
        let c1 = FieldCtx::get(1, 3);
        let d = det_a(c1, Chirality::Left).unwrap();
        assert!(d.sub(&AlgElement::gen(c1, Chirality::Left, 1, 1)).unwrap().is_zero());
        assert_eq!(dq_p(c1).as_constant(), Some(c1.one()));
        assert!(det_a(FieldCtx::get(3, 3), Chirality::Left).is_err());
    }

    #[test]
    fn generalized_exchange_small() {
        let ctx = FieldCtx::get(2, 4);
        for chir in [Chirality::Left, Chirality::Right] {
            let rep = check_genex(ctx, &[1, 2, 3, 4], chir, GenexPlacement::Left);
            assert!(rep.passed(), "{}", rep.to_text());
        }
        let rep = check_genex(ctx, &[2], Chirality::Left, GenexPlacement::Right);
        assert!(!rep.passed());
        let c3 = FieldCtx::get(3, 5);
        assert!(genex_residual(c3, Chirality::Left, 3, 1, 2, 1, 3, GenexPlacement::Left).is_zero());
    }

    #[test]
    fn rmatrix_forms_match_rules() {
        for n in [2u32, 3] {
            let rep = check_rmatrix_equivalence(FieldCtx::get(n, 4));
            assert!(rep.passed(), "{}", rep.to_text());
        }
        let ctx = FieldCtx::get(2, 4);
        assert!(!rmatrix_exchange_residual(ctx, Chirality::Left, AlphaChoice::Ratio, (1, 2, 1, 2)).is_zero());
    }

    #[test]
    fn confluence_example_and_samples() {
        let ctx = FieldCtx::get(2, 4);
        assert!(confluent_on(ctx, Chirality::Left, &vec![Gen::new(2, 1), Gen::new(1, 2), Gen::new(1, 1)]));
        let rep = check_confluence_samples(FieldCtx::get(3, 4), 100, 0);
        assert!(rep.passed(), "{}", rep.to_text());
    }
}
