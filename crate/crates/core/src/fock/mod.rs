//! Restricted vacuum modules of the zero-mode algebras as exact matrices, the
//! `n = 2` closed-form module and its scalar product.

mod checks;
mod enumerate;
mod module;
mod n2;

pub use checks::{check_module, det_minus_dq, exchange_elements};
pub use module::{build_module, default_depth, vacuum_weight, FockBasis, FockModule, FockState};
pub use n2::{check_closed_form, closed_form_commutator_eigenvalues, gram, n2_closed_form, N2ClosedForm};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{qint, FieldCtx, PCoeff};
    use crate::zmodes::{AlgElement, Chirality};

    #[test]
    fn n2_dimension_is_h_squared() {
        for h in 3..=6u32 {
            let m = build_module(FieldCtx::get(2, h), Chirality::Left, None).unwrap();
            assert!(m.basis().complete);
            assert_eq!(m.dim(), (h * h) as usize);
        }
    }

    #[test]
    fn n2_module_identities() {
        for chir in [Chirality::Left, Chirality::Right] {
            let m = build_module(FieldCtx::get(2, 4), chir, None).unwrap();
            let rep = check_module(&m);
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn depth_zero_is_the_vacuum() {
        let ctx = FieldCtx::get(2, 4);
        let m = build_module(ctx, Chirality::Left, Some(0)).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(!m.basis().complete);
        assert!(m.gen(2, 1).col(0).is_zero() && m.gen(2, 2).col(0).is_zero());
    }

    #[test]
    fn vacuum_evaluations() {
        let c2 = FieldCtx::get(2, 4);
        let m = build_module(c2, Chirality::Left, None).unwrap();
        let e = AlgElement::from_coeff(PCoeff::q_pij(c2, 2, 1, 2, 1), Chirality::Left);
        let v = m.eval_on(&e, &m.vacuum()).unwrap();
        assert_eq!(v, m.vacuum().scale(&c2.q_pow(1)));
        let one = m.eval_operator(&AlgElement::one(c2, Chirality::Left)).unwrap();
        assert_eq!(one, crate::linalg::OpMatrix::identity(c2, m.dim()));

        let c3 = FieldCtx::get(3, 4);
        let m3 = build_module(c3, Chirality::Left, Some(6)).unwrap();
        let det = det_minus_dq(&m3).add(&AlgElement::from_coeff(crate::zmodes::dq_p(c3), Chirality::Left)).unwrap();
        let v = m3.eval_on(&det, &m3.vacuum()).unwrap();
        assert_eq!(v, m3.vacuum().scale(&qint(c3, 2)));
    }

    #[test]
    fn normal_ordered_determinant_has_a_vacuum_pole() {
        let c3 = FieldCtx::get(3, 4);
        let m3 = build_module(c3, Chirality::Left, Some(4)).unwrap();
        let det = crate::zmodes::det_a(c3, Chirality::Left).unwrap();
        assert!(matches!(m3.eval_on(&det, &m3.vacuum()), Err(crate::Error::PoleObstruction { .. })));
    }

    #[test]
    fn json_round_trip() {
        let m = build_module(FieldCtx::get(2, 3), Chirality::Right, None).unwrap();
        let back = FockModule::from_json(&m.to_json()).unwrap();
        assert_eq!(back.dim(), m.dim());
        assert_eq!(back.basis().states, m.basis().states);
        assert_eq!(back.gens(), m.gens());
        assert_eq!(back.chirality(), Chirality::Right);
    }

    #[test]
    fn closed_form_and_gram() {
        for h in [3u32, 4, 5] {
            let ctx = FieldCtx::get(2, h);
            let rep = check_closed_form(ctx).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
            let ev = closed_form_commutator_eigenvalues(ctx).unwrap();
            for (m, x) in ev.iter().enumerate() {
                assert_eq!(x, &-qint(ctx, 2 * m as i64 + 2));
            }
        }
        let g = gram(FieldCtx::get(2, 4)).unwrap();
        assert!(g.get(0, 0).is_one());
        assert!((g.get(1, 1).to_complex().re - 2f64.sqrt()).abs() < 1e-12);
    }
}

