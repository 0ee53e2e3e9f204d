//! The operators `Q^i_j = sum_alpha a^i_alpha (x) abar^alpha_j` on the product
//! of the two vacuum modules, and every check made on them.

mod checks;
mod explore;
mod n2;
mod space;

pub use checks::{check_lemma1, check_lemma2, check_nilpotency};
pub use explore::{conjecture_scan, diag_sector, plactic_compare, DiagSector};
pub use n2::{n2_suite, verma_vectors};
pub use space::{build_q, describe_entry, QOperator, QSpace, Region, TensorEntry, TensorOp, WordCache};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::FieldCtx;

    fn space(n: u32, h: u32) -> QSpace {
        build_q(FieldCtx::get(n, h), None).unwrap()
    }

    #[test]
    fn n2_suite_passes() {
        let sp = space(2, 4);
        assert_eq!(sp.dim(), 256);
        let rep = n2_suite(&sp).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn n2_operator_identities() {
        let sp = space(2, 4);
        for rep in [check_nilpotency(&sp), check_lemma1(&sp), check_lemma2(&sp).unwrap()] {
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn n2_explorations() {
        let sp = space(2, 4);
        let rep = conjecture_scan(&sp, 4).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        let (sector, rep) = diag_sector(&sp, 4).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(sector.dim(), 4);
        assert_eq!(sector.f_prime.len(), 4);
        assert!(sector.stabilized);
        let rep = plactic_compare(&sp, 4).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn off_diagonal_kills_vacuum() {
        let sp = space(3, 4);
        for i in 1..=3 {
            for j in 1..=3 {
                let v = sp.apply_q(i, j, &sp.vacuum());
                // only a^1 acts nontrivially on the vacuum
                assert_eq!(v.is_zero(), (i, j) != (1, 1), "Q^{i}_{j}");
            }
        }
    }
}
