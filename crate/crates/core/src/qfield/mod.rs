//! Cyclotomic field arithmetic at `q = exp(-i pi / h)`, q-combinatorics and the
//! weight-dependent coefficient field.

mod cyc;
mod laurent;
mod pcoeff;
mod qcomb;

pub use cyc::{cyclotomic_poly, CycNum, FieldCtx, RootSign};
pub use laurent::{Laurent, Mono};
pub use pcoeff::{qp_mono, PCoeff};
pub use qcomb::{qfact, qint, qplus, qplus_binom, qplus_fact, qplus_pascal};

use crate::report::{Outcome, Report};

/// `z`-exponents of `x_1, ..., x_{n-1}` on a weight vector.
///
/// `pw` holds integers `P_1..P_n` with `p_ij = P_i - P_j`; the actual `p_j`
/// are `P_j - mean(P)`, so `x_j = q^{p_j} = z^{(q/n)(n P_j - sum P)}`.
pub fn weight_exponents(ctx: &'static FieldCtx, pw: &[i64]) -> Vec<i64> {
    let n = pw.len() as i64;
    let tot: i64 = pw.iter().sum();
    let b = ctx.qn_exp();
    pw[..pw.len().saturating_sub(1)].iter().map(|&p| b * (n * p - tot)).collect()
}

/// Evaluates a weight coefficient on a state of weight `pw`.
pub fn eval_at_weight(f: &PCoeff, pw: &[i64]) -> Option<CycNum> {
    f.eval_z(&weight_exponents(f.ctx(), pw))
}

/// Twist weights for moving a coefficient rightward past letters whose upper
/// indices have multiplicities `content`.
pub fn shift_weights(ctx: &'static FieldCtx, content: &[i64]) -> Vec<i64> {
    let tot: i64 = content.iter().sum();
    let b = ctx.q_exp();
    let bn = ctx.qn_exp();
    content[..content.len().saturating_sub(1)].iter().map(|&c| b * c - bn * tot).collect()
}

/// `f(x) a^i = a^i shift(f)`: substitutes `x_j -> q^{delta_ij - 1/n} x_j`.
pub fn pcoeff_shift(f: &PCoeff, n: usize, i: usize) -> PCoeff {
    let mut content = vec![0i64; n];
    content[i - 1] = 1;
    pcoeff_shift_content(f, &content)
}

pub fn pcoeff_shift_content(f: &PCoeff, content: &[i64]) -> PCoeff {
    if content.iter().all(|&c| c == 0) || f.nvars() == 0 {
        return f.clone();
    }
    f.twist(&shift_weights(f.ctx(), content))
}

/// Two independent symbols `X = q^p`, `Y = q^{pbar}` for the q-number identities.
struct TwoSym {
    ctx: &'static FieldCtx,
}

impl TwoSym {
    fn mono(&self, a: i32, b: i32) -> PCoeff {
        PCoeff::from_laurent(Laurent::monomial(self.ctx.one(), vec![a, b]))
    }

    fn inv_qq(&self) -> CycNum {
        (self.ctx.q_pow(1) - self.ctx.q_pow(-1)).inv().unwrap()
    }

    /// `(q^s X^a Y^b - q^{-s} X^{-a} Y^{-b}) / (q - q^{-1})`, i.e. `[a p + b pbar + s]`.
    fn bracket(&self, a: i32, b: i32, s: i64) -> PCoeff {
        let up = self.mono(a, b).scale(&self.ctx.q_pow(s));
        let down = self.mono(-a, -b).scale(&self.ctx.q_pow(-s));
        up.sub(&down).scale(&self.inv_qq())
    }

    fn qpow(&self, a: i32, b: i32, s: i64) -> PCoeff {
        self.mono(a, b).scale(&self.ctx.q_pow(s))
    }
}

fn zero_or_witness(diff: &PCoeff) -> Outcome {
    if diff.is_zero() {
        Outcome::pass()
    } else {
        Outcome::fail(format!("nonzero difference {diff}"))
    }
}

/// Symbolic checks of the q-number identities used by the exchange algebra.
pub fn verify_q_identities(ctx: &'static FieldCtx) -> Report {
    let mut rep = Report::new("identities").param("n", ctx.n()).param("h", ctx.h());
    let t = TwoSym { ctx };
    for (sgn, tag) in [(1i64, "+"), (-1, "-")] {
        rep.run(format!("ids.p{tag}1_pbar_minus"), || {
            // [p +- 1][pbar] - [p][pbar +- 1] = -+ [p - pbar]
            let lhs = t.bracket(1, 0, sgn).mul(&t.bracket(0, 1, 0)).sub(&t.bracket(1, 0, 0).mul(&t.bracket(0, 1, sgn)));
            let rhs = t.bracket(1, -1, 0).scale(&ctx.int(-sgn));
            zero_or_witness(&lhs.sub(&rhs))
        });
        rep.run(format!("ids.p{tag}1_pbar_plus"), || {
            // [p +- 1][pbar] - [p][pbar -+ 1] = +- [p + pbar]
            let lhs = t.bracket(1, 0, sgn).mul(&t.bracket(0, 1, 0)).sub(&t.bracket(1, 0, 0).mul(&t.bracket(0, 1, -sgn)));
            let rhs = t.bracket(1, 1, 0).scale(&ctx.int(sgn));
            zero_or_witness(&lhs.sub(&rhs))
        });
        rep.run(format!("ids.mixed_eps{tag}1"), || {
            // [p] q^{eps pbar} - q^{eps p} [pbar] = [p - pbar]
            let e = sgn as i32;
            let lhs = t.bracket(1, 0, 0).mul(&t.qpow(0, e, 0)).sub(&t.qpow(e, 0, 0).mul(&t.bracket(0, 1, 0)));
            zero_or_witness(&lhs.sub(&t.bracket(1, -1, 0)))
        });
        rep.run(format!("lemma1_identity.eps{tag}1"), || {
            // q^eps [p] - q^{eps p} = [p - 1]
            let lhs = t.bracket(1, 0, 0).scale(&ctx.q_pow(sgn)).sub(&t.qpow(sgn as i32, 0, 0));
            zero_or_witness(&lhs.sub(&t.bracket(1, 0, -1)))
        });
        rep.run(format!("aa2_from_r.eps{tag}1"), || {
            // [p - 1] - q^{+-1} [p] = -q^{+-p}
            let lhs = t.bracket(1, 0, -1).sub(&t.bracket(1, 0, 0).scale(&ctx.q_pow(sgn)));
            zero_or_witness(&lhs.add(&t.qpow(sgn as i32, 0, 0)))
        });
    }
    for m in 0..=6i64 {
        rep.run(format!("qnumber_relation.m={m}"), || {
            // [p + m] = [p][m + 1] - [p - 1][m]
            let rhs = t
                .bracket(1, 0, 0)
                .scale(&qint(ctx, m + 1))
                .sub(&t.bracket(1, 0, -1).scale(&qint(ctx, m)));
            zero_or_witness(&t.bracket(1, 0, m).sub(&rhs))
        });
    }
    rep.run("ids.specialization_p2_pbar1", || {
        // X = q^2, Y = q: [p - pbar] = [1] = 1
        let k = [2 * ctx.q_exp(), ctx.q_exp()];
        let lhs = t.bracket(1, 0, 1).mul(&t.bracket(0, 1, 0)).sub(&t.bracket(1, 0, 0).mul(&t.bracket(0, 1, 1)));
        let l = lhs.eval_z(&k).unwrap();
        let r = t.bracket(1, -1, 0).scale(&ctx.int(-1)).eval_z(&k).unwrap();
        if l == r && r == -qint(ctx, 1) {
            Outcome::pass()
        } else {
            Outcome::fail(format!("lhs {l}, rhs {r}"))
        }
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        let ctx = FieldCtx::get(2, 4);
        // q^{p_12}, shifted by a^1, picks up q^1
        let f = PCoeff::q_pij(ctx, 2, 1, 2, 1);
        assert_eq!(pcoeff_shift(&f, 2, 1), f.scale(&ctx.q_pow(1)));
        let c = PCoeff::constant(ctx.int(7), 1);
        assert_eq!(pcoeff_shift(&c, 2, 2), c);
        let c3 = FieldCtx::get(3, 5);
        let g = PCoeff::qnum_pij(c3, 3, 1, 2, 0);
        assert_eq!(pcoeff_shift(&g, 3, 3), g);
    }

    #[test]
    fn identities_hold() {
        for (n, h) in [(2, 4), (2, 5), (3, 4)] {
            let rep = verify_q_identities(FieldCtx::get(n, h));
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }
}
