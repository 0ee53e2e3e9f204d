//! q-integers, q-factorials and the `(m r)_+` binomials.

use super::cyc::{CycNum, FieldCtx};
use crate::error::{Error, Result};

/// `[m] = (q^m - q^{-m}) / (q - q^{-1})`, summed as `q^{m-1} + q^{m-3} + ... + q^{1-m}`.
pub fn qint(ctx: &'static FieldCtx, m: i64) -> CycNum {
    if m < 0 {
        return -qint(ctx, -m);
    }
    let mut acc = ctx.zero();
    for k in 0..m {
        acc += &ctx.q_pow(m - 1 - 2 * k);
    }
    acc
}

/// `[m]! = [m][m-1]...[1]`.
pub fn qfact(ctx: &'static FieldCtx, m: u32) -> CycNum {
    (1..=m as i64).fold(ctx.one(), |acc, s| &acc * &qint(ctx, s))
}

/// `(r)_+ = (q^{2r} - 1) / (q^2 - 1) = 1 + q^2 + ... + q^{2(r-1)}`.
pub fn qplus(ctx: &'static FieldCtx, r: u32) -> CycNum {
    let mut acc = ctx.zero();
    for k in 0..r as i64 {
        acc += &ctx.q_pow(2 * k);
    }
    acc
}

/// `(m)_+!`.
pub fn qplus_fact(ctx: &'static FieldCtx, m: u32) -> CycNum {
    (1..=m).fold(ctx.one(), |acc, s| &acc * &qplus(ctx, s))
}

/// Rows `0..=m` of the Pascal triangle for `(m r)_+`.
///
/// `(m r)_+ = (m-1 r-1)_+ + q^{2r} (m-1 r)_+`; no division, so the entries are
/// well defined even where `(m)_+!` vanishes.
pub fn qplus_pascal(ctx: &'static FieldCtx, m: u32) -> Vec<Vec<CycNum>> {
    let mut rows: Vec<Vec<CycNum>> = vec![vec![ctx.one()]];
    for mm in 1..=m as usize {
        let prev = &rows[mm - 1];
        let mut row = Vec::with_capacity(mm + 1);
        for r in 0..=mm {
            let left = if r >= 1 { prev[r - 1].clone() } else { ctx.zero() };
            let right = if r < mm { &ctx.q_pow(2 * r as i64) * &prev[r] } else { ctx.zero() };
            row.push(left + right);
        }
        rows.push(row);
    }
    rows
}

/// `(m r)_+`.
pub fn qplus_binom(ctx: &'static FieldCtx, m: i64, r: i64) -> Result<CycNum> {
    if m < 0 || r < 0 || r > m {
        return Err(Error::Domain(format!("q-binomial ({m} {r})_+ needs 0 <= r <= m")));
    }
    Ok(qplus_pascal(ctx, m as u32)[m as usize][r as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_basics() {
        let ctx = FieldCtx::get(2, 4);
        assert!(qint(ctx, 0).is_zero());
        assert!(qint(ctx, 1).is_one());
        assert!(qint(ctx, 4).is_zero());
        assert_eq!(qint(ctx, -3), -qint(ctx, 3));
        let two = qint(ctx, 2).to_complex();
        assert!((two.re - 2f64.sqrt()).abs() < 1e-12 && two.im.abs() < 1e-12);
    }

    #[test]
    fn binomial_edges() {
        let ctx = FieldCtx::get(2, 5);
        for m in 0..7 {
            assert!(qplus_binom(ctx, m, 0).unwrap().is_one());
            assert!(qplus_binom(ctx, m, m).unwrap().is_one());
        }
        assert!(qplus_binom(ctx, 3, 4).is_err());
        assert!(qplus_binom(ctx, 3, -1).is_err());
    }

    #[test]
    fn binomial_matches_factorial_ratio_below_h() {
        let ctx = FieldCtx::get(2, 6);
        for m in 0..6u32 {
            for r in 0..=m {
                let lhs = qplus_binom(ctx, m as i64, r as i64).unwrap();
                let rhs = qplus_fact(ctx, m)
                    .div(&(&qplus_fact(ctx, r) * &qplus_fact(ctx, m - r)))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
