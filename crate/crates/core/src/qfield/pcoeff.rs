//! Rational functions in the weight symbols `x_j = q^{p_j}`.
//!
//! The constraint `x_1 ... x_n = 1` is imposed by eliminating `x_n`, so an
//! `n`-symbol coefficient carries `n - 1` Laurent variables. Denominators are
//! kept as a multiset of normalized factors; numerators absorb every unit.

use std::collections::BTreeMap;
use std::fmt;

use super::cyc::{CycNum, FieldCtx};
use super::laurent::{Laurent, Mono};

#[derive(Clone, Debug)]
pub struct PCoeff {
    num: Laurent,
    den: BTreeMap<Laurent, u32>,
}

impl PCoeff {
    pub fn zero(ctx: &'static FieldCtx, nvars: usize) -> Self {
        PCoeff { num: Laurent::zero(ctx, nvars), den: BTreeMap::new() }
    }

    pub fn constant(c: CycNum, nvars: usize) -> Self {
        PCoeff { num: Laurent::constant(c, nvars), den: BTreeMap::new() }
    }

    pub fn one(ctx: &'static FieldCtx, nvars: usize) -> Self {
        Self::constant(ctx.one(), nvars)
    }

    pub fn from_laurent(num: Laurent) -> Self {
        PCoeff { num, den: BTreeMap::new() }
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.num.ctx()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<Laurent, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<CycNum> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else if self.num.is_zero() {
            Some(self.ctx().zero())
        } else {
            None
        }
    }

    // ---- symbols of the n-structure ----

    /// `x_j = q^{p_j}` for `j` in `1..=n`, with `x_n = (x_1 ... x_{n-1})^{-1}`.
    pub fn qp(ctx: &'static FieldCtx, n: usize, j: usize) -> Self {
        Self::from_laurent(Laurent::monomial(ctx.one(), qp_mono(n, j, 1)))
    }

    /// `q^{k p_ij}`.
    pub fn q_pij(ctx: &'static FieldCtx, n: usize, i: usize, j: usize, k: i32) -> Self {
        let m: Mono = qp_mono(n, i, k).iter().zip(qp_mono(n, j, -k)).map(|(a, b)| a + b).collect();
        Self::from_laurent(Laurent::monomial(ctx.one(), m))
    }

    /// `[p_ij + s] = (q^{s} q^{p_ij} - q^{-s} q^{-p_ij}) / (q - q^{-1})`.
    pub fn qnum_pij(ctx: &'static FieldCtx, n: usize, i: usize, j: usize, s: i64) -> Self {
        let inv = (ctx.q_pow(1) - ctx.q_pow(-1)).inv().expect("q is not +-1");
        let up = Self::q_pij(ctx, n, i, j, 1).num.scale(&(&ctx.q_pow(s) * &inv));
        let down = Self::q_pij(ctx, n, i, j, -1).num.scale(&(&ctx.q_pow(-s) * &inv));
        Self::from_laurent(up.sub(&down))
    }

    /// `D_q(p) = prod_{i<j} [p_ij]`.
    pub fn dq(ctx: &'static FieldCtx, n: usize) -> Self {
        let mut acc = Self::one(ctx, n.saturating_sub(1));
        for i in 1..=n {
            for j in i + 1..=n {
                acc = acc.mul(&Self::qnum_pij(ctx, n, i, j, 0));
            }
        }
        acc
    }

    // ---- arithmetic ----

    pub fn neg(&self) -> Self {
        PCoeff { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx(), self.nvars());
        }
        PCoeff { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, other: &PCoeff) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx(), self.nvars());
        }
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        PCoeff { num: self.num.mul(&other.num), den }
    }

    fn combine(&self, other: &PCoeff, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let mut lcm = self.den.clone();
        for (f, &k) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |p: &PCoeff| -> Laurent {
            let mut acc = p.num.clone();
            for (f, &k) in &lcm {
                let have = p.den.get(f).copied().unwrap_or(0);
                if k > have {
                    acc = acc.mul(&f.pow(k - have));
                }
            }
            acc
        };
        let a = lift(self);
        let b = lift(other);
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        if num.is_zero() {
            return Self::zero(self.ctx(), self.nvars());
        }
        PCoeff { num, den: lcm }
    }

    pub fn add(&self, other: &PCoeff) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &PCoeff) -> Self {
        self.combine(other, true)
    }

    /// `self / other`; `None` if `other` is zero.
    pub fn div(&self, other: &PCoeff) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (u, m, f) = other.num.normalize_unit();
        let neg_m: Vec<i32> = m.iter().map(|v| -v).collect();
        let mut num = self.num.shift_mono(&neg_m).scale(&u.inv().unwrap());
        for (g, &k) in &other.den {
            num = num.mul(&g.pow(k));
        }
        let mut den = self.den.clone();
        if f.as_constant().is_none() {
            *den.entry(f).or_insert(0) += 1;
        }
        Some(PCoeff { num, den })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx(), self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        let factors: Vec<Laurent> = out.den.keys().cloned().collect();
        for f in factors {
            while out.den.get(&f).copied().unwrap_or(0) > 0 {
                match out.num.exact_div(&f) {
                    Some(q) => {
                        out.num = q;
                        let k = out.den.get_mut(&f).unwrap();
                        *k -= 1;
                        if *k == 0 {
                            out.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        out
    }

    /// Applies `x_j -> z^{w_j} x_j`.
    pub fn twist(&self, w: &[i64]) -> Self {
        let mut num = self.num.twist(w);
        let mut den = BTreeMap::new();
        for (f, &k) in &self.den {
            let (u, m, g) = f.twist(w).normalize_unit();
            debug_assert!(m.iter().all(|&e| e == 0));
            num = num.scale(&u.inv().unwrap().pow(k));
            *den.entry(g).or_insert(0) += k;
        }
        PCoeff { num, den }
    }

    /// Evaluates at `x_j = z^{k_j}`; `None` if a denominator vanishes.
    pub fn eval_z(&self, k: &[i64]) -> Option<CycNum> {
        let mut d = self.ctx().one();
        for (f, &e) in &self.den {
            let v = f.eval_z(k);
            if v.is_zero() {
                return None;
            }
            d = &d * &v.pow(e);
        }
        let n = self.num.eval_z(k);
        if d.is_one() {
            Some(n)
        } else {
            n.div(&d)
        }
    }

    /// Like [`eval_z`](Self::eval_z) but cancels common factors before
    /// declaring a pole.
    pub fn eval_z_resolving(&self, k: &[i64]) -> Option<CycNum> {
        self.eval_z(k).or_else(|| self.reduced().eval_z(k))
    }

    /// Textual form using `sym[j]` for the variables.
    pub fn fmt_with(&self, sym: &str) -> String {
        let mut s = fmt_laurent(&self.num, sym);
        if !self.den.is_empty() && self.num.terms().len() > 1 {
            s = format!("({s})");
        }
        for (f, &k) in &self.den {
            s.push_str(" / (");
            s.push_str(&fmt_laurent(f, sym));
            s.push(')');
            if k > 1 {
                s.push_str(&format!("^{k}"));
            }
        }
        if !self.den.is_empty() {
            s = format!("({s})");
        }
        s
    }
}

/// Exponent vector of `x_j^k` after eliminating `x_n`.
pub fn qp_mono(n: usize, j: usize, k: i32) -> Mono {
    assert!((1..=n).contains(&j), "weight index {j} out of range 1..={n}");
    let mut m = vec![0; n - 1];
    if j < n {
        m[j - 1] = k;
    } else {
        for e in &mut m {
            *e = -k;
        }
    }
    m
}

fn fmt_laurent(p: &Laurent, sym: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .iter()
        .rev()
        .map(|(m, c)| {
            let mut t = format!("({c})");
            for (j, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => t.push_str(&format!("*{sym}[{}]", j + 1)),
                    _ => t.push_str(&format!("*{sym}[{}]^{e}", j + 1)),
                }
            }
            t
        })
        .collect();
    parts.join(" + ")
}

impl PartialEq for PCoeff {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for PCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("qp"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::qint;

    #[test]
    fn qnum_specializes_to_qint() {
        let ctx = FieldCtx::get(3, 5);
        let f = PCoeff::qnum_pij(ctx, 3, 1, 3, -1);
        // p = (p_1, p_2, p_3) with p_13 = 4
        let b = ctx.qn_exp();
        let pw = [4i64, 1, 0];
        let tot: i64 = pw.iter().sum();
        let k: Vec<i64> = pw[..2].iter().map(|&p| b * (3 * p - tot)).collect();
        assert_eq!(f.eval_z(&k).unwrap(), qint(ctx, 3));
    }

    #[test]
    fn division_and_reduction() {
        let ctx = FieldCtx::get(2, 4);
        let p = PCoeff::qnum_pij(ctx, 2, 1, 2, 0);
        let pm = PCoeff::qnum_pij(ctx, 2, 1, 2, -1);
        let r = pm.div(&p).unwrap();
        let back = r.mul(&p).reduced();
        assert!(back.is_polynomial());
        assert_eq!(back, pm);
    }
}
