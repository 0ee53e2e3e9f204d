//! Multivariate Laurent polynomials over [`CycNum`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::cyc::{CycNum, FieldCtx};

/// Exponent vector of a Laurent monomial.
pub type Mono = Vec<i32>;

#[derive(Clone, Debug)]
pub struct Laurent {
    ctx: &'static FieldCtx,
    nvars: usize,
    terms: BTreeMap<Mono, CycNum>,
}

impl Laurent {
    pub fn zero(ctx: &'static FieldCtx, nvars: usize) -> Self {
        Laurent { ctx, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycNum, nvars: usize) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: CycNum, mono: Mono) -> Self {
        let ctx = c.ctx();
        let nvars = mono.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Laurent { ctx, nvars, terms }
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<CycNum> {
        match self.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single term `c x^m`, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(&CycNum, &Mono)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, m))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, mono: Mono, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::replace(c, self.ctx.zero());
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.ctx, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.ctx, self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn shift_mono(&self, by: &[i32]) -> Laurent {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Laurent { ctx: self.ctx, nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Laurent {
        let mut acc = Laurent::constant(self.ctx.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies each term `c x^m` by `z^{<m, weights>}`.
    pub fn twist(&self, weights: &[i64]) -> Laurent {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: i64 = m.iter().zip(weights).map(|(&a, &w)| a as i64 * w).sum();
                (m.clone(), c * &self.ctx.z_pow(e))
            })
            .collect();
        Laurent { ctx: self.ctx, nvars: self.nvars, terms }
    }

    /// Value with each variable `x_j` replaced by `z^{k_j}`.
    pub fn eval_z(&self, k: &[i64]) -> CycNum {
        let mut acc = self.ctx.zero();
        for (m, c) in &self.terms {
            let e: i64 = m.iter().zip(k).map(|(&a, &b)| a as i64 * b).sum();
            acc += &(c * &self.ctx.z_pow(e));
        }
        acc
    }

    /// Writes `self = u * x^m * f` with `f` a polynomial free of monomial
    /// factors whose lex-leading coefficient is one. Returns `(u, m, f)`.
    pub fn normalize_unit(&self) -> (CycNum, Mono, Laurent) {
        assert!(!self.is_zero(), "cannot normalize the zero polynomial");
        let mut mins = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (lo, &e) in mins.iter_mut().zip(m) {
                *lo = (*lo).min(e);
            }
        }
        let (_, lead) = self.terms.iter().next_back().unwrap();
        let inv = lead.inv().unwrap();
        let neg: Vec<i32> = mins.iter().map(|&v| -v).collect();
        let f = self.shift_mono(&neg).scale(&inv);
        (lead.clone(), mins, f)
    }

    /// Exact quotient `self / f` for a normalized divisor `f`, if it exists.
    pub fn exact_div(&self, f: &Laurent) -> Option<Laurent> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lead_mono, lead_c) = f.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quo = Laurent::zero(self.ctx, self.nvars);
        // Laurent ring: any monomial quotient is allowed, but the divisor has no
        // monomial factor so lex division by the leading term stays exact.
        let gmin = self.min_mono();
        let mut guard = 0usize;
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let dm: Mono = m.iter().zip(lead_mono).map(|(a, b)| a - b).collect();
            // quotient and dividend share their minimal exponents
            if dm.iter().zip(&gmin).any(|(a, b)| a < b) {
                return None;
            }
            let coef = c.div(lead_c).unwrap();
            let t = f.shift_mono(&dm).scale(&coef);
            rem = rem.sub(&t);
            quo.add_term(dm, &coef);
            guard += 1;
            if guard > 4096 * (self.terms.len() + 4) {
                return None;
            }
        }
        Some(quo)
    }

    fn min_mono(&self) -> Mono {
        let mut mins = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (lo, &e) in mins.iter_mut().zip(m) {
                *lo = (*lo).min(e);
            }
        }
        mins
    }
}

impl PartialEq for Laurent {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Laurent {}

impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Laurent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_roundtrip() {
        let ctx = FieldCtx::get(3, 4);
        let x = Laurent::monomial(ctx.one(), vec![1, 0]);
        let y = Laurent::monomial(ctx.one(), vec![0, 1]);
        let one = Laurent::constant(ctx.one(), 2);
        let f = x.add(&y.scale(&ctx.q_pow(1))).add(&one);
        let g = x.mul(&x).sub(&y.shift_mono(&[0, -3]));
        let (_, _, fnorm) = f.normalize_unit();
        let prod = g.mul(&fnorm);
        assert_eq!(prod.exact_div(&fnorm).unwrap(), g);
        assert!(g.exact_div(&fnorm).is_none());
    }
}
