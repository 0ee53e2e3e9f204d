use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::qfield::{pcoeff_shift_content, CycNum, FieldCtx, PCoeff};
use crate::qtensor::eps_sign;

/// Left sector (`a^i_alpha`, weights `p`) or right sector (`abar^alpha_i`, weights `pbar`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn name(self) -> &'static str {
        match self {
            Chirality::Left => "left",
            Chirality::Right => "right",
        }
    }

    /// Name of the weight symbol in textual output.
    pub fn weight_symbol(self) -> &'static str {
        match self {
            Chirality::Left => "qp",
            Chirality::Right => "qpbar",
        }
    }
}

impl std::str::FromStr for Chirality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Chirality::Left),
            "right" => Ok(Chirality::Right),
            _ => Err(Error::InvalidParams(format!("chirality must be left or right, got `{s}`"))),
        }
    }
}

/// A zero mode. `dyn_idx` is the dynamical index (upper on `a`, lower on
/// `abar`), `qg` the quantum-group index. Field order gives the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub dyn_idx: u8,
    pub qg: u8,
}

impl Gen {
    pub fn new(dyn_idx: usize, qg: usize) -> Self {
        Gen { dyn_idx: dyn_idx as u8, qg: qg as u8 }
    }

    pub fn fmt_in(self, chir: Chirality) -> String {
        match chir {
            Chirality::Left => format!("a[{},{}]", self.dyn_idx, self.qg),
            Chirality::Right => format!("abar[{},{}]", self.qg, self.dyn_idx),
        }
    }
}

pub type Word = Vec<Gen>;

/// Multiplicities of the dynamical indices `1..=n` in a word.
pub fn content(n: usize, w: &[Gen]) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for g in w {
        c[g.dyn_idx as usize - 1] += 1;
    }
    c
}

/// `(dynamical inversions, quantum-group inversions among equal dynamical indices)`.
pub fn termination_measure(w: &[Gen]) -> (usize, usize) {
    let mut up = 0;
    let mut low = 0;
    for k in 0..w.len() {
        for l in k + 1..w.len() {
            if w[k].dyn_idx > w[l].dyn_idx {
                up += 1;
            } else if w[k].dyn_idx == w[l].dyn_idx && w[k].qg > w[l].qg {
                low += 1;
            }
        }
    }
    (up, low)
}

pub fn is_normal(w: &[Gen]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// Which out-of-order adjacent pair is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RewriteOrder {
    #[default]
    Leftmost,
    Rightmost,
}

/// Finite sum of `word * coeff`, the weight coefficient standing to the right of
/// the word (it acts first on states).
#[derive(Clone, Debug)]
pub struct AlgElement {
    ctx: &'static FieldCtx,
    chir: Chirality,
    terms: BTreeMap<Word, PCoeff>,
}

impl AlgElement {
    pub fn zero(ctx: &'static FieldCtx, chir: Chirality) -> Self {
        AlgElement { ctx, chir, terms: BTreeMap::new() }
    }

    pub fn from_coeff(f: PCoeff, chir: Chirality) -> Self {
        let mut e = Self::zero(f.ctx(), chir);
        e.add_term(Vec::new(), f);
        e
    }

    pub fn scalar(ctx: &'static FieldCtx, chir: Chirality, c: CycNum) -> Self {
        Self::from_coeff(PCoeff::constant(c, nvars(ctx)), chir)
    }

    pub fn one(ctx: &'static FieldCtx, chir: Chirality) -> Self {
        Self::scalar(ctx, chir, ctx.one())
    }

    pub fn word(ctx: &'static FieldCtx, chir: Chirality, w: Word) -> Self {
        let mut e = Self::zero(ctx, chir);
        e.add_term(w, PCoeff::one(ctx, nvars(ctx)));
        e
    }

    pub fn gen(ctx: &'static FieldCtx, chir: Chirality, dyn_idx: usize, qg: usize) -> Self {
        Self::word(ctx, chir, vec![Gen::new(dyn_idx, qg)])
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n() as usize
    }

    pub fn chirality(&self) -> Chirality {
        self.chir
    }

    pub fn terms(&self) -> &BTreeMap<Word, PCoeff> {
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

    pub fn add_term(&mut self, w: Word, f: PCoeff) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(g) => {
                let s = g.add(&f);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *g = s;
                }
            }
            None => {
                self.terms.insert(w, f);
            }
        }
    }

    fn same_sector(&self, other: &AlgElement) -> Result<()> {
        if self.chir != other.chir {
            return Err(Error::ChiralityMix);
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same_sector(other)?;
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.add_term(w.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgElement {
        let terms = self.terms.iter().map(|(w, f)| (w.clone(), f.neg())).collect();
        AlgElement { ctx: self.ctx, chir: self.chir, terms }
    }

    pub fn scale(&self, c: &CycNum) -> AlgElement {
        let mut out = Self::zero(self.ctx, self.chir);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.scale(c));
        }
        out
    }

    /// `self * f`.
    pub fn mul_coeff_right(&self, f: &PCoeff) -> AlgElement {
        let mut out = Self::zero(self.ctx, self.chir);
        for (w, g) in &self.terms {
            out.add_term(w.clone(), g.mul(f));
        }
        out
    }

    /// `f * self`: `f` migrates right past each word.
    pub fn mul_coeff_left(&self, f: &PCoeff) -> AlgElement {
        let n = self.n();
        let mut out = Self::zero(self.ctx, self.chir);
        for (w, g) in &self.terms {
            out.add_term(w.clone(), pcoeff_shift_content(f, &content(n, w)).mul(g));
        }
        out
    }

    /// `(w1 f1)(w2 f2) = w1 w2 shift_{w2}(f1) f2`; words are concatenated, not reordered.
    pub fn mul(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same_sector(other)?;
        let n = self.n();
        let mut out = Self::zero(self.ctx, self.chir);
        for (w2, f2) in &other.terms {
            let c2 = content(n, w2);
            for (w1, f1) in &self.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, pcoeff_shift_content(f1, &c2).mul(f2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<AlgElement> {
        let mut acc = Self::one(self.ctx, self.chir);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_normal(w))
    }

    pub fn normal_form(&self) -> AlgElement {
        self.normal_form_with(RewriteOrder::Leftmost)
    }

    pub fn normal_form_with(&self, order: RewriteOrder) -> AlgElement {
        let mut rw = Rewriter::new(self.ctx, order);
        let mut out = Self::zero(self.ctx, self.chir);
        for (w, f) in &self.terms {
            for (w2, g) in rw.word_nf(w).iter() {
                out.add_term(w2.clone(), g.mul(f));
            }
        }
        out.terms = out.terms.into_iter().map(|(w, f)| (w, f.reduced())).collect();
        out
    }

    /// Zero test up to normal ordering.
    pub fn is_zero_nf(&self) -> bool {
        self.normal_form().is_zero()
    }
}

fn nvars(ctx: &FieldCtx) -> usize {
    ctx.n() as usize - 1
}

type Expansion = Vec<(Word, PCoeff)>;

/// Memoized normal ordering of single words.
pub struct Rewriter {
    ctx: &'static FieldCtx,
    order: RewriteOrder,
    cache: HashMap<Word, std::rc::Rc<Expansion>>,
    pub steps: usize,
}

impl Rewriter {
    pub fn new(ctx: &'static FieldCtx, order: RewriteOrder) -> Self {
        Rewriter { ctx, order, cache: HashMap::new(), steps: 0 }
    }

    fn descent(&self, w: &[Gen]) -> Option<usize> {
        let mut it = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]);
        match self.order {
            RewriteOrder::Leftmost => it.next(),
            RewriteOrder::Rightmost => it.next_back(),
        }
    }

    /// One rewrite at position `k`: words with the coefficient that stands
    /// right of the whole word.
    fn rewrite(&self, w: &[Gen], k: usize) -> Expansion {
        let ctx = self.ctx;
        let n = ctx.n() as usize;
        let nv = n - 1;
        let (x, y) = (w[k], w[k + 1]);
        let suffix = content(n, &w[k + 2..]);
        let splice = |a: Gen, b: Gen| {
            let mut v = w.to_vec();
            v[k] = a;
            v[k + 1] = b;
            v
        };
        if x.dyn_idx == y.dyn_idx {
            // a^i_b a^i_a = q a^i_a a^i_b for b > a
            debug_assert!(x.qg > y.qg);
            return vec![(splice(y, x), PCoeff::constant(ctx.q_pow(1), nv))];
        }
        debug_assert!(x.dyn_idx > y.dyn_idx);
        if x.qg == y.qg {
            return vec![(splice(y, x), PCoeff::one(ctx, nv))];
        }
        // a^j_b a^i_a = (a^i_a a^j_b [p_ij] - a^i_b a^j_a q^{eps_ab p_ij}) / [p_ij - 1]
        let (j, beta) = (x.dyn_idx as usize, x.qg);
        let (i, alpha) = (y.dyn_idx as usize, y.qg);
        let den = PCoeff::qnum_pij(ctx, n, i, j, -1);
        let c1 = PCoeff::qnum_pij(ctx, n, i, j, 0).div(&den).unwrap();
        let e = eps_sign(alpha as usize, beta as usize) as i32;
        let c2 = PCoeff::q_pij(ctx, n, i, j, e).div(&den).unwrap().neg();
        vec![
            (splice(Gen { dyn_idx: i as u8, qg: alpha }, Gen { dyn_idx: j as u8, qg: beta }), pcoeff_shift_content(&c1, &suffix)),
            (splice(Gen { dyn_idx: i as u8, qg: beta }, Gen { dyn_idx: j as u8, qg: alpha }), pcoeff_shift_content(&c2, &suffix)),
        ]
    }

    /// Normal form of a bare word.
    pub fn word_nf(&mut self, w: &[Gen]) -> std::rc::Rc<Expansion> {
        if let Some(e) = self.cache.get(w) {
            return e.clone();
        }
        let nv = nvars(self.ctx);
        let out = match self.descent(w) {
            None => vec![(w.to_vec(), PCoeff::one(self.ctx, nv))],
            Some(k) => {
                self.steps += 1;
                let before = termination_measure(w);
                let mut acc: BTreeMap<Word, PCoeff> = BTreeMap::new();
                for (w2, c) in self.rewrite(w, k) {
                    assert!(termination_measure(&w2) < before, "rewrite did not decrease the measure on {w:?}");
                    for (w3, g) in self.word_nf(&w2).iter() {
                        let t = g.mul(&c);
                        match acc.get_mut(w3) {
                            Some(v) => *v = v.add(&t),
                            None => {
                                acc.insert(w3.clone(), t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, f)| !f.is_zero()).collect()
            }
        };
        let rc = std::rc::Rc::new(out);
        self.cache.insert(w.to_vec(), rc.clone());
        rc
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.chir == other.chir && self.sub(other).map(|d| d.is_zero_nf()).unwrap_or(false)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = self.chir.weight_symbol();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut s: Vec<String> = w.iter().map(|g| g.fmt_in(self.chir)).collect();
                if c.as_constant().is_some_and(|v| v.is_one()) && !w.is_empty() {
                    return s.join("*");
                }
                s.push(format!("({})", c.fmt_with(sym)));
                s.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_and_order() {
        let w = vec![Gen::new(2, 1), Gen::new(1, 2), Gen::new(1, 1)];
        assert_eq!(termination_measure(&w), (2, 1));
        assert!(!is_normal(&w));
        assert!(is_normal(&[Gen::new(1, 2), Gen::new(1, 2), Gen::new(2, 1)]));
    }

    #[test]
    fn same_index_pair_picks_up_q() {
        let ctx = FieldCtx::get(2, 4);
        let e = AlgElement::word(ctx, Chirality::Left, vec![Gen::new(1, 2), Gen::new(1, 1)]).normal_form();
        let want = AlgElement::word(ctx, Chirality::Left, vec![Gen::new(1, 1), Gen::new(1, 2)]).scale(&ctx.q_pow(1));
        assert!(e.sub(&want).unwrap().is_zero());
    }
}
