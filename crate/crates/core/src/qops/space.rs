//! The tensor product of the two vacuum modules and operators on it kept as
//! sums of elementary tensors `sum_k X_k (x) Y_k`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fock::{build_module, FockModule};
use crate::linalg::{Echelon, Insert, OpMatrix, SVec};
use crate::qfield::{CycNum, FieldCtx};
use crate::zmodes::{require_height, Chirality, Gen};

/// `F (x) Fbar` with both factors built to the same depth.
#[derive(Clone, Debug)]
pub struct QSpace {
    ctx: &'static FieldCtx,
    left: FockModule,
    right: FockModule,
}

/// Builds both modules; `max_depth` defaults to [`crate::fock::default_depth`].
pub fn build_q(ctx: &'static FieldCtx, max_depth: Option<usize>) -> Result<QSpace> {
    require_height(ctx)?;
    if ctx.n() < 2 {
        return Err(Error::InvalidParams(format!("n must be at least 2 (got {})", ctx.n())));
    }
    let (left, right) = rayon::join(
        || build_module(ctx, Chirality::Left, max_depth),
        || build_module(ctx, Chirality::Right, max_depth),
    );
    Ok(QSpace { ctx, left: left?, right: right? })
}

impl QSpace {
    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn h(&self) -> usize {
        self.ctx.h() as usize
    }

    pub fn left(&self) -> &FockModule {
        &self.left
    }

    pub fn right(&self) -> &FockModule {
        &self.right
    }

    /// `dim F * dim Fbar`.
    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn complete(&self) -> bool {
        self.left.basis().complete && self.right.basis().complete
    }

    /// Depth up to which both factors are enumerated.
    pub fn depth_reached(&self) -> usize {
        self.left.basis().depth_reached.min(self.right.basis().depth_reached)
    }

    /// Index of `e_s (x) e_t` in a flattened tensor vector.
    pub fn key(&self, s: usize, t: usize) -> usize {
        s * self.right.dim() + t
    }

    pub fn unkey(&self, k: usize) -> (usize, usize) {
        (k / self.right.dim(), k % self.right.dim())
    }

    /// `|0> (x) |0>`.
    pub fn vacuum(&self) -> SVec {
        SVec::unit(0, self.ctx)
    }

    pub fn label(&self, k: usize) -> String {
        let (s, t) = self.unkey(k);
        format!("{} (x) {}", self.left.basis().label(s), self.right.basis().label(t))
    }

    /// Product states on which every operator of `len` letters stays inside
    /// the enumerated part of both factors.
    pub fn region(&self, len: usize) -> Region {
        Region { left: self.left.basis().determined(len), right: self.right.basis().determined(len) }
    }

    /// `Q^i_j v = sum_alpha (a^i_alpha (x) abar^alpha_j) v`.
    pub fn apply_q(&self, i: usize, j: usize, v: &SVec) -> SVec {
        let n = self.n();
        let mut out = SVec::new();
        for (&k, c) in v.iter() {
            let (s, t) = self.unkey(k);
            for a in 1..=n {
                let x = self.left.gen(i, a).col(s);
                if x.is_zero() {
                    continue;
                }
                let y = self.right.gen(j, a).col(t);
                for (&r, xv) in x.iter() {
                    let cx = c * xv;
                    for (&u, yv) in y.iter() {
                        out.add_entry(self.key(r, u), &(&cx * yv));
                    }
                }
            }
        }
        out
    }

    /// Applies a monomial; the rightmost letter acts first.
    pub fn apply_monomial(&self, letters: &[(usize, usize)], v: &SVec) -> SVec {
        letters.iter().rev().fold(v.clone(), |acc, &(i, j)| self.apply_q(i, j, &acc))
    }

    /// Largest depth (left, right) of a state in the support of `v`.
    pub fn depth_of(&self, v: &SVec) -> usize {
        v.iter()
            .map(|(&k, _)| {
                let (s, t) = self.unkey(k);
                self.left.basis().states[s].depth.max(self.right.basis().states[t].depth)
            })
            .max()
            .unwrap_or(0)
    }

    /// Applies `X (x) Y` given as per-factor diagonals.
    pub fn apply_diag(&self, dl: &[CycNum], dr: &[CycNum], v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&k, c) in v.iter() {
            let (s, t) = self.unkey(k);
            out.add_entry(k, &(&(c * &dl[s]) * &dr[t]));
        }
        out
    }

    pub fn identity_left(&self) -> OpMatrix {
        OpMatrix::identity(self.ctx, self.left.dim())
    }

    pub fn identity_right(&self) -> OpMatrix {
        OpMatrix::identity(self.ctx, self.right.dim())
    }

    /// `q^{k p_ij} (x) 1`.
    pub fn qp(&self, i: usize, j: usize, k: i64) -> TensorOp {
        TensorOp::single(self.left.q_pij(i, j, k), self.identity_right())
    }

    /// `1 (x) q^{k pbar_ij}`.
    pub fn qpbar(&self, i: usize, j: usize, k: i64) -> TensorOp {
        TensorOp::single(self.identity_left(), self.right.q_pij(i, j, k))
    }

    /// `[p_ij + s] (x) [pbar_lm + t]`; a `None` side is the identity.
    pub fn brackets(&self, left: Option<(usize, usize, i64)>, right: Option<(usize, usize, i64)>) -> TensorOp {
        let x = left.map_or_else(|| self.identity_left(), |(i, j, s)| self.left.qnum_pij(i, j, s));
        let y = right.map_or_else(|| self.identity_right(), |(l, m, t)| self.right.qnum_pij(l, m, t));
        TensorOp::single(x, y)
    }

    /// `[p_ij + e pbar_lm] = (q^{p_ij} (x) q^{e pbar_lm} - q^{-p_ij} (x) q^{-e pbar_lm}) / (q - q^{-1})`
    /// for `e = +-1`.
    pub fn bracket_mixed(&self, (i, j): (usize, usize), e: i64, (l, m): (usize, usize)) -> TensorOp {
        let inv = (self.ctx.q_pow(1) - self.ctx.q_pow(-1)).inv().expect("q is not +-1");
        let up = TensorOp::single(self.left.q_pij(i, j, 1), self.right.q_pij(l, m, e));
        let down = TensorOp::single(self.left.q_pij(i, j, -1), self.right.q_pij(l, m, -e));
        up.sub(&down).scale(&inv)
    }

    /// `L^{s} = -q^{s p} (x) q^{s pbar}` (n = 2, `p = p_12`).
    pub fn l_op(&self, s: i64) -> TensorOp {
        TensorOp::single(self.left.q_pij(1, 2, s), self.right.q_pij(1, 2, s)).scale(&self.ctx.int(-1))
    }

    /// `N^{s} = -q^{s p} (x) q^{-s pbar}` (n = 2).
    pub fn n_op(&self, s: i64) -> TensorOp {
        TensorOp::single(self.left.q_pij(1, 2, s), self.right.q_pij(1, 2, -s)).scale(&self.ctx.int(-1))
    }

    /// `[X] = (X - X^{-1}) / (q - q^{-1})`.
    pub fn qnum_of(&self, x: &TensorOp, x_inv: &TensorOp) -> TensorOp {
        let inv = (self.ctx.q_pow(1) - self.ctx.q_pow(-1)).inv().expect("q is not +-1");
        x.sub(x_inv).scale(&inv)
    }

    pub fn identity(&self) -> TensorOp {
        TensorOp::single(self.identity_left(), self.identity_right())
    }

    /// Word products restricted to `region`, memoized by suffix.
    pub fn words<'a>(&'a self, region: &Region) -> WordCache<'a> {
        WordCache {
            space: self,
            left: HashMap::new(),
            right: HashMap::new(),
            left_base: restricted_identity(self.ctx, self.left.dim(), &region.left),
            right_base: restricted_identity(self.ctx, self.right.dim(), &region.right),
        }
    }
}

/// Columns (product states) on which a check is made.
#[derive(Clone, Debug)]
pub struct Region {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Region {
    pub fn size(&self) -> usize {
        self.left.len() * self.right.len()
    }
}

fn restricted_identity(ctx: &'static FieldCtx, dim: usize, keep: &[usize]) -> OpMatrix {
    let mut cols = vec![SVec::new(); dim];
    for &s in keep {
        cols[s] = SVec::unit(s, ctx);
    }
    OpMatrix::from_columns(ctx, dim, cols)
}

/// Memoized products of zero-mode matrices on a column region.
pub struct WordCache<'a> {
    space: &'a QSpace,
    left: HashMap<Vec<Gen>, OpMatrix>,
    right: HashMap<Vec<Gen>, OpMatrix>,
    left_base: OpMatrix,
    right_base: OpMatrix,
}

impl WordCache<'_> {
    pub fn space(&self) -> &QSpace {
        self.space
    }

    fn word(&mut self, w: &[Gen], left: bool) -> OpMatrix {
        let cache = if left { &self.left } else { &self.right };
        if let Some(m) = cache.get(w) {
            return m.clone();
        }
        let m = if w.is_empty() {
            if left { self.left_base.clone() } else { self.right_base.clone() }
        } else {
            let rest = self.word(&w[1..], left);
            let module = if left { self.space.left() } else { self.space.right() };
            module.gen(w[0].dyn_idx as usize, w[0].qg as usize).mul(&rest)
        };
        let cache = if left { &mut self.left } else { &mut self.right };
        cache.insert(w.to_vec(), m.clone());
        m
    }

    /// `sum_{alpha...} a^{i1}_{alpha1}... (x) abar^{alpha1}_{j1}...` on the region.
    pub fn monomial(&mut self, letters: &[(usize, usize)]) -> TensorOp {
        let n = self.space.n();
        let mut out = TensorOp::default();
        let k = letters.len();
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut alphas = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                alphas.push(c % n + 1);
                c /= n;
            }
            let comps: Vec<(usize, usize, usize)> =
                letters.iter().zip(&alphas).map(|(&(i, j), &a)| (i, j, a)).collect();
            out.terms.extend(self.component(&comps).terms);
        }
        out
    }

    /// `a^{i1}_{a1} a^{i2}_{a2}... (x) abar^{a1}_{j1} abar^{a2}_{j2}...` on the region.
    pub fn component(&mut self, comps: &[(usize, usize, usize)]) -> TensorOp {
        let lw: Vec<Gen> = comps.iter().map(|&(i, _, a)| Gen::new(i, a)).collect();
        let rw: Vec<Gen> = comps.iter().map(|&(_, j, a)| Gen::new(j, a)).collect();
        let x = self.word(&lw, true);
        if x.is_zero() {
            return TensorOp::default();
        }
        let y = self.word(&rw, false);
        if y.is_zero() {
            return TensorOp::default();
        }
        TensorOp::single(x, y)
    }
}

/// `sum_k X_k (x) Y_k`.
#[derive(Clone, Debug, Default)]
pub struct TensorOp {
    terms: Vec<(OpMatrix, OpMatrix)>,
}

/// A nonzero entry of a tensor operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEntry {
    pub row: (usize, usize),
    pub col: (usize, usize),
    pub value: CycNum,
}

impl TensorOp {
    pub fn single(x: OpMatrix, y: OpMatrix) -> Self {
        TensorOp { terms: vec![(x, y)] }
    }

    pub fn terms(&self) -> &[(OpMatrix, OpMatrix)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorOp) -> TensorOp {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TensorOp { terms }
    }

    pub fn sub(&self, other: &TensorOp) -> TensorOp {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(x, y)| (x.scale(&-x.ctx().one()), y.clone())));
        TensorOp { terms }
    }

    pub fn scale(&self, c: &CycNum) -> TensorOp {
        TensorOp { terms: self.terms.iter().map(|(x, y)| (x.scale(c), y.clone())).collect() }
    }

    /// `self * other`.
    pub fn mul(&self, other: &TensorOp) -> TensorOp {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, b) in &self.terms {
            for (x, y) in &other.terms {
                let ax = a.mul(x);
                if ax.is_zero() {
                    continue;
                }
                let by = b.mul(y);
                if !by.is_zero() {
                    terms.push((ax, by));
                }
            }
        }
        TensorOp { terms }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &TensorOp) -> TensorOp {
        self.mul(other).sub(&other.mul(self))
    }

    /// Applies the operator to a flattened tensor vector of `space`.
    pub fn apply(&self, space: &QSpace, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&k, c) in v.iter() {
            let (s, t) = space.unkey(k);
            for (x, y) in &self.terms {
                for (&r, xv) in x.col(s).iter() {
                    let cx = c * xv;
                    for (&u, yv) in y.col(t).iter() {
                        out.add_entry(space.key(r, u), &(&cx * yv));
                    }
                }
            }
        }
        out
    }

    /// Dense Kronecker sum; only sensible for small factors.
    pub fn to_matrix(&self, ctx: &'static FieldCtx, rows: usize, cols: usize) -> OpMatrix {
        self.terms.iter().fold(OpMatrix::zero(ctx, rows, cols), |acc, (x, y)| acc.add(&x.kron(y)))
    }

    /// A nonzero entry, or `None` when the operator vanishes.
    ///
    /// The right factors are reduced to an independent family `Y_b`; the
    /// operator is zero iff every combined left factor `sum_k M_kb X_k` is.
    pub fn nonzero_entry(&self) -> Option<TensorEntry> {
        let Some((x0, y0)) = self.terms.first() else {
            return None;
        };
        let ctx = x0.ctx();
        let rows_y = y0.nrows();
        let flat = |y: &OpMatrix| -> SVec {
            let mut v = SVec::new();
            for (c, col) in y.columns().iter().enumerate() {
                for (&r, val) in col.iter() {
                    v.0.insert(c * rows_y + r, val.clone());
                }
            }
            v
        };
        let mut ech = Echelon::new(ctx);
        let mut basis_of: HashMap<usize, usize> = HashMap::new();
        let mut combined: Vec<OpMatrix> = Vec::new();
        let mut flats: Vec<SVec> = Vec::new();
        for (k, (x, y)) in self.terms.iter().enumerate() {
            let fy = flat(y);
            match ech.insert(&fy) {
                Insert::New { index } => {
                    basis_of.insert(k, index);
                    combined.push(x.clone());
                    flats.push(fy);
                }
                Insert::Dependent { relation } => {
                    // Y_k = -sum_{j != k} r_j Y_j over earlier independent inputs
                    for (&j, r) in relation.iter() {
                        if j == k {
                            continue;
                        }
                        let b = basis_of[&j];
                        combined[b] = combined[b].add(&x.scale(&-r));
                    }
                }
            }
        }
        let (b0, (r, c)) = combined
            .iter()
            .enumerate()
            .find_map(|(b, x)| x.first_nonzero().map(|(r, c, _)| (b, (r, c))))?;
        // sum_b X~_b[r, c] Y_b is a nonzero combination of independent vectors
        let weights: Vec<CycNum> = combined.iter().map(|x| x.get(r, c)).collect();
        let mut acc = SVec::new();
        for (b, w) in weights.iter().enumerate().skip(b0) {
            if !w.is_zero() {
                acc.axpy(w, &flats[b]);
            }
        }
        let (key, value) = acc.first().map(|(k, v)| (k, v.clone()))?;
        Some(TensorEntry { row: (r, key % rows_y), col: (c, key / rows_y), value })
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_entry().is_none()
    }
}

/// Describes a nonzero entry with state labels.
pub fn describe_entry(space: &QSpace, e: &TensorEntry) -> String {
    let lb = space.left().basis();
    let rb = space.right().basis();
    format!(
        "entry <{} (x) {}| . |{} (x) {}> = {}",
        lb.label(e.row.0),
        rb.label(e.row.1),
        lb.label(e.col.0),
        rb.label(e.col.1),
        e.value
    )
}

/// `Q^i_j` on the product states where a single letter is determined.
#[derive(Clone, Debug)]
pub struct QOperator {
    pub i: usize,
    pub j: usize,
    pub op: TensorOp,
}

impl QSpace {
    pub fn q_operator(&self, i: usize, j: usize) -> QOperator {
        let mut wc = self.words(&self.region(1));
        QOperator { i, j, op: wc.monomial(&[(i, j)]) }
    }

    /// All `n^2` operators, row by row.
    pub fn q_operators(&self) -> Vec<QOperator> {
        let n = self.n();
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|(i, j)| self.q_operator(i, j)).collect()
    }
}

impl QOperator {
    /// Dense matrix on `F (x) Fbar`, index `s * dim Fbar + t`.
    pub fn matrix(&self, space: &QSpace) -> OpMatrix {
        self.op.to_matrix(space.ctx(), space.dim(), space.dim())
    }
}
