//! Sparse exact vectors and matrices over [`CycNum`], plus incremental row
//! reduction.

use std::collections::BTreeMap;

use crate::qfield::{CycNum, FieldCtx};

/// Sparse vector keyed by basis index; never stores zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SVec(pub BTreeMap<usize, CycNum>);

impl SVec {
    pub fn new() -> Self {
        SVec(BTreeMap::new())
    }

    pub fn unit(k: usize, ctx: &'static FieldCtx) -> Self {
        let mut v = SVec::new();
        v.0.insert(k, ctx.one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, k: usize) -> Option<&CycNum> {
        self.0.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &CycNum)> {
        self.0.iter()
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &CycNum, other: &SVec) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (k, v) in &other.0 {
            let t = if one { v.clone() } else { c * v };
            self.add_entry(*k, &t);
        }
    }

    pub fn add_entry(&mut self, k: usize, v: &CycNum) {
        if v.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    self.0.remove(&k);
                }
            }
            None => {
                self.0.insert(k, v.clone());
            }
        }
    }

    pub fn scale(&self, c: &CycNum) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn add(&self, other: &SVec) -> SVec {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add_entry(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &SVec) -> SVec {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add_entry(*k, &-v);
        }
        out
    }

    pub fn first(&self) -> Option<(usize, &CycNum)> {
        self.0.iter().next().map(|(k, v)| (*k, v))
    }
}

/// Sparse matrix stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug)]
pub struct OpMatrix {
    ctx: &'static FieldCtx,
    rows: usize,
    cols: Vec<SVec>,
}

impl OpMatrix {
    pub fn zero(ctx: &'static FieldCtx, rows: usize, cols: usize) -> Self {
        OpMatrix { ctx, rows, cols: vec![SVec::new(); cols] }
    }

    pub fn identity(ctx: &'static FieldCtx, dim: usize) -> Self {
        OpMatrix { ctx, rows: dim, cols: (0..dim).map(|k| SVec::unit(k, ctx)).collect() }
    }

    pub fn from_columns(ctx: &'static FieldCtx, rows: usize, cols: Vec<SVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.0.keys().all(|&k| k < rows)));
        OpMatrix { ctx, rows, cols }
    }

    pub fn diagonal(ctx: &'static FieldCtx, diag: Vec<CycNum>) -> Self {
        let rows = diag.len();
        let cols = diag
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let mut s = SVec::new();
                s.add_entry(k, &v);
                s
            })
            .collect();
        OpMatrix { ctx, rows, cols }
    }

    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        self.cols[j].get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, CycNum)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out.push((*i, j, v.clone()));
            }
        }
        out
    }

    /// First nonzero entry, for failure witnesses.
    pub fn first_nonzero(&self) -> Option<(usize, usize, CycNum)> {
        for (j, c) in self.cols.iter().enumerate() {
            if let Some((i, v)) = c.first() {
                return Some((i, j, v.clone()));
            }
        }
        None
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (k, c) in v.iter() {
            out.axpy(c, &self.cols[*k]);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        assert_eq!(self.ncols(), other.rows, "dimension mismatch in product");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        OpMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn add(&self, other: &OpMatrix) -> OpMatrix {
        self.check_shape(other);
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect();
        OpMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn sub(&self, other: &OpMatrix) -> OpMatrix {
        self.check_shape(other);
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect();
        OpMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn scale(&self, c: &CycNum) -> OpMatrix {
        let cols = self.cols.iter().map(|v| v.scale(c)).collect();
        OpMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn pow(&self, e: u32) -> OpMatrix {
        let mut acc = OpMatrix::identity(self.ctx, self.rows);
        for _ in 0..e {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn transpose(&self) -> OpMatrix {
        let mut cols = vec![SVec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[*i].0.insert(j, v.clone());
            }
        }
        OpMatrix { ctx: self.ctx, rows: self.cols.len(), cols }
    }

    /// Conjugate transpose, with the field conjugation of each entry.
    pub fn adjoint(&self) -> OpMatrix {
        let t = self.transpose();
        let cols = t.cols.iter().map(|c| SVec(c.iter().map(|(&k, v)| (k, v.conj())).collect())).collect();
        OpMatrix { ctx: self.ctx, rows: t.rows, cols }
    }

    /// Kronecker product; index `(a, b)` maps to `a * other.rows + b`.
    pub fn kron(&self, other: &OpMatrix) -> OpMatrix {
        let r2 = other.rows;
        let c2 = other.ncols();
        let mut cols = vec![SVec::new(); self.ncols() * c2];
        for (ja, ca) in self.cols.iter().enumerate() {
            for (jb, cb) in other.cols.iter().enumerate() {
                let col = &mut cols[ja * c2 + jb];
                for (ia, va) in ca.iter() {
                    for (ib, vb) in cb.iter() {
                        col.0.insert(ia * r2 + ib, va * vb);
                    }
                }
            }
        }
        OpMatrix { ctx: self.ctx, rows: self.rows * r2, cols }
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &OpMatrix) -> OpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Diagonal entries if the matrix is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<CycNum>> {
        let mut out = Vec::with_capacity(self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            match c.nnz() {
                0 => out.push(self.ctx.zero()),
                1 if c.get(j).is_some() => out.push(c.get(j).unwrap().clone()),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Restricts to rows and columns in `keep` (given in new order).
    pub fn restrict(&self, keep: &[usize]) -> OpMatrix {
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let cols = keep
            .iter()
            .map(|&j| {
                SVec(
                    self.cols[j]
                        .iter()
                        .filter_map(|(i, v)| map.get(i).map(|&k| (k, v.clone())))
                        .collect(),
                )
            })
            .collect();
        OpMatrix { ctx: self.ctx, rows: keep.len(), cols }
    }

    fn check_shape(&self, other: &OpMatrix) {
        assert!(
            self.rows == other.rows && self.ncols() == other.ncols(),
            "shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.ncols(),
            other.rows,
            other.ncols()
        );
    }
}

impl PartialEq for OpMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl Eq for OpMatrix {}

/// Incrementally built echelon basis of a span, optionally tracking each basis
/// vector as a combination of the inserted inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    ctx: &'static FieldCtx,
    basis: Vec<(usize, SVec, SVec)>,
    inserted: usize,
}

/// What happened to an inserted vector.
#[derive(Clone, Debug)]
pub enum Insert {
    /// It was independent; it became basis vector `index`.
    New { index: usize },
    /// It was dependent; `relation` (over input indices) sums to zero.
    Dependent { relation: SVec },
}

impl Echelon {
    pub fn new(ctx: &'static FieldCtx) -> Self {
        Echelon { ctx, basis: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the basis, returning the remainder and the
    /// coefficients of the basis vectors that were subtracted.
    pub fn reduce(&self, v: &SVec) -> (SVec, Vec<(usize, CycNum)>) {
        let mut cur = v.clone();
        let mut used = Vec::new();
        for (m, (piv, b, _)) in self.basis.iter().enumerate() {
            if let Some(c) = cur.get(*piv).cloned() {
                cur.axpy(&-&c, b);
                used.push((m, c));
            }
        }
        (cur, used)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts the next input vector (its input index is the insertion count).
    pub fn insert(&mut self, v: &SVec) -> Insert {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        // track: rem = v - sum c_m Z_m, with Z_m = sum T_m
        let mut track = SVec::unit(idx, self.ctx);
        for (m, c) in &used {
            track.axpy(&-c, &self.basis[*m].2);
        }
        match rem.first() {
            None => Insert::Dependent { relation: track },
            Some((piv, lead)) => {
                let inv = lead.inv().unwrap();
                self.basis.push((piv, rem.scale(&inv), track.scale(&inv)));
                Insert::New { index: self.basis.len() - 1 }
            }
        }
    }

    /// Expresses `v` as a combination of the inserted inputs, if it is in the span.
    pub fn solve(&self, v: &SVec) -> Option<SVec> {
        let (rem, used) = self.reduce(v);
        if !rem.is_zero() {
            return None;
        }
        let mut out = SVec::new();
        for (m, c) in &used {
            out.axpy(c, &self.basis[*m].2);
        }
        Some(out)
    }
}

/// Basis of `{ c : sum_k c_k v_k = 0 }`.
pub fn nullspace(ctx: &'static FieldCtx, vs: &[SVec]) -> Vec<SVec> {
    let mut ech = Echelon::new(ctx);
    let mut out = Vec::new();
    for v in vs {
        if let Insert::Dependent { relation } = ech.insert(v) {
            out.push(relation);
        }
    }
    out
}

/// Rank of a family of vectors.
pub fn rank(ctx: &'static FieldCtx, vs: &[SVec]) -> usize {
    let mut ech = Echelon::new(ctx);
    for v in vs {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(ctx: &'static FieldCtx, xs: &[i64]) -> SVec {
        let mut v = SVec::new();
        for (k, &x) in xs.iter().enumerate() {
            v.add_entry(k, &ctx.int(x));
        }
        v
    }

    #[test]
    fn nullspace_of_dependent_family() {
        let ctx = FieldCtx::get(2, 4);
        let vs = vec![sv(ctx, &[1, 2, 0]), sv(ctx, &[0, 1, 1]), sv(ctx, &[1, 3, 1])];
        let ns = nullspace(ctx, &vs);
        assert_eq!(ns.len(), 1);
        let mut acc = SVec::new();
        for (k, c) in ns[0].iter() {
            acc.axpy(c, &vs[*k]);
        }
        assert!(acc.is_zero());
        assert_eq!(rank(ctx, &vs), 2);
    }

    #[test]
    fn kron_matches_entries() {
        let ctx = FieldCtx::get(2, 4);
        let a = OpMatrix::from_columns(ctx, 2, vec![sv(ctx, &[1, 2]), sv(ctx, &[0, 3])]);
        let b = OpMatrix::identity(ctx, 2);
        let k = a.kron(&b);
        assert_eq!(k.get(2, 0), ctx.int(2));
        assert_eq!(k.get(3, 1), ctx.int(2));
        assert_eq!(k.get(3, 3), ctx.int(3));
        assert!(a.transpose().transpose() == a);
    }
}
