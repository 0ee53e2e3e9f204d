use serde_json::{json, Value};

use super::eps::eps_sign;
use crate::linalg::{Echelon, Insert, OpMatrix, SVec};
use crate::qfield::{pcoeff_shift_content, CycNum, FieldCtx, PCoeff};
use crate::report::{Outcome, Report};

/// Constant braid matrix on `C^n (x) C^n`, row-major on the pair index
/// `(a - 1) n + (b - 1)`: row is the upper pair, column the lower pair.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<CycNum>,
}

impl RMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    fn pos(&self, a: usize, b: usize, a2: usize, b2: usize) -> usize {
        let n = self.n;
        ((a - 1) * n + (b - 1)) * n * n + (a2 - 1) * n + (b2 - 1)
    }

    /// `R^{ab}_{a2 b2}` with 1-based indices.
    pub fn entry(&self, a: usize, b: usize, a2: usize, b2: usize) -> &CycNum {
        &self.entries[self.pos(a, b, a2, b2)]
    }

    /// The matrix as an operator: column `(a2, b2)` holds the entries `R^{..}_{a2 b2}`.
    pub fn to_opmatrix(&self) -> OpMatrix {
        let m = self.n * self.n;
        let ctx = self.entries[0].ctx();
        let cols = (0..m)
            .map(|c| {
                let mut v = SVec::new();
                for r in 0..m {
                    v.add_entry(r, &self.entries[r * m + c]);
                }
                v
            })
            .collect();
        OpMatrix::from_columns(ctx, m, cols)
    }

    /// Rows of textual field elements.
    pub fn to_json(&self) -> Value {
        let m = self.n * self.n;
        let rows: Vec<Value> = (0..m)
            .map(|r| Value::Array((0..m).map(|c| json!(self.entries[r * m + c].to_string())).collect()))
            .collect();
        Value::Array(rows)
    }
}

/// `q^{1/n} (delta^a_{b2} delta^b_{a2} + (q^{-1} - q^{-eps_ab}) delta^a_{a2} delta^b_{b2})`.
pub fn rhat(ctx: &'static FieldCtx) -> RMatrix {
    let n = ctx.n() as usize;
    let qn = ctx.q_frac_pow(1);
    let mut entries = vec![ctx.zero(); n.pow(4)];
    for a in 1..=n {
        for b in 1..=n {
            let mut set = |a2: usize, b2: usize, v: CycNum| {
                let pos = ((a - 1) * n + (b - 1)) * n * n + (a2 - 1) * n + (b2 - 1);
                entries[pos] += &v;
            };
            set(b, a, qn.clone());
            let d = ctx.q_pow(-1) - ctx.q_pow(-eps_sign(a, b));
            set(a, b, &qn * &d);
        }
    }
    RMatrix { n, entries }
}

/// The function `alpha(p_ij)` multiplying `a_ij(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaChoice {
    /// `alpha = 1`.
    Unit,
    /// `alpha(p) = [p + 1] / [p - 1]`.
    Ratio,
}

/// Dynamical braid matrix with weight-function entries, same layout as [`RMatrix`].
#[derive(Clone, Debug)]
pub struct DynRMatrix {
    n: usize,
    choice: AlphaChoice,
    entries: Vec<PCoeff>,
}

impl DynRMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn choice(&self) -> AlphaChoice {
        self.choice
    }

    /// `R(p)^{ij}_{i2 j2}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize, i2: usize, j2: usize) -> &PCoeff {
        let n = self.n;
        &self.entries[((i - 1) * n + (j - 1)) * n * n + (i2 - 1) * n + (j2 - 1)]
    }

    pub fn entries(&self) -> &[PCoeff] {
        &self.entries
    }
}

/// `a_ij(p)`: `q^{-1}` on the diagonal, `alpha(p_ij) [p_ij - 1] / [p_ij]` off it.
pub fn dyn_a(ctx: &'static FieldCtx, i: usize, j: usize, choice: AlphaChoice) -> PCoeff {
    let n = ctx.n() as usize;
    if i == j {
        return PCoeff::constant(ctx.q_pow(-1), n - 1);
    }
    let top = match choice {
        AlphaChoice::Unit => PCoeff::qnum_pij(ctx, n, i, j, -1),
        AlphaChoice::Ratio => PCoeff::qnum_pij(ctx, n, i, j, 1),
    };
    top.div(&PCoeff::qnum_pij(ctx, n, i, j, 0)).expect("[p_ij] is not the zero function")
}

/// `b_ij(p)`: zero on the diagonal, `q^{-p_ij} / [p_ij]` off it.
pub fn dyn_b(ctx: &'static FieldCtx, i: usize, j: usize) -> PCoeff {
    let n = ctx.n() as usize;
    if i == j {
        return PCoeff::zero(ctx, n - 1);
    }
    PCoeff::q_pij(ctx, n, i, j, -1)
        .div(&PCoeff::qnum_pij(ctx, n, i, j, 0))
        .expect("[p_ij] is not the zero function")
}

pub fn rhat_dyn(ctx: &'static FieldCtx, choice: AlphaChoice) -> DynRMatrix {
    let n = ctx.n() as usize;
    let qn = ctx.q_frac_pow(1);
    let mut entries = vec![PCoeff::zero(ctx, n - 1); n.pow(4)];
    for i in 1..=n {
        for j in 1..=n {
            let base = ((i - 1) * n + (j - 1)) * n * n;
            let swap = base + (j - 1) * n + (i - 1);
            entries[swap] = entries[swap].add(&dyn_a(ctx, i, j, choice).scale(&qn));
            let same = base + (i - 1) * n + (j - 1);
            entries[same] = entries[same].add(&dyn_b(ctx, i, j).scale(&qn));
        }
    }
    DynRMatrix { n, choice, entries }
}

fn flatten(m: &OpMatrix) -> SVec {
    let rows = m.nrows();
    let mut v = SVec::new();
    for (r, c, x) in m.triplets() {
        v.add_entry(c * rows + r, &x);
    }
    v
}

fn witness(m: &OpMatrix) -> String {
    match m.first_nonzero() {
        Some((r, c, v)) => format!("entry ({r},{c}) = {v}"),
        None => "zero".into(),
    }
}

/// Minimal polynomial of `m` as monic coefficients (low degree first), found by
/// a dependency search over `I, m, m^2, ...` up to `max_deg`.
pub fn minimal_polynomial(m: &OpMatrix, max_deg: usize) -> Option<Vec<CycNum>> {
    let ctx = m.ctx();
    let mut ech = Echelon::new(ctx);
    let mut pw = OpMatrix::identity(ctx, m.nrows());
    for d in 0..=max_deg {
        if let Insert::Dependent { relation } = ech.insert(&flatten(&pw)) {
            let lead = relation.get(d).cloned()?;
            let inv = lead.inv()?;
            return Some((0..=d).map(|k| relation.get(k).map(|c| c * &inv).unwrap_or_else(|| ctx.zero())).collect());
        }
        pw = m.mul(&pw);
    }
    None
}

/// Roots of a polynomial of the form `+-z^k`, as `(sign, k, value)`.
pub fn unit_roots(ctx: &'static FieldCtx, poly: &[CycNum]) -> Vec<(i64, i64, CycNum)> {
    let mut out: Vec<(i64, i64, CycNum)> = Vec::new();
    for k in 0..ctx.order() as i64 {
        for s in [1i64, -1] {
            let x = ctx.z_pow(k).scale_int(s);
            let mut acc = ctx.zero();
            for c in poly.iter().rev() {
                acc = &(&acc * &x) + c;
            }
            if acc.is_zero() && !out.iter().any(|r| r.2 == x) {
                out.push((s, k, x));
            }
        }
    }
    out
}

/// Braid relation, symmetry and the two-eigenvalue minimal polynomial of the
/// constant matrix.
pub fn verify_rmatrix_structure(ctx: &'static FieldCtx) -> Report {
    let n = ctx.n() as usize;
    let mut rep = Report::new("qcheck rmatrix").param("n", n).param("h", ctx.h());
    let r = rhat(ctx).to_opmatrix();
    let id = OpMatrix::identity(ctx, n);
    rep.run("rmatrix.braid", || {
        let r12 = r.kron(&id);
        let r23 = id.kron(&r);
        let lhs = r12.mul(&r23).mul(&r12);
        let rhs = r23.mul(&r12).mul(&r23);
        let d = lhs.sub(&rhs);
        if d.is_zero() {
            Outcome::pass()
        } else {
            Outcome::fail(witness(&d))
        }
    });
    rep.run("rmatrix.symmetric", || {
        let d = r.sub(&r.transpose());
        if d.is_zero() {
            Outcome::pass()
        } else {
            Outcome::fail(witness(&d))
        }
    });
    rep.run("rmatrix.hecke_min_poly", || {
        let Some(poly) = minimal_polynomial(&r, 4) else {
            return Outcome::fail("no minimal polynomial of degree <= 4");
        };
        let deg = poly.len() - 1;
        let roots = unit_roots(ctx, &poly);
        let detail = json!({
            "degree": deg,
            "coefficients": poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "eigenvalues": roots.iter().map(|(s, k, _)| format!("{}z^{k}", if *s < 0 { "-" } else { "" })).collect::<Vec<_>>(),
            "eigenvalues_complex": roots.iter().map(|(_, _, c)| {
                let z = c.to_complex();
                vec![z.re, z.im]
            }).collect::<Vec<_>>(),
        });
        if deg != 2 {
            return Outcome::fail(format!("minimal polynomial has degree {deg}")).with_detail(detail);
        }
        if roots.len() != 2 {
            return Outcome::fail(format!("found {} eigenvalues of the form +-z^k", roots.len())).with_detail(detail);
        }
        let dim = n * n;
        let shifted = |l: &CycNum| r.sub(&OpMatrix::identity(ctx, dim).scale(l));
        let prod = shifted(&roots[0].2).mul(&shifted(&roots[1].2));
        if prod.is_zero() {
            Outcome::pass().with_detail(detail)
        } else {
            Outcome::fail(witness(&prod)).with_detail(detail)
        }
    });
    rep
}

/// How the second factor's weight argument is displaced by the first tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeShift {
    None,
    Forward,
    Backward,
}

impl YbeShift {
    fn sign(self) -> i64 {
        match self {
            YbeShift::None => 0,
            YbeShift::Forward => 1,
            YbeShift::Backward => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            YbeShift::None => "none",
            YbeShift::Forward => "forward",
            YbeShift::Backward => "backward",
        }
    }
}

type PMat = Vec<Vec<PCoeff>>;

fn pmat_mul(a: &PMat, b: &PMat, zero: &PCoeff) -> PMat {
    let m = a.len();
    let mut out = vec![vec![zero.clone(); m]; m];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                let y = &b[k][j];
                if !y.is_zero() {
                    out[i][j] = out[i][j].add(&x.mul(y));
                }
            }
        }
    }
    out
}

/// Dynamical braid relation `R12(p) R23(p') R12(p) = R23(p') R12(p) R23(p')`,
/// where `p'` displaces `p` by the first slot's index according to `shift`.
/// Returns the number of nonzero residual entries.
pub fn dynamical_braid_residual(ctx: &'static FieldCtx, choice: AlphaChoice, shift: YbeShift) -> usize {
    let n = ctx.n() as usize;
    let r = rhat_dyn(ctx, choice);
    let zero = PCoeff::zero(ctx, n - 1);
    let m = n * n * n;
    let idx = |i: usize, j: usize, k: usize| ((i - 1) * n + (j - 1)) * n + (k - 1);
    let mut r12 = vec![vec![zero.clone(); m]; m];
    let mut r23 = vec![vec![zero.clone(); m]; m];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for i2 in 1..=n {
                    for j2 in 1..=n {
                        r12[idx(i, j, k)][idx(i2, j2, k)] = r.entry(i, j, i2, j2).clone();
                        let mut content = vec![0i64; n];
                        content[k - 1] = shift.sign();
                        r23[idx(k, i, j)][idx(k, i2, j2)] = pcoeff_shift_content(r.entry(i, j, i2, j2), &content);
                    }
                }
            }
        }
    }
    let lhs = pmat_mul(&pmat_mul(&r12, &r23, &zero), &r12, &zero);
    let rhs = pmat_mul(&pmat_mul(&r23, &r12, &zero), &r23, &zero);
    let mut bad = 0;
    for a in 0..m {
        for b in 0..m {
            if !lhs[a][b].sub(&rhs[a][b]).is_zero() {
                bad += 1;
            }
        }
    }
    bad
}

/// Exploratory: records which displacement convention satisfies the dynamical
/// braid relation. Never fails.
pub fn explore_dynamical_ybe(ctx: &'static FieldCtx, choice: AlphaChoice) -> Report {
    let mut rep = Report::new("explore dynamical-ybe").param("n", ctx.n()).param("h", ctx.h());
    let tag = match choice {
        AlphaChoice::Unit => "unit",
        AlphaChoice::Ratio => "ratio",
    };
    for s in [YbeShift::None, YbeShift::Forward, YbeShift::Backward] {
        rep.run(format!("dynamical_ybe.{tag}.{}", s.name()), || {
            let bad = dynamical_braid_residual(ctx, choice, s);
            Outcome::info(json!({ "nonzero_entries": bad, "holds": bad == 0 }))
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{eval_at_weight, qint};

    #[test]
    fn constant_entries() {
        let ctx = FieldCtx::get(2, 4);
        let r = rhat(ctx);
        assert_eq!(r.entry(1, 2, 2, 1), &ctx.q_frac_pow(1));
        assert_eq!(r.entry(1, 1, 1, 1), &(&ctx.q_frac_pow(1) * &ctx.q_pow(-1)));
        assert!(r.entry(2, 1, 2, 1).is_zero());
    }

    #[test]
    fn cleared_dynamical_entries_match_exchange_coefficients() {
        let ctx = FieldCtx::get(2, 5);
        for pw in [[3i64, 0], [1, 0], [0, 2]] {
            let p = pw[0] - pw[1];
            let a = eval_at_weight(&dyn_a(ctx, 1, 2, AlphaChoice::Unit), &pw).unwrap();
            let b = eval_at_weight(&dyn_b(ctx, 1, 2), &pw).unwrap();
            assert_eq!(&a * &qint(ctx, p), qint(ctx, p - 1));
            assert_eq!(&b * &qint(ctx, p), ctx.q_pow(-p));
        }
    }

    #[test]
    fn structure_checks_pass() {
        for (n, h) in [(2, 4), (3, 5)] {
            let rep = verify_rmatrix_structure(FieldCtx::get(n, h));
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn backward_displacement_satisfies_dynamical_braid() {
        let ctx = FieldCtx::get(2, 5);
        assert_eq!(dynamical_braid_residual(ctx, AlphaChoice::Unit, YbeShift::Backward), 0);
        assert!(dynamical_braid_residual(ctx, AlphaChoice::Unit, YbeShift::None) > 0);
    }

    #[test]
    fn transposed_unit_matrix_is_ratio_matrix() {
        for (n, h) in [(2u32, 4u32), (3, 5)] {
            let ctx = FieldCtx::get(n, h);
            let u = rhat_dyn(ctx, AlphaChoice::Unit);
            let r = rhat_dyn(ctx, AlphaChoice::Ratio);
            let n = n as usize;
            for i in 1..=n {
                for j in 1..=n {
                    for i2 in 1..=n {
                        for j2 in 1..=n {
                            assert_eq!(u.entry(i2, j2, i, j), r.entry(i, j, i2, j2));
                        }
                    }
                }
            }
        }
    }
}
