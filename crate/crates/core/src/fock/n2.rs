//! The `n = 2` diagonal-sector module from its closed formulas, and its
//! invariant scalar product.

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{OpMatrix, SVec};
use crate::qfield::{qint, CycNum, FieldCtx};
use crate::report::{Outcome, Report};

/// `A |m> = [m+1] |m+1>`, `D |m> = [m+1] |m-1>`, `L |m> = -q^{2(m+1)} |m>` on
/// `m = 0..h-1`.
#[derive(Clone, Debug)]
pub struct N2ClosedForm {
    pub h: usize,
    pub a: OpMatrix,
    pub d: OpMatrix,
    pub l: OpMatrix,
    pub l_inv: OpMatrix,
}

fn require_n2(ctx: &'static FieldCtx) -> Result<usize> {
    if ctx.n() != 2 || ctx.h() < 3 {
        return Err(Error::InvalidParams(format!(
            "the closed-form module needs n = 2 and h >= 3 (got n={}, h={})",
            ctx.n(),
            ctx.h()
        )));
    }
    Ok(ctx.h() as usize)
}

pub fn n2_closed_form(ctx: &'static FieldCtx) -> Result<N2ClosedForm> {
    let h = require_n2(ctx)?;
    let mut a = vec![SVec::new(); h];
    let mut d = vec![SVec::new(); h];
    for m in 0..h {
        let c = qint(ctx, m as i64 + 1);
        if m + 1 < h {
            a[m].add_entry(m + 1, &c);
        }
        if m > 0 {
            d[m].add_entry(m - 1, &c);
        }
    }
    let l = (0..h).map(|m| -ctx.q_pow(2 * (m as i64 + 1))).collect();
    let l_inv = (0..h).map(|m| -ctx.q_pow(-2 * (m as i64 + 1))).collect();
    Ok(N2ClosedForm {
        h,
        a: OpMatrix::from_columns(ctx, h, a),
        d: OpMatrix::from_columns(ctx, h, d),
        l: OpMatrix::diagonal(ctx, l),
        l_inv: OpMatrix::diagonal(ctx, l_inv),
    })
}

impl N2ClosedForm {
    /// `[L] = (L - L^{-1}) / (q - q^{-1})`.
    pub fn qnum_l(&self) -> OpMatrix {
        let ctx = self.a.ctx();
        let den = (ctx.q_pow(1) - ctx.q_pow(-1)).inv().expect("q is not a fourth root of unity");
        self.l.sub(&self.l_inv).scale(&den)
    }
}

/// `(m'|m) = [m+1] delta_{m m'}`.
pub fn gram(ctx: &'static FieldCtx) -> Result<OpMatrix> {
    let h = require_n2(ctx)?;
    Ok(OpMatrix::diagonal(ctx, (0..h).map(|m| qint(ctx, m as i64 + 1)).collect()))
}

fn matrix_witness(lhs: &OpMatrix, rhs: &OpMatrix) -> Option<String> {
    lhs.sub(rhs).first_nonzero().map(|(r, c, v)| format!("entry ({r},{c}) differs by {v}"))
}

/// The closed-form actions, the scalar product and the adjointness
/// `A^+ = D`, `L^+ = L^{-1}` with respect to it.
pub fn check_closed_form(ctx: &'static FieldCtx) -> Result<Report> {
    let cf = n2_closed_form(ctx)?;
    let g = gram(ctx)?;
    let h = cf.h;
    let mut rep = Report::new("qcheck n2").param("n", 2).param("h", h);
    let e = |m: usize| SVec::unit(m, ctx);
    rep.run("closed_form.a_top", || {
        let top = cf.a.apply(&e(h - 2)) == e(h - 1).scale(&qint(ctx, h as i64 - 1));
        Outcome::from_witness((!top || !cf.a.apply(&e(h - 1)).is_zero()).then(|| "A near the top state".to_string()))
    });
    rep.run("closed_form.d_vacuum", || Outcome::from_witness((!cf.d.apply(&e(0)).is_zero()).then(|| "D|0> != 0".into())));
    rep.run("closed_form.l_vacuum", || {
        let ok = cf.l.apply(&e(0)) == e(0).scale(&-ctx.q_pow(2));
        Outcome::from_witness((!ok).then(|| "L|0> != -q^2|0>".into()))
    });
    rep.run("gram.adjoint_a_d", || Outcome::from_witness(matrix_witness(&cf.a.adjoint().mul(&g), &g.mul(&cf.d))));
    rep.run("gram.adjoint_l", || Outcome::from_witness(matrix_witness(&cf.l.adjoint().mul(&g), &g.mul(&cf.l_inv))));
    rep.run("gram.isotropic_top", || {
        let top = g.get(h - 1, h - 1);
        Outcome::from_witness((!top.is_zero()).then(|| format!("(h-1|h-1) = {top}")))
    });
    rep.run("gram.float", || {
        let mut worst = 0f64;
        let mut values = Vec::new();
        for m in 0..h {
            let exact = g.get(m, m).to_complex();
            let want = ((m + 1) as f64 * std::f64::consts::PI / h as f64).sin() / (std::f64::consts::PI / h as f64).sin();
            worst = worst.max((exact.re - want).abs()).max(exact.im.abs());
            values.push(exact.re);
        }
        let out = if worst < 1e-10 { Outcome::pass() } else { Outcome::fail(format!("max deviation {worst:e}")) };
        out.with_detail(json!({ "diagonal": values, "max_deviation": worst }))
    });
    Ok(rep)
}

/// `[A, D] |m> = -[2m+2] |m>` eigenvalues of the closed form.
pub fn closed_form_commutator_eigenvalues(ctx: &'static FieldCtx) -> Result<Vec<CycNum>> {
    let cf = n2_closed_form(ctx)?;
    let c = cf.a.commutator(&cf.d);
    c.diagonal_entries().ok_or_else(|| Error::Domain("[A, D] is not diagonal".into()))
}
