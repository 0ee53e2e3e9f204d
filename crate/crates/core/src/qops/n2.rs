//! The `n = 2` operators `A = Q^1_1`, `B = Q^1_2`, `C = Q^2_1`, `D = Q^2_2`
//! and the structure they generate on the full product space.

use serde_json::json;

use super::checks::base_report;
use super::space::{describe_entry, QSpace, TensorOp};
use crate::error::{Error, Result};
use crate::fock::{check_closed_form, closed_form_commutator_eigenvalues, gram, n2_closed_form};
use crate::linalg::{Echelon, Insert, OpMatrix, SVec};
use crate::qfield::qint;
use crate::report::{Outcome, Report};

const A: (usize, usize) = (1, 1);
const B: (usize, usize) = (1, 2);
const C: (usize, usize) = (2, 1);
const D: (usize, usize) = (2, 2);

fn named(op: &TensorOp, space: &QSpace, name: &str) -> Option<String> {
    op.nonzero_entry().map(|e| format!("{name}: {}", describe_entry(space, &e)))
}

fn first_failure(space: &QSpace, ops: Vec<(String, TensorOp)>) -> Outcome {
    let count = ops.len();
    Outcome::from_witness(ops.iter().find_map(|(name, op)| named(op, space, name)))
        .with_detail(json!({ "identities": count }))
}

/// The diagonal vectors `|m> = A^m / [m]! |0>`, `m = 0..h-1`.
pub fn verma_vectors(space: &QSpace) -> Result<Vec<SVec>> {
    let ctx = space.ctx();
    let mut out = vec![space.vacuum()];
    for m in 1..space.h() {
        let next = space.apply_q(A.0, A.1, &out[m - 1]);
        // A |m-1> = [m] |m>
        let inv = qint(ctx, m as i64).inv().ok_or_else(|| Error::Domain(format!("[{m}] vanishes below h")))?;
        out.push(next.scale(&inv));
    }
    Ok(out)
}

/// Matrix of an operator on `span{|m>}` in the `|m>` basis, if the span is invariant.
fn in_basis(space: &QSpace, basis: &[SVec], op: impl Fn(&SVec) -> SVec) -> std::result::Result<OpMatrix, String> {
    let ctx = space.ctx();
    let mut ech = Echelon::new(ctx);
    for (m, v) in basis.iter().enumerate() {
        if let Insert::Dependent { .. } = ech.insert(v) {
            return Err(format!("|{m}> is dependent on the lower vectors"));
        }
    }
    let mut cols = Vec::with_capacity(basis.len());
    for (m, v) in basis.iter().enumerate() {
        let image = op(v);
        cols.push(ech.solve(&image).ok_or_else(|| format!("image of |{m}> leaves span{{|m>}}"))?);
    }
    Ok(OpMatrix::from_columns(ctx, basis.len(), cols))
}

fn matrix_diff(name: &str, lhs: &OpMatrix, rhs: &OpMatrix) -> Option<String> {
    lhs.sub(rhs).first_nonzero().map(|(r, c, v)| format!("{name}: entry ({r},{c}) differs by {v}"))
}

/// The complete `n = 2` suite.
pub fn n2_suite(space: &QSpace) -> Result<Report> {
    let ctx = space.ctx();
    if space.n() != 2 {
        return Err(Error::InvalidParams(format!("n2-suite needs n = 2 (got n={})", space.n())));
    }
    if !space.complete() {
        return Err(Error::Domain("the n = 2 modules did not close".into()));
    }
    let h = space.h();
    let mut rep = base_report("qcheck n2-suite", space).param("dimension", space.dim());
    let full = space.region(0);
    let mut wc = space.words(&full);
    let a = wc.monomial(&[A]);
    let b = wc.monomial(&[B]);
    let c = wc.monomial(&[C]);
    let d = wc.monomial(&[D]);
    let l = space.l_op(1);
    let l_inv = space.l_op(-1);
    let nn = space.n_op(1);
    let n_inv = space.n_op(-1);
    let q2 = ctx.q_pow(2);
    let qm2 = ctx.q_pow(-2);

    rep.run("n2.dimension", || {
        let want = h.pow(4);
        Outcome::from_witness((space.dim() != want).then(|| format!("dimension {} instead of {want}", space.dim())))
    });
    rep.run("n2.AB", || {
        first_failure(
            space,
            vec![
                ("[A,B]".into(), a.commutator(&b)),
                ("[C,A]".into(), c.commutator(&a)),
                ("[B,D]".into(), b.commutator(&d)),
                ("[C,D]".into(), c.commutator(&d)),
            ],
        )
    });
    rep.run("n2.triples.AD", || {
        first_failure(space, vec![("[A,D]-[L]".into(), a.commutator(&d).sub(&space.qnum_of(&l, &l_inv)))])
    });
    rep.run("n2.triples.BC", || {
        first_failure(space, vec![("[B,C]-[N]".into(), b.commutator(&c).sub(&space.qnum_of(&nn, &n_inv)))])
    });
    rep.run("n2.triples.intertwining", || {
        first_failure(
            space,
            vec![
                ("LA-q^2AL".into(), l.mul(&a).sub(&a.mul(&l).scale(&q2))),
                ("LD-q^-2DL".into(), l.mul(&d).sub(&d.mul(&l).scale(&qm2))),
                ("NB-q^2BN".into(), nn.mul(&b).sub(&b.mul(&nn).scale(&q2))),
                ("NC-q^-2CN".into(), nn.mul(&c).sub(&c.mul(&nn).scale(&qm2))),
            ],
        )
    });
    rep.run("n2.triples.nilpotency", || {
        for (name, x) in [("A", A), ("B", B), ("C", C), ("D", D)] {
            if let Some(w) = named(&wc.monomial(&vec![x; h]), space, &format!("{name}^{h}")) {
                return Outcome::fail(w);
            }
            if wc.monomial(&vec![x; h - 1]).is_zero() {
                return Outcome::fail(format!("{name}^{} already vanishes", h - 1));
            }
        }
        Outcome::pass().with_detail(json!({ "degree": h }))
    });
    rep.run("n2.triples.periodicity", || {
        let id = space.identity();
        let pow = |x: &TensorOp| (0..2 * h).fold(id.clone(), |acc, _| acc.mul(x));
        first_failure(
            space,
            vec![
                ("L L^-1 - 1".into(), l.mul(&l_inv).sub(&id)),
                ("N N^-1 - 1".into(), nn.mul(&n_inv).sub(&id)),
                (format!("L^{} - 1", 2 * h), pow(&l).sub(&id)),
                (format!("N^{} - 1", 2 * h), pow(&nn).sub(&id)),
            ],
        )
    });
    rep.run("n2.triples.cross", || {
        let left = [("A", &a), ("D", &d), ("L", &l)];
        let right = [("B", &b), ("C", &c), ("N", &nn)];
        let mut ops = Vec::new();
        for (xn, x) in left {
            for (yn, y) in right {
                ops.push((format!("[{xn},{yn}]"), x.commutator(y)));
            }
        }
        first_failure(space, ops)
    });
    let vac = space.vacuum();
    rep.run("n2.BCvac", || {
        if !space.apply_q(B.0, B.1, &vac).is_zero() {
            return Outcome::fail("B|0> != 0");
        }
        if !space.apply_q(C.0, C.1, &vac).is_zero() {
            return Outcome::fail("C|0> != 0");
        }
        let nv = nn.apply(space, &vac);
        Outcome::from_witness((nv != vac.scale(&ctx.int(-1))).then(|| "N|0> != -|0>".into()))
    });

    let kets = verma_vectors(space)?;
    let ket = |m: usize| kets[m].clone();
    rep.run("n2.verma", || {
        for m in 0..h {
            let up = space.apply_q(A.0, A.1, &kets[m]);
            let want_up = if m + 1 < h { ket(m + 1).scale(&qint(ctx, m as i64 + 1)) } else { SVec::new() };
            if up != want_up {
                return Outcome::fail(format!("A|{m}> != [{}]|{}>", m + 1, m + 1));
            }
            let down = space.apply_q(D.0, D.1, &kets[m]);
            let want_down = if m > 0 { ket(m - 1).scale(&qint(ctx, m as i64 + 1)) } else { SVec::new() };
            if down != want_down {
                return Outcome::fail(format!("D|{m}> != [{}]|{}>", m + 1, m as i64 - 1));
            }
            let lv = l.apply(space, &kets[m]).add(&kets[m].scale(&ctx.q_pow(2 * (m as i64 + 1))));
            if !lv.is_zero() {
                return Outcome::fail(format!("(L + q^{}) |{m}> != 0", 2 * (m + 1)));
            }
        }
        Outcome::pass().with_detail(json!({ "vectors": h }))
    });
    rep.run("n2.commutator_eigenvalue", || {
        let ad = a.commutator(&d);
        let ql = space.qnum_of(&l, &l_inv);
        for m in 0..h {
            let want = kets[m].scale(&-qint(ctx, 2 * m as i64 + 2));
            if ad.apply(space, &kets[m]) != want {
                return Outcome::fail(format!("[A,D]|{m}> != -[{}]|{m}>", 2 * m + 2));
            }
            if ql.apply(space, &kets[m]) != want {
                return Outcome::fail(format!("[L]|{m}> != -[{}]|{m}>", 2 * m + 2));
            }
        }
        Outcome::pass()
    });
    rep.run("n2.n_eigenvalue", || {
        for (m, v) in kets.iter().enumerate() {
            if nn.apply(space, v) != v.scale(&ctx.int(-1)) {
                return Outcome::fail(format!("N|{m}> != -|{m}>"));
            }
        }
        Outcome::pass()
    });
    rep.run("n2.weights", || {
        for (m, v) in kets.iter().enumerate() {
            for (&k, _) in v.iter() {
                let (s, t) = space.unkey(k);
                let pl = space.left().basis().states[s].pij(1, 2);
                let pr = space.right().basis().states[t].pij(1, 2);
                if pl != pr {
                    return Outcome::fail(format!("|{m}> has p = {pl}, pbar = {pr} on {}", space.label(k)));
                }
            }
        }
        Outcome::pass()
    });

    let at = in_basis(space, &kets, |v| a.apply(space, v));
    let dt = in_basis(space, &kets, |v| d.apply(space, v));
    let lt = in_basis(space, &kets, |v| l.apply(space, v));
    let lit = in_basis(space, &kets, |v| l_inv.apply(space, v));
    let g = gram(ctx)?;
    let cf = n2_closed_form(ctx)?;
    rep.run("n2.gram", || {
        let (at, dt, lt, lit) = match (&at, &dt, &lt, &lit) {
            (Ok(a), Ok(d), Ok(l), Ok(li)) => (a, d, l, li),
            _ => return Outcome::fail("span{|m>} is not invariant"),
        };
        let w = matrix_diff("A^+ G = G D", &at.adjoint().mul(&g), &g.mul(dt))
            .or_else(|| matrix_diff("L^+ G = G L^-1", &lt.adjoint().mul(&g), &g.mul(lit)));
        if w.is_some() {
            return Outcome::from_witness(w);
        }
        let top = g.get(h - 1, h - 1);
        Outcome::from_witness((!top.is_zero()).then(|| format!("(h-1|h-1) = {top}")))
            .with_detail(json!({ "diagonal": (0..h).map(|m| g.get(m, m).to_string()).collect::<Vec<_>>() }))
    });
    rep.run("n2.oracle", || {
        let (at, dt, lt) = match (&at, &dt, &lt) {
            (Ok(a), Ok(d), Ok(l)) => (a, d, l),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Outcome::fail(e.clone()),
        };
        let w = matrix_diff("A", at, &cf.a)
            .or_else(|| matrix_diff("D", dt, &cf.d))
            .or_else(|| matrix_diff("L", lt, &cf.l));
        if w.is_some() {
            return Outcome::from_witness(w);
        }
        let mine = at.commutator(dt).diagonal_entries();
        let theirs = closed_form_commutator_eigenvalues(ctx).ok();
        let want: Vec<_> = (0..h).map(|m| -qint(ctx, 2 * m as i64 + 2)).collect();
        if mine.as_ref() != Some(&want) || theirs.as_ref() != Some(&want) {
            return Outcome::fail("[A,D] eigenvalues differ between the constructions");
        }
        Outcome::pass().with_detail(json!({ "basis_map": "|m> = A^m/[m]! |0> (x) |0>  ->  e_m" }))
    });
    rep.run("n2.quotient", || {
        let isotropic = (0..h).filter(|&m| g.get(m, m).is_zero()).count();
        let quotient = h - isotropic;
        let out = if isotropic == 1 && quotient == h - 1 {
            Outcome::pass()
        } else {
            Outcome::fail(format!("isotropic dimension {isotropic}"))
        };
        out.with_detail(json!({ "dim_verma": h, "dim_isotropic": isotropic, "quotient": quotient }))
    });
    rep.merge(check_closed_form(ctx)?);
    Ok(rep)
}
