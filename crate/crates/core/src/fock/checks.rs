use rayon::prelude::*;
use serde_json::json;

use super::module::{vacuum_weight, FockModule};
use crate::linalg::SVec;
use crate::qfield::{qint, PCoeff};
use crate::qtensor::eps_sign;
use crate::report::{Outcome, Report};
use crate::zmodes::{det_terms, dq_p, AlgElement, Gen};

fn word_el(m: &FockModule, w: &[(usize, usize)]) -> AlgElement {
    AlgElement::word(m.ctx(), m.chirality(), w.iter().map(|&(i, a)| Gen::new(i, a)).collect())
}

/// First state in `states` on which some element of `els` does not vanish.
fn first_nonvanishing(m: &FockModule, els: &[(String, AlgElement)], states: &[usize]) -> Option<String> {
    states
        .par_iter()
        .find_map_first(|&s| {
            let v = SVec::unit(s, m.ctx());
            els.iter().find_map(|(name, e)| match m.eval_on(e, &v) {
                Ok(r) if r.is_zero() => None,
                Ok(_) => Some(format!("{name} on {}", m.basis().label(s))),
                Err(err) => Some(format!("{name} on {}: {err}", m.basis().label(s))),
            })
        })
}

fn vanishing_outcome(m: &FockModule, els: &[(String, AlgElement)], len: usize) -> Outcome {
    let states = m.basis().determined(len);
    let checked = states.len();
    Outcome::from_witness(first_nonvanishing(m, els, &states))
        .with_detail(json!({ "states_checked": checked, "dimension": m.dim() }))
}

/// The exchange relations with their denominators cleared, as written.
pub fn exchange_elements(m: &FockModule) -> Vec<(String, AlgElement)> {
    let ctx = m.ctx();
    let n = m.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for a in 1..=n {
                for b in 1..=n {
                    if i == j || a == b {
                        continue;
                    }
                    let e = word_el(m, &[(j, b), (i, a)])
                        .mul_coeff_right(&PCoeff::qnum_pij(ctx, n, i, j, -1))
                        .sub(&word_el(m, &[(i, a), (j, b)]).mul_coeff_right(&PCoeff::qnum_pij(ctx, n, i, j, 0)))
                        .unwrap()
                        .add(
                            &word_el(m, &[(i, b), (j, a)])
                                .mul_coeff_right(&PCoeff::q_pij(ctx, n, i, j, eps_sign(a, b) as i32)),
                        )
                        .unwrap();
                    out.push((format!("exchange({i},{j},{a},{b})"), e));
                }
            }
        }
    }
    for a in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                if i < j {
                    let e = word_el(m, &[(j, a), (i, a)]).sub(&word_el(m, &[(i, a), (j, a)])).unwrap();
                    out.push((format!("column({i},{j},{a})"), e));
                }
            }
        }
    }
    for i in 1..=n {
        for a in 1..=n {
            for b in a + 1..=n {
                let e = word_el(m, &[(i, a), (i, b)])
                    .sub(&word_el(m, &[(i, b), (i, a)]).scale(&ctx.q_pow(eps_sign(a, b))))
                    .unwrap();
                out.push((format!("row({i},{a},{b})"), e));
            }
        }
    }
    out
}

/// `det(a) - D_q(p)` as written (no reordering).
pub fn det_minus_dq(m: &FockModule) -> AlgElement {
    let ctx = m.ctx();
    let mut e = AlgElement::zero(ctx, m.chirality());
    for (w, c) in det_terms(ctx).expect("module heights satisfy h > n") {
        e.add_term(w, PCoeff::constant(c, m.n() - 1));
    }
    e.sub(&AlgElement::from_coeff(dq_p(ctx), m.chirality())).unwrap()
}

fn raise(w: &[i64], i: usize) -> Vec<i64> {
    let n = w.len();
    let mut out = w.to_vec();
    out[i - 1] += 1;
    if i == n {
        for x in out.iter_mut() {
            *x -= 1;
        }
    }
    out
}

/// The representation-level identities on a built module.
pub fn check_module(m: &FockModule) -> Report {
    let b = m.basis();
    let n = m.n();
    let h = b.h;
    let mut rep = Report::new("fock build")
        .param("n", n)
        .param("h", h)
        .param("chirality", m.chirality().name())
        .param("max_depth", b.max_depth);
    rep.complete = b.complete;
    rep.run("fock.dimension", || {
        Outcome::info(json!({
            "dimension": m.dim(),
            "complete": b.complete,
            "depth_reached": b.depth_reached,
            "cells_created": b.cells_created,
        }))
    });
    if n == 2 {
        rep.run("fock.dimension.h_squared", || {
            if b.complete && m.dim() == h * h {
                Outcome::pass()
            } else {
                Outcome::fail(format!("dimension {} (complete: {}), expected {}", m.dim(), b.complete, h * h))
            }
        });
    }
    rep.run("fock.vacuum", || {
        let st = &b.states[0];
        if st.weight != vacuum_weight(n) {
            return Outcome::fail(format!("vacuum weight {:?}", st.weight));
        }
        for i in 2..=n {
            for a in 1..=n {
                if !m.gen(i, a).col(0).is_zero() {
                    return Outcome::fail(format!("{} does not annihilate the vacuum", Gen::new(i, a).fmt_in(m.chirality())));
                }
            }
        }
        Outcome::pass()
    });
    rep.run("fock.weights", || {
        let states = b.determined(1);
        for i in 1..=n {
            for a in 1..=n {
                let g = m.gen(i, a);
                for &s in &states {
                    let want = raise(&b.states[s].weight, i);
                    for (&r, _) in g.col(s).iter() {
                        if b.states[r].weight != want {
                            return Outcome::fail(format!(
                                "{} maps {} (weight {:?}) onto {} (weight {:?})",
                                Gen::new(i, a).fmt_in(m.chirality()),
                                b.label(s),
                                b.states[s].weight,
                                b.label(r),
                                b.states[r].weight
                            ));
                        }
                    }
                }
            }
        }
        // q^{p_jl} a^i = q^{delta_ij - delta_il} a^i q^{p_jl} as matrices
        for j in 1..=n {
            for l in 1..=n {
                if j == l {
                    continue;
                }
                let qp = m.q_pij(j, l, 1);
                for i in 1..=n {
                    for a in 1..=n {
                        let k = (i == j) as i64 - (i == l) as i64;
                        let lhs = qp.mul(m.gen(i, a));
                        let rhs = m.gen(i, a).mul(&qp).scale(&m.ctx().q_pow(k));
                        for &s in &states {
                            if lhs.col(s) != rhs.col(s) {
                                return Outcome::fail(format!("q^p{j}{l} against a[{i},{a}] on {}", b.label(s)));
                            }
                        }
                    }
                }
            }
        }
        Outcome::pass().with_detail(json!({ "states_checked": states.len() }))
    });
    rep.run("fock.exchange", || vanishing_outcome(m, &exchange_elements(m), 2));
    rep.run("fock.det", || vanishing_outcome(m, &[("det(a)-D_q(p)".into(), det_minus_dq(m))], n));
    rep.run("fock.nilpotent", || {
        let els: Vec<(String, AlgElement)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |a| (i, a)))
            .map(|(i, a)| (format!("{}^{h}", Gen::new(i, a).fmt_in(m.chirality())), word_el(m, &vec![(i, a); h])))
            .collect();
        vanishing_outcome(m, &els, h)
    });
    rep.run("fock.pij0", || check_pij0(m));
    rep
}

/// On states with `[p_ij] = 0`, `a^i_a a^j_b = a^j_a a^i_b`.
fn check_pij0(m: &FockModule) -> Outcome {
    let b = m.basis();
    let n = m.n();
    let ctx = m.ctx();
    let mut checked = 0;
    for s in b.determined(2) {
        for i in 1..=n {
            for j in 1..=n {
                if i == j || !qint(ctx, b.states[s].pij(i, j)).is_zero() {
                    continue;
                }
                checked += 1;
                let v = SVec::unit(s, ctx);
                for a in 1..=n {
                    for bb in 1..=n {
                        let l = m.apply_word(&[Gen::new(i, a), Gen::new(j, bb)], &v);
                        let r = m.apply_word(&[Gen::new(j, a), Gen::new(i, bb)], &v);
                        if l != r {
                            return Outcome::fail(format!("(i,j,alpha,beta)=({i},{j},{a},{bb}) on {}", b.label(s)));
                        }
                    }
                }
            }
        }
    }
    Outcome::pass().with_detail(json!({ "singular_pairs_checked": checked }))
}
