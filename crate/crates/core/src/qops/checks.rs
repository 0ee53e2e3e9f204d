//! Nilpotency of `Q^i_j` and the exchange relations among its entries, as
//! exact operator identities on the enumerated product states.

use rayon::prelude::*;
use serde_json::json;

use super::space::{describe_entry, QSpace, Region, TensorOp, WordCache};
use crate::error::{Error, Result};
use crate::fock::FockModule;
use crate::linalg::OpMatrix;
use crate::qfield::{eval_at_weight, qplus_pascal, weight_exponents, CycNum, PCoeff};
use crate::qtensor::{eps_sign, rhat_dyn, AlphaChoice};
use crate::report::{Outcome, Report};

pub(crate) fn base_report(cmd: &str, space: &QSpace) -> Report {
    let mut rep = Report::new(cmd)
        .param("n", space.n())
        .param("h", space.h())
        .param("max_depth", space.left().basis().max_depth)
        .param("depth_reached", space.depth_reached());
    rep.complete = space.complete();
    rep
}

/// Runs `build` for every item and reports the first nonvanishing operator.
fn vanishing<T, F>(space: &QSpace, region: &Region, items: &[T], label: impl Fn(&T) -> String + Sync, build: F) -> Outcome
where
    T: Sync,
    F: Fn(&mut WordCache, &T) -> TensorOp + Sync,
{
    let witness = items.par_iter().find_map_first(|it| {
        let mut wc = space.words(region);
        let op = build(&mut wc, it);
        op.nonzero_entry().map(|e| format!("{}: {}", label(it), describe_entry(space, &e)))
    });
    Outcome::from_witness(witness).with_detail(json!({
        "instances": items.len(),
        "product_states": region.size(),
    }))
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

/// `sum` over all words of length `m` in the components `alphas` of `Q^i_j`.
fn sum_power(wc: &mut WordCache, (i, j): (usize, usize), alphas: &[usize], m: usize) -> TensorOp {
    let k = alphas.len();
    let mut out = TensorOp::default();
    if k == 0 {
        return out;
    }
    for code in 0..k.pow(m as u32) {
        let mut c = code;
        let comps: Vec<(usize, usize, usize)> = (0..m)
            .map(|_| {
                let a = alphas[c % k];
                c /= k;
                (i, j, a)
            })
            .collect();
        out = out.add(&wc.component(&comps));
    }
    out
}

/// Compositions of `m` into `parts` nonnegative parts.
fn compositions(m: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![m]];
    }
    (0..=m)
        .flat_map(|first| {
            compositions(m - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `(Q^i_j)^h = 0`, the component relations and the q-binomial expansions.
pub fn check_nilpotency(space: &QSpace) -> Report {
    let n = space.n();
    let h = space.h();
    let ctx = space.ctx();
    let mut rep = base_report("qcheck nilpotency", space);
    let all = pairs(n);
    let reg_h = space.region(h);
    for &(i, j) in &all {
        rep.run(format!("nilpotency.Q{i}{j}"), || {
            vanishing(space, &reg_h, &[(i, j)], |_| format!("(Q^{i}_{j})^{h}"), |wc, &(i, j)| {
                wc.monomial(&vec![(i, j); h])
            })
        });
    }
    let comps: Vec<(usize, usize, usize)> =
        all.iter().flat_map(|&(i, j)| (1..=n).map(move |a| (i, j, a))).collect();
    rep.run("nilpotency.Qhn.power", || {
        vanishing(space, &reg_h, &comps, |&(i, j, a)| format!("(i,j,alpha)=({i},{j},{a})"), |wc, &c| {
            wc.component(&vec![c; h])
        })
    });
    let reg2 = space.region(2);
    let comm: Vec<(usize, usize, usize, usize)> = all
        .iter()
        .flat_map(|&(i, j)| (1..=n).flat_map(move |a| (1..=n).filter(move |&b| b != a).map(move |b| (i, j, a, b))))
        .collect();
    rep.run("nilpotency.Qhn.commute", || {
        vanishing(space, &reg2, &comm, |&(i, j, a, b)| format!("(i,j,alpha,beta)=({i},{j},{a},{b})"), |wc, &(i, j, a, b)| {
            let ab = wc.component(&[(i, j, a), (i, j, b)]);
            let ba = wc.component(&[(i, j, b), (i, j, a)]);
            ab.sub(&ba.scale(&ctx.q_pow(2 * eps_sign(a, b))))
        })
    });
    let partial: Vec<(usize, usize, usize)> =
        all.iter().flat_map(|&(i, j)| (2..=n).map(move |a| (i, j, a))).collect();
    rep.run("nilpotency.Qrh1", || {
        vanishing(space, &reg2, &partial, |&(i, j, a)| format!("(i,j,alpha)=({i},{j},{a})"), |wc, &(i, j, a)| {
            let mut out = TensorOp::default();
            for b in 1..a {
                out = out.add(&wc.component(&[(i, j, a), (i, j, b)]));
                out = out.sub(&wc.component(&[(i, j, b), (i, j, a)]).scale(&ctx.q_pow(2)));
            }
            out
        })
    });
    rep.run("nilpotency.Qrh", || {
        vanishing(space, &reg_h, &comps, |&(i, j, a)| format!("(i,j,alpha)=({i},{j},{a})"), |wc, &(i, j, a)| {
            let upto: Vec<usize> = (1..=a).collect();
            sum_power(wc, (i, j), &upto, h).sub(&sum_power(wc, (i, j), &upto[..a - 1], h))
        })
    });
    let mut ms = vec![2, 3, h];
    ms.dedup();
    for m in ms {
        let reg = space.region(m);
        let pascal = qplus_pascal(ctx, m as u32);
        rep.run(format!("nilpotency.qbin.m={m}"), || {
            vanishing(space, &reg, &all, |&(i, j)| format!("(i,j)=({i},{j})"), |wc, &(i, j)| {
                let mut out = sum_power(wc, (i, j), &[1, 2], m);
                for r in 0..=m {
                    let mut w = vec![(i, j, 1); r];
                    w.extend(std::iter::repeat_n((i, j, 2), m - r));
                    out = out.sub(&wc.component(&w).scale(&pascal[m][r]));
                }
                out
            })
        });
    }
    // multinomial expansion in increasing component order; at m = h only the
    // pure powers survive
    let pascal = qplus_pascal(ctx, h as u32);
    for m in 2..=h {
        let reg = space.region(m);
        let alphas: Vec<usize> = (1..=n).collect();
        let comps_m = compositions(m, n);
        rep.run(format!("nilpotency.multinomial.m={m}"), || {
            vanishing(space, &reg, &all, |&(i, j)| format!("(i,j)=({i},{j})"), |wc, &(i, j)| {
                let mut out = sum_power(wc, (i, j), &alphas, m);
                for k in &comps_m {
                    let mut left = m;
                    let mut coeff = ctx.one();
                    let mut w = Vec::with_capacity(m);
                    for (a, &ka) in k.iter().enumerate() {
                        coeff = &coeff * &pascal[left][ka];
                        left -= ka;
                        w.extend(std::iter::repeat_n((i, j, a + 1), ka));
                    }
                    if !coeff.is_zero() {
                        out = out.sub(&wc.component(&w).scale(&coeff));
                    }
                }
                out
            })
        });
    }
    rep
}

/// Row and column commutators and the cleared forms used to derive them.
pub fn check_lemma1(space: &QSpace) -> Report {
    let n = space.n();
    let mut rep = base_report("qcheck lemma1", space);
    let reg = space.region(2);
    // (i, j, l) with j < l: column [Q^j_i, Q^l_i] and row [Q^i_j, Q^i_l]
    let mut cols = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for l in j + 1..=n {
                cols.push((i, j, l));
            }
        }
    }
    rep.run("lemma1.column", || {
        vanishing(space, &reg, &cols, |&(i, j, l)| format!("[Q^{j}_{i}, Q^{l}_{i}]"), |wc, &(i, j, l)| {
            wc.monomial(&[(j, i), (l, i)]).sub(&wc.monomial(&[(l, i), (j, i)]))
        })
    });
    rep.run("lemma1.row", || {
        vanishing(space, &reg, &cols, |&(i, j, l)| format!("[Q^{i}_{j}, Q^{i}_{l}]"), |wc, &(i, j, l)| {
            wc.monomial(&[(i, j), (i, l)]).sub(&wc.monomial(&[(i, l), (i, j)]))
        })
    });
    let ordered: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).flat_map(move |j| (1..=n).filter(move |&l| l != j).map(move |l| (i, j, l))))
        .collect();
    rep.run("lemma1.cleared", || {
        vanishing(space, &reg, &ordered, |&(i, j, l)| format!("[p_{l}{j} - 1][Q^{j}_{i}, Q^{l}_{i}]"), |wc, &(i, j, l)| {
            let c = wc.monomial(&[(j, i), (l, i)]).sub(&wc.monomial(&[(l, i), (j, i)]));
            space.brackets(Some((l, j, -1)), None).mul(&c)
        })
    });
    rep.run("lemma1.ij_exch", || {
        vanishing(space, &reg, &ordered, |&(i, j, l)| format!("(i,j,l)=({i},{j},{l})"), |wc, &(i, j, l)| {
            let jl = wc.monomial(&[(j, i), (l, i)]).sub(&wc.monomial(&[(l, i), (j, i)]));
            let lj = jl.scale(&-space.ctx().one());
            let a = space.brackets(Some((j, l, -1)), None).mul(&lj);
            let b = space.brackets(Some((l, j, 1)), None).mul(&jl);
            a.sub(&b)
        })
    });
    rep.run("lemma1.degenerate", || {
        let diag: Vec<(usize, usize)> = pairs(n);
        vanishing(space, &reg, &diag, |&(i, j)| format!("[Q^{i}_{j}, Q^{i}_{j}]"), |wc, &(i, j)| {
            wc.monomial(&[(i, j), (i, j)]).sub(&wc.monomial(&[(i, j), (i, j)]))
        })
    });
    rep
}

/// Diagonal matrix of a weight coefficient, resolving removable poles.
fn coeff_diag(m: &FockModule, f: &PCoeff) -> Result<OpMatrix> {
    let ctx = m.ctx();
    let d = m
        .basis()
        .states
        .iter()
        .map(|s| {
            eval_at_weight(f, &s.weight)
                .or_else(|| f.eval_z_resolving(&weight_exponents(ctx, &s.weight)))
                .ok_or_else(|| Error::PoleObstruction { word: f.to_string(), weight: s.weight.clone() })
        })
        .collect::<Result<Vec<CycNum>>>()?;
    Ok(OpMatrix::diagonal(ctx, d))
}

/// The dynamical exchange identity for entries in different rows and columns,
/// its specializations and its braid-matrix form.
pub fn check_lemma2(space: &QSpace) -> Result<Report> {
    let n = space.n();
    let ctx = space.ctx();
    let mut rep = base_report("qcheck lemma2", space);
    let reg = space.region(2);
    let full = space.region(0);
    let quads: Vec<(usize, usize, usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .flat_map(|(i, j)| (1..=n).flat_map(move |l| (1..=n).filter(move |&m| m != l).map(move |m| (i, j, l, m))))
        .collect();
    let ids: Vec<((usize, usize, usize, usize), i64, usize)> = quads
        .iter()
        .flat_map(|&q| [1i64, -1].into_iter().flat_map(move |s| (0..3).map(move |k| (q, s, k))))
        .collect();
    rep.run("lemma2.ids", || {
        // the bracket identities as two-sided weight operators
        vanishing(
            space,
            &full,
            &ids,
            |&((i, j, l, m), s, k)| format!("identity {k}, sign {s}, (i,j,l,m)=({i},{j},{l},{m})"),
            |_, &((i, j, l, m), s, k)| {
                let sc = ctx.int(s);
                match k {
                    0 => space
                        .brackets(Some((i, j, s)), Some((l, m, 0)))
                        .sub(&space.brackets(Some((i, j, 0)), Some((l, m, s))))
                        .add(&space.bracket_mixed((i, j), -1, (l, m)).scale(&sc)),
                    1 => space
                        .brackets(Some((i, j, s)), Some((l, m, 0)))
                        .sub(&space.brackets(Some((i, j, 0)), Some((l, m, -s))))
                        .sub(&space.bracket_mixed((i, j), 1, (l, m)).scale(&sc)),
                    _ => TensorOp::single(space.left().qnum_pij(i, j, 0), space.right().q_pij(l, m, s))
                        .sub(&TensorOp::single(space.left().q_pij(i, j, s), space.right().qnum_pij(l, m, 0)))
                        .sub(&space.bracket_mixed((i, j), -1, (l, m))),
                }
            },
        )
    });
    rep.run("lemma2.QQijlm", || {
        vanishing(space, &reg, &quads, |&(i, j, l, m)| format!("(i,j,l,m)=({i},{j},{l},{m})"), |wc, &(i, j, l, m)| {
            let lhs = space.bracket_mixed((i, j), -1, (l, m)).mul(&wc.monomial(&[(i, l), (j, m)]));
            let r1 = space.brackets(Some((i, j, -1)), Some((l, m, 0))).mul(&wc.monomial(&[(j, l), (i, m)]));
            let r2 = space.brackets(Some((i, j, 0)), Some((l, m, -1))).mul(&wc.monomial(&[(i, m), (j, l)]));
            lhs.sub(&r1).add(&r2)
        })
    });
    let offdiag: Vec<(usize, usize)> = pairs(n).into_iter().filter(|(i, j)| i != j).collect();
    let same: Vec<(usize, usize, bool)> = offdiag.iter().flat_map(|&(i, j)| [(i, j, false), (i, j, true)]).collect();
    rep.run("lemma2.same", || {
        vanishing(
            space,
            &reg,
            &same,
            |&(i, j, row)| if row { format!("[Q^{i}_{j}, Q^{i}_{i}]") } else { format!("[Q^{j}_{i}, Q^{i}_{i}]") },
            |wc, &(i, j, row)| {
                let x = if row { (i, j) } else { (j, i) };
                wc.monomial(&[x, (i, i)]).sub(&wc.monomial(&[(i, i), x]))
            },
        )
    });
    if n >= 3 {
        let triples: Vec<(usize, usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).flat_map(move |j| (1..=n).map(move |l| (i, j, l))))
            .filter(|&(i, j, l)| i != j && j != l && l != i)
            .collect();
        for line in [1, 2] {
            rep.run(format!("lemma2.no1.line{line}"), || {
                vanishing(space, &reg, &triples, |&(i, j, l)| format!("(i,j,l)=({i},{j},{l})"), |wc, &(i, j, l)| {
                    let (a, b, last) =
                        if line == 1 { ((-1, 0), (0, 1), [(i, l), (j, i)]) } else { ((0, -1), (1, 0), [(j, i), (i, l)]) };
                    let lhs = space.brackets(Some((i, j, a.0)), Some((i, l, a.1))).mul(&wc.monomial(&[(j, l), (i, i)]));
                    let r1 = space.brackets(Some((i, j, b.0)), Some((i, l, b.1))).mul(&wc.monomial(&[(i, i), (j, l)]));
                    let r2 = space.bracket_mixed((i, j), 1, (i, l)).mul(&wc.monomial(&last));
                    lhs.sub(&r1).add(&r2)
                })
            });
        }
    }
    for line in [1, 2] {
        rep.run(format!("lemma2.no2.line{line}"), || {
            vanishing(space, &reg, &offdiag, |&(i, j)| format!("(i,j)=({i},{j})"), |wc, &(i, j)| {
                let (a, b, last) = if line == 1 { ((0, 1), (-1, 0), [(i, j), (j, i)]) } else { ((1, 0), (0, -1), [(j, i), (i, j)]) };
                let t1 = space.brackets(Some((i, j, a.0)), Some((i, j, a.1))).mul(&wc.monomial(&[(i, i), (j, j)]));
                let t2 = space.brackets(Some((i, j, b.0)), Some((i, j, b.1))).mul(&wc.monomial(&[(j, j), (i, i)]));
                let r = space.bracket_mixed((i, j), 1, (i, j)).mul(&wc.monomial(&last));
                t1.sub(&t2).sub(&r)
            })
        });
    }
    let rqq = rqq_operands(space)?;
    let all4: Vec<(usize, usize, usize, usize)> = pairs(n)
        .into_iter()
        .flat_map(|(i, j)| pairs(n).into_iter().map(move |(l, m)| (i, j, l, m)))
        .collect();
    rep.run("lemma2.RQQ", || {
        vanishing(space, &reg, &all4, |&(i, j, l, m)| format!("(i,j,l,m)=({i},{j},{l},{m})"), |wc, &(i, j, l, m)| {
            let idl = space.identity_left();
            let idr = space.identity_right();
            let cl = rqq.clear_left(i, j);
            let cr = rqq.clear_right(l, m);
            let mut out = TensorOp::default();
            for i2 in 1..=n {
                for j2 in 1..=n {
                    if let Some(r) = rqq.left(i, j, i2, j2) {
                        let w = TensorOp::single(r.clone(), cr.clone());
                        out = out.add(&w.mul(&wc.monomial(&[(i2, l), (j2, m)])));
                    }
                }
            }
            for l2 in 1..=n {
                for m2 in 1..=n {
                    if let Some(r) = rqq.right(l2, m2, l, m) {
                        let pre = TensorOp::single(cl.clone(), idr.clone());
                        let post = TensorOp::single(idl.clone(), r.clone());
                        out = out.sub(&pre.mul(&wc.monomial(&[(i, l2), (j, m2)])).mul(&post));
                    }
                }
            }
            out
        })
    });
    Ok(rep)
}

/// Denominator-cleared braid matrices on both factors: `[p_ij] R(p)` with the
/// unit choice on the left, `Rbar(pbar) [pbar_lm]` with the ratio choice on
/// the right (the factor is 1 on the diagonal `i = j`).
struct RqqOperands {
    n: usize,
    left: Vec<Option<OpMatrix>>,
    right: Vec<Option<OpMatrix>>,
    clear_l: Vec<OpMatrix>,
    clear_r: Vec<OpMatrix>,
}

impl RqqOperands {
    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let n = self.n;
        (((a - 1) * n + b - 1) * n + c - 1) * n + d - 1
    }

    fn left(&self, i: usize, j: usize, i2: usize, j2: usize) -> Option<&OpMatrix> {
        self.left[self.idx(i, j, i2, j2)].as_ref()
    }

    fn right(&self, l2: usize, m2: usize, l: usize, m: usize) -> Option<&OpMatrix> {
        self.right[self.idx(l2, m2, l, m)].as_ref()
    }

    fn clear_left(&self, i: usize, j: usize) -> &OpMatrix {
        &self.clear_l[(i - 1) * self.n + j - 1]
    }

    fn clear_right(&self, l: usize, m: usize) -> &OpMatrix {
        &self.clear_r[(l - 1) * self.n + m - 1]
    }
}

fn rqq_operands(space: &QSpace) -> Result<RqqOperands> {
    let ctx = space.ctx();
    let n = space.n();
    let unit = rhat_dyn(ctx, AlphaChoice::Unit);
    let ratio = rhat_dyn(ctx, AlphaChoice::Ratio);
    let nv = n - 1;
    let clear = |i: usize, j: usize| {
        if i == j {
            PCoeff::one(ctx, nv)
        } else {
            PCoeff::qnum_pij(ctx, n, i, j, 0)
        }
    };
    let mut clear_l = Vec::new();
    let mut clear_r = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            clear_l.push(coeff_diag(space.left(), &clear(i, j))?);
            clear_r.push(coeff_diag(space.right(), &clear(i, j))?);
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in 1..=n {
                    // left: [p_ab] R^{ab}_{cd}(p); right: Rbar^{ab}_{cd}(pbar) [pbar_cd]
                    let f = unit.entry(a, b, c, d);
                    left.push(if f.is_zero() {
                        None
                    } else {
                        Some(coeff_diag(space.left(), &clear(a, b).mul(f).reduced())?)
                    });
                    let g = ratio.entry(a, b, c, d);
                    right.push(if g.is_zero() {
                        None
                    } else {
                        Some(coeff_diag(space.right(), &g.mul(&clear(c, d)).reduced())?)
                    });
                }
            }
        }
    }
    Ok(RqqOperands { n, left, right, clear_l, clear_r })
}
