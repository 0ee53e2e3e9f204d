use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::element::{AlgElement, Chirality, Gen, RewriteOrder, Word};
use crate::error::{Error, Result};
use crate::qfield::{qfact, qint, CycNum, FieldCtx, PCoeff};
use crate::qtensor::{eps_component, eps_sign, permutations, rhat, rhat_dyn, AlphaChoice, EpsVariant};
use crate::report::{Outcome, Report};

/// Rejects heights for which `[n]! = 0`.
pub fn require_height(ctx: &FieldCtx) -> Result<()> {
    if ctx.h() <= ctx.n() {
        return Err(Error::InvalidParams(format!("h must exceed n (got n={}, h={})", ctx.n(), ctx.h())));
    }
    Ok(())
}

/// The `n!^2` signed words of the determinant before reordering, with their
/// scalar weights `eps_i eps^a / [n]!`.
pub fn det_terms(ctx: &'static FieldCtx) -> Result<Vec<(Word, CycNum)>> {
    require_height(ctx)?;
    let n = ctx.n() as usize;
    let norm = qfact(ctx, n as u32).inv().expect("[n]! is invertible for h > n");
    let perms = permutations(n);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for ip in &perms {
        let si = eps_component(ctx, ip, EpsVariant::Classical);
        for ap in &perms {
            let sa = eps_component(ctx, ap, EpsVariant::Upper);
            let w: Word = ip.iter().zip(ap).map(|(&i, &a)| Gen::new(i, a)).collect();
            out.push((w, &(&si * &sa) * &norm));
        }
    }
    Ok(out)
}

/// `det(a)` (or `det(abar)` with the same normalization), normal-ordered.
pub fn det_a(ctx: &'static FieldCtx, chir: Chirality) -> Result<AlgElement> {
    let mut e = AlgElement::zero(ctx, chir);
    for (w, c) in det_terms(ctx)? {
        e.add_term(w, PCoeff::constant(c, ctx.n() as usize - 1));
    }
    Ok(e.normal_form())
}

/// `D_q(p) = prod_{i<j} [p_ij]`.
pub fn dq_p(ctx: &'static FieldCtx) -> PCoeff {
    PCoeff::dq(ctx, ctx.n() as usize)
}

/// Where the `[p_ij - 1]` factor of the generalized exchange relation stands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenexPlacement {
    /// Left of `(a^j_b)^m a^i_a`, as the relation is printed.
    Left,
    /// Right of the word.
    Right,
}

fn gword(ctx: &'static FieldCtx, chir: Chirality, w: &[(usize, usize)]) -> AlgElement {
    AlgElement::word(ctx, chir, w.iter().map(|&(i, a)| Gen::new(i, a)).collect())
}

/// `[p_ij - 1] (a^j_b)^m a^i_a - a^i_a (a^j_b)^m [p_ij] + [m] (a^j_b)^{m-1} a^i_b a^j_a q^{eps_ab p_ij}`,
/// normal-ordered.
#[allow(clippy::too_many_arguments)]
pub fn genex_residual(
    ctx: &'static FieldCtx,
    chir: Chirality,
    m: usize,
    i: usize,
    j: usize,
    alpha: usize,
    beta: usize,
    placement: GenexPlacement,
) -> AlgElement {
    let n = ctx.n() as usize;
    let mut lw = vec![(j, beta); m];
    lw.push((i, alpha));
    let lword = gword(ctx, chir, &lw);
    let pm1 = PCoeff::qnum_pij(ctx, n, i, j, -1);
    let lhs = match placement {
        GenexPlacement::Left => lword.mul_coeff_left(&pm1),
        GenexPlacement::Right => lword.mul_coeff_right(&pm1),
    };
    let mut r1 = vec![(i, alpha)];
    r1.extend(std::iter::repeat_n((j, beta), m));
    let t1 = gword(ctx, chir, &r1).mul_coeff_right(&PCoeff::qnum_pij(ctx, n, i, j, 0));
    let mut r2 = vec![(j, beta); m - 1];
    r2.push((i, beta));
    r2.push((j, alpha));
    let e = eps_sign(alpha, beta) as i32;
    let t2 = gword(ctx, chir, &r2)
        .mul_coeff_right(&PCoeff::q_pij(ctx, n, i, j, e))
        .scale(&qint(ctx, m as i64));
    lhs.sub(&t1).unwrap().add(&t2).unwrap().normal_form()
}

/// Index choices `(i, j, alpha, beta)` with `i != j`, `alpha != beta`.
pub fn exchange_index_choices(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for a in 1..=n {
                for b in 1..=n {
                    if i != j && a != b {
                        out.push((i, j, a, b));
                    }
                }
            }
        }
    }
    out
}

/// The generalized exchange relation for `m` on every admissible index choice.
pub fn check_genex(ctx: &'static FieldCtx, ms: &[usize], chir: Chirality, placement: GenexPlacement) -> Report {
    let mut rep = Report::new("qcheck relations").param("n", ctx.n()).param("h", ctx.h());
    let n = ctx.n() as usize;
    for &m in ms {
        let name = format!("genex.{}.m={m}", chir.name());
        rep.run(name, || {
            for (i, j, a, b) in exchange_index_choices(n) {
                let r = genex_residual(ctx, chir, m, i, j, a, b, placement);
                if !r.is_zero() {
                    return Outcome::fail(format!("(i,j,alpha,beta)=({i},{j},{a},{b}): residual {r}"));
                }
            }
            Outcome::pass()
        });
    }
    rep
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    (0..len).map(|_| Gen::new(rng.gen_range(1..=n), rng.gen_range(1..=n))).collect()
}

/// Leftmost-first and rightmost-first reduction agree on `w`.
pub fn confluent_on(ctx: &'static FieldCtx, chir: Chirality, w: &Word) -> bool {
    let e = AlgElement::word(ctx, chir, w.clone());
    let l = e.normal_form_with(RewriteOrder::Leftmost);
    let r = e.normal_form_with(RewriteOrder::Rightmost);
    l.sub(&r).unwrap().normal_form().is_zero()
}

/// Seeded random words of lengths 3 and 4, reduced in two rewrite orders.
pub fn check_confluence_samples(ctx: &'static FieldCtx, count: usize, seed: u64) -> Report {
    let n = ctx.n() as usize;
    let mut rep = Report::new("qcheck relations")
        .param("n", n)
        .param("h", ctx.h())
        .param("seed", seed)
        .param("samples", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_len = [count.div_ceil(2), count / 2];
    for (len, k) in [3usize, 4].into_iter().zip(per_len) {
        let words: Vec<Word> = (0..k).map(|_| random_word(&mut rng, n, len)).collect();
        rep.run(format!("confluence.len{len}"), || {
            for w in &words {
                if !confluent_on(ctx, Chirality::Left, w) {
                    let s: Vec<String> = w.iter().map(|g| g.fmt_in(Chirality::Left)).collect();
                    return Outcome::fail(s.join("*"));
                }
            }
            Outcome::pass().with_detail(json!({ "words": words.len() }))
        });
    }
    rep
}

/// `R(p)^{ij}_{i'j'} a^{i'}_a a^{j'}_b - a^i_{a'} a^j_{b'} R^{a'b'}_{ab}` for the
/// left sector, and `R^{ab}_{a'b'} abar^{a'}_i abar^{b'}_j - abar^a_{i'} abar^b_{j'} R(pbar)^{i'j'}_{ij}`
/// for the right one.
pub fn rmatrix_exchange_residual(
    ctx: &'static FieldCtx,
    chir: Chirality,
    choice: AlphaChoice,
    (i, j, a, b): (usize, usize, usize, usize),
) -> AlgElement {
    let n = ctx.n() as usize;
    let rc = rhat(ctx);
    let rd = rhat_dyn(ctx, choice);
    let mut acc = AlgElement::zero(ctx, chir);
    match chir {
        Chirality::Left => {
            for i2 in 1..=n {
                for j2 in 1..=n {
                    let f = rd.entry(i, j, i2, j2);
                    if !f.is_zero() {
                        let t = gword(ctx, chir, &[(i2, a), (j2, b)]).mul_coeff_left(f);
                        acc = acc.add(&t).unwrap();
                    }
                    let c = rc.entry(i2, j2, a, b);
                    if !c.is_zero() {
                        let t = gword(ctx, chir, &[(i, i2), (j, j2)]).scale(c);
                        acc = acc.sub(&t).unwrap();
                    }
                }
            }
        }
        Chirality::Right => {
            // here (i, j) are dynamical and (a, b) quantum-group indices
            for a2 in 1..=n {
                for b2 in 1..=n {
                    let c = rc.entry(a, b, a2, b2);
                    if !c.is_zero() {
                        let t = gword(ctx, chir, &[(i, a2), (j, b2)]).scale(c);
                        acc = acc.add(&t).unwrap();
                    }
                }
            }
            for i2 in 1..=n {
                for j2 in 1..=n {
                    let f = rd.entry(i2, j2, i, j);
                    if !f.is_zero() {
                        let t = gword(ctx, chir, &[(i2, a), (j2, b)]).mul_coeff_right(f);
                        acc = acc.sub(&t).unwrap();
                    }
                }
            }
        }
    }
    acc.normal_form()
}

/// The braid-matrix forms of both sectors against the rewrite rules: unit
/// choice on the left, ratio choice on the right.
pub fn check_rmatrix_equivalence(ctx: &'static FieldCtx) -> Report {
    let n = ctx.n() as usize;
    let mut rep = Report::new("qcheck relations").param("n", n).param("h", ctx.h());
    for (name, chir, choice) in [
        ("exchange_rmatrix.left.unit", Chirality::Left, AlphaChoice::Unit),
        ("exchange_rmatrix.right.ratio", Chirality::Right, AlphaChoice::Ratio),
    ] {
        rep.run(name, || {
            for i in 1..=n {
                for j in 1..=n {
                    for a in 1..=n {
                        for b in 1..=n {
                            let r = rmatrix_exchange_residual(ctx, chir, choice, (i, j, a, b));
                            if !r.is_zero() {
                                return Outcome::fail(format!("({i},{j},{a},{b}): residual {r}"));
                            }
                        }
                    }
                }
            }
            Outcome::pass()
        });
    }
    rep
}
