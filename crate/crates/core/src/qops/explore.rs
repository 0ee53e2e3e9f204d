//! Explorations without a known answer: off-diagonal monomials on the
//! vacuum, the diagonal sector and its annihilated part, and the hopping
//! relations on it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::checks::base_report;
use super::space::QSpace;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Echelon, Insert, SVec};
use crate::qfield::qint;
use crate::report::{Outcome, Report};

fn require_depth(space: &QSpace, len: usize) -> Result<()> {
    if !space.complete() && len > space.depth_reached() {
        return Err(Error::InvalidParams(format!(
            "length {len} exceeds the enumerated module depth {}; raise --max-depth",
            space.depth_reached()
        )));
    }
    Ok(())
}

fn letters(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

fn fmt_monomial(w: &[(usize, usize)]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|(i, j)| format!("Q[{i},{j}]")).collect::<Vec<_>>().join("*")
}

#[derive(Default)]
struct ScanTally {
    by_len: BTreeMap<usize, (u64, u64)>,
    counterexamples: Vec<String>,
    evaluated: u64,
}

impl ScanTally {
    fn record(&mut self, len: usize, count: u64, annihilating: u64) {
        let e = self.by_len.entry(len).or_default();
        e.0 += count;
        e.1 += annihilating;
    }

    fn merge(mut self, other: ScanTally) -> ScanTally {
        for (len, (c, a)) in other.by_len {
            self.record(len, c, a);
        }
        self.counterexamples.extend(other.counterexamples);
        self.evaluated += other.evaluated;
        self
    }
}

const MAX_LISTED: usize = 20;

/// Extends `word` (rightmost letter acts first) on the left, one letter at a
/// time. A vanishing vector stays zero under every extension, so its subtree
/// is counted without evaluation.
fn scan_from(space: &QSpace, word: &mut Vec<(usize, usize)>, v: &SVec, off: bool, max_len: usize, tally: &mut ScanTally) {
    let len = word.len();
    let k = (space.n() * space.n()) as u64;
    let d = space.n() as u64;
    if v.is_zero() {
        for extra in 0..=(max_len - len) as u32 {
            let all = k.pow(extra);
            let with_off = if off { all } else { all - d.pow(extra) };
            if extra > 0 || off {
                tally.record(len + extra as usize, with_off, with_off);
            }
        }
        return;
    }
    if off && len > 0 {
        tally.record(len, 1, 0);
        if tally.counterexamples.len() < MAX_LISTED {
            tally.counterexamples.push(fmt_monomial(word));
        }
    }
    if len == max_len {
        return;
    }
    for (i, j) in letters(space.n()) {
        let w = space.apply_q(i, j, v);
        tally.evaluated += 1;
        word.insert(0, (i, j));
        scan_from(space, word, &w, off || i != j, max_len, tally);
        word.remove(0);
    }
}

/// Applies every monomial of length `1..=max_len` containing an off-diagonal
/// factor to the vacuum.
pub fn conjecture_scan(space: &QSpace, max_len: usize) -> Result<Report> {
    require_depth(space, max_len + 1)?;
    let n = space.n();
    let mut rep = base_report("conjecture", space).param("max_len", max_len);
    let vac = space.vacuum();
    rep.run("conjecture.length1", || {
        for (i, j) in letters(n) {
            if i != j && !space.apply_q(i, j, &vac).is_zero() {
                return Outcome::fail(format!("Q[{i},{j}]|0> != 0"));
            }
        }
        Outcome::pass()
    });
    let tally = letters(n)
        .into_par_iter()
        .map(|(i, j)| {
            let mut t = ScanTally::default();
            if max_len > 0 {
                let mut word = vec![(i, j)];
                let v = space.apply_q(i, j, &vac);
                t.evaluated += 1;
                scan_from(space, &mut word, &v, i != j, max_len, &mut t);
            }
            t
        })
        .reduce(ScanTally::default, ScanTally::merge);
    let mut tally = tally;
    tally.counterexamples.truncate(MAX_LISTED);
    let total: u64 = tally.by_len.values().map(|c| c.0).sum();
    let annihilating: u64 = tally.by_len.values().map(|c| c.1).sum();
    let by_len: Vec<_> = tally
        .by_len
        .iter()
        .map(|(len, (c, a))| json!({ "length": len, "monomials": c, "annihilating": a }))
        .collect();
    let detail = json!({
        "monomials": total,
        "annihilating": annihilating,
        "counterexamples": total - annihilating,
        "by_length": by_len,
        "listed": tally.counterexamples,
        "vectors_evaluated": tally.evaluated,
    });
    rep.run("conjecture.scan", || {
        if n == 2 && total != annihilating {
            Outcome::fail(tally.counterexamples.first().cloned().unwrap_or_default()).with_detail(detail)
        } else if n == 2 {
            Outcome::pass().with_detail(detail)
        } else {
            Outcome::info(detail)
        }
    });
    let sector = build_diag(space, max_len);
    rep.run("conjecture.obstructions", || Outcome::info(obstructions(space, &sector)));
    Ok(rep)
}

/// Weights of diagonal monomial vectors where `[p_ij - 1] v = 0 = [pbar_il - 1] v`
/// for pairwise distinct `i, j, l`.
fn obstructions(space: &QSpace, sector: &DiagSector) -> serde_json::Value {
    let ctx = space.ctx();
    let n = space.n();
    let mut found = Vec::new();
    for (v, word) in sector.vectors.iter().zip(&sector.words) {
        let Some((&k, _)) = v.iter().next() else { continue };
        let (s, t) = space.unkey(k);
        let ls = &space.left().basis().states[s];
        let rs = &space.right().basis().states[t];
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    if i == j || j == l || l == i {
                        continue;
                    }
                    if qint(ctx, ls.pij(i, j) - 1).is_zero() && qint(ctx, rs.pij(i, l) - 1).is_zero() {
                        found.push(json!({
                            "monomial": fmt_monomial(word),
                            "ijl": [i, j, l],
                            "weight": ls.weight,
                            "weight_bar": rs.weight,
                        }));
                    }
                }
            }
        }
    }
    json!({ "diag_vectors_scanned": sector.vectors.len(), "count": found.len(), "vectors": found })
}

/// `F^diag` up to a monomial length, and its part `F'` killed by every
/// off-diagonal `Q^r_s`.
#[derive(Clone, Debug)]
pub struct DiagSector {
    /// Independent diagonal monomial vectors spanning `F^diag`.
    pub vectors: Vec<SVec>,
    /// The monomial producing each vector.
    pub words: Vec<Vec<(usize, usize)>>,
    /// New dimensions contributed by each length.
    pub layer_dims: Vec<usize>,
    /// Closed under the diagonal `Q`s before the length cap.
    pub stabilized: bool,
    /// Basis of `F'`.
    pub f_prime: Vec<SVec>,
}

impl DiagSector {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

fn build_diag(space: &QSpace, max_len: usize) -> DiagSector {
    let n = space.n();
    let ctx = space.ctx();
    let mut ech = Echelon::new(ctx);
    ech.insert(&space.vacuum());
    let mut vectors = vec![space.vacuum()];
    let mut words = vec![Vec::new()];
    let mut frontier = vec![0usize];
    let mut layer_dims = vec![1];
    let mut stabilized = false;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &b in &frontier {
            let images: Vec<SVec> = (1..=n).into_par_iter().map(|i| space.apply_q(i, i, &vectors[b])).collect();
            for (i, w) in (1..=n).zip(images) {
                if let Insert::New { .. } = ech.insert(&w) {
                    let mut word = vec![(i, i)];
                    word.extend(words[b].iter().copied());
                    vectors.push(w);
                    words.push(word);
                    next.push(vectors.len() - 1);
                }
            }
        }
        layer_dims.push(next.len());
        if next.is_empty() {
            stabilized = true;
            break;
        }
        frontier = next;
    }
    let f_prime = annihilated_part(space, &vectors);
    DiagSector { vectors, words, layer_dims, stabilized, f_prime }
}

/// `{ v in span(vectors) : Q^r_s v = 0 for all r != s }` by exact row reduction.
fn annihilated_part(space: &QSpace, vectors: &[SVec]) -> Vec<SVec> {
    let n = space.n();
    let dim = space.dim();
    let off: Vec<(usize, usize)> = letters(n).into_iter().filter(|(r, s)| r != s).collect();
    let stacked: Vec<SVec> = vectors
        .par_iter()
        .map(|v| {
            let mut out = SVec::new();
            for (slot, &(r, s)) in off.iter().enumerate() {
                for (&k, c) in space.apply_q(r, s, v).iter() {
                    out.add_entry(slot * dim + k, c);
                }
            }
            out
        })
        .collect();
    nullspace(space.ctx(), &stacked)
        .into_iter()
        .map(|rel| {
            let mut v = SVec::new();
            for (&k, c) in rel.iter() {
                v.axpy(c, &vectors[k]);
            }
            v
        })
        .collect()
}

/// `F^diag`, `F'` and the weak diagonal exchange relation on `F'`.
pub fn diag_sector(space: &QSpace, max_len: usize) -> Result<(DiagSector, Report)> {
    require_depth(space, max_len + 2)?;
    let n = space.n();
    let h = space.h();
    let ctx = space.ctx();
    let sector = build_diag(space, max_len);
    let mut rep = base_report("diag", space).param("max_len", max_len);
    rep.run("diag.dimension", || {
        Outcome::info(json!({
            "dim_fdiag": sector.dim(),
            "layer_dims": sector.layer_dims,
            "stabilized": sector.stabilized,
            "dim_fprime": sector.f_prime.len(),
            "fprime_equals_fdiag": sector.f_prime.len() == sector.dim(),
        }))
    });
    rep.run("diag.weights", || {
        for (v, w) in sector.vectors.iter().zip(&sector.words) {
            for (&k, _) in v.iter() {
                let (s, t) = space.unkey(k);
                let ls = &space.left().basis().states[s];
                let rs = &space.right().basis().states[t];
                for i in 1..=n {
                    for j in i + 1..=n {
                        if ls.pij(i, j) != rs.pij(i, j) {
                            return Outcome::fail(format!("{}|0> on {}: p_{i}{j} differs from pbar_{i}{j}", fmt_monomial(w), space.label(k)));
                        }
                    }
                }
            }
        }
        Outcome::pass().with_detail(json!({ "vectors": sector.dim() }))
    });
    if n == 2 {
        rep.run("diag.n2_verma", || {
            if sector.dim() == h && sector.f_prime.len() == h {
                Outcome::pass()
            } else if max_len + 1 < h {
                Outcome::info(json!({ "note": "length cap below h - 1; the sector is truncated" }))
            } else {
                Outcome::fail(format!("dim F^diag = {}, dim F' = {}, expected {h}", sector.dim(), sector.f_prime.len()))
            }
        });
    }
    rep.run("diag.qq_diag", || {
        // [p_ij + 1] Q^i_i Q^j_j v = [p_ij - 1] Q^j_j Q^i_i v on F'
        let mut checked = 0;
        for (b, v) in sector.f_prime.iter().enumerate() {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    checked += 1;
                    let ij = space.apply_monomial(&[(i, i), (j, j)], v);
                    let ji = space.apply_monomial(&[(j, j), (i, i)], v);
                    let mut diff = SVec::new();
                    for (&k, c) in ij.iter() {
                        let p = space.left().basis().states[space.unkey(k).0].pij(i, j);
                        diff.add_entry(k, &(c * &qint(ctx, p + 1)));
                    }
                    for (&k, c) in ji.iter() {
                        let p = space.left().basis().states[space.unkey(k).0].pij(i, j);
                        diff.add_entry(k, &-(c * &qint(ctx, p - 1)));
                    }
                    if let Some((k, val)) = diff.first() {
                        return Outcome::fail(format!("F' basis vector {b}, (i,j)=({i},{j}): {} component {val}", space.label(k)));
                    }
                }
            }
        }
        Outcome::pass().with_detail(json!({ "instances": checked }))
    });
    Ok((sector, rep))
}

/// The hopping relations on `F^diag` and on `F'`.
pub fn plactic_compare(space: &QSpace, max_len: usize) -> Result<Report> {
    require_depth(space, max_len + 3)?;
    let n = space.n();
    let sector = build_diag(space, max_len);
    let mut rep = base_report("plactic", space).param("max_len", max_len);
    let adjacent = |i: usize, j: usize| i == j % n + 1 || j == i % n + 1;
    let q = |i: usize| (i, i);
    let mut relations: Vec<(String, Vec<(Vec<(usize, usize)>, i64)>)> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !adjacent(i, j) {
                relations.push((format!("plactic.far({i},{j})"), vec![(vec![q(i), q(j)], 1), (vec![q(j), q(i)], -1)]));
            }
        }
    }
    for j in 1..=n {
        let i = j % n + 1;
        relations.push((
            format!("plactic.hop_a({i},{j})"),
            vec![(vec![q(i), q(j), q(j)], 1), (vec![q(j), q(i), q(j)], -1)],
        ));
        relations.push((
            format!("plactic.hop_b({i},{j})"),
            vec![(vec![q(i), q(i), q(j)], 1), (vec![q(i), q(j), q(i)], -1)],
        ));
    }
    let far_count = relations.iter().filter(|(name, _)| name.starts_with("plactic.far")).count();
    rep.run("plactic.far_relations", || {
        Outcome::info(json!({
            "count": far_count,
            "vacuous": far_count == 0,
            "note": "pairs i != j +- 1 mod n",
        }))
    });
    if n >= 3 {
        relations.push(("plactic.sanity(1,1)".into(), vec![(vec![q(1), q(1)], 1), (vec![q(1), q(1)], -1)]));
    }
    let ctx = space.ctx();
    let violations = |rel: &[(Vec<(usize, usize)>, i64)], vs: &[SVec]| -> usize {
        vs.par_iter()
            .filter(|v| {
                let mut acc = SVec::new();
                for (w, c) in rel {
                    acc.axpy(&ctx.int(*c), &space.apply_monomial(w, v));
                }
                !acc.is_zero()
            })
            .count()
    };
    for (name, rel) in &relations {
        rep.run(name.clone(), || {
            let on_diag = violations(rel, &sector.vectors);
            let on_prime = violations(rel, &sector.f_prime);
            Outcome::info(json!({
                "relation": rel.iter().map(|(w, c)| format!("{}{}", if *c < 0 { "-" } else { "+" }, fmt_monomial(w))).collect::<Vec<_>>().join(" "),
                "fdiag_satisfied": on_diag == 0,
                "fdiag_violations": on_diag,
                "fprime_satisfied": on_prime == 0,
                "fprime_violations": on_prime,
            }))
        });
    }
    rep.run("plactic.sector", || {
        Outcome::info(json!({ "dim_fdiag": sector.dim(), "dim_fprime": sector.f_prime.len(), "stabilized": sector.stabilized }))
    });
    Ok(rep)
}
