use serde_json::{json, Value};

use super::enumerate::{gen_index, Enumerator};
use crate::error::{Error, Result};
use crate::linalg::{OpMatrix, SVec};
use crate::qfield::{eval_at_weight, qint, weight_exponents, CycNum, FieldCtx, PCoeff};
use crate::zmodes::{require_height, AlgElement, Chirality, Gen, Word};

/// A basis state: the path word that produced it from the vacuum and its
/// weight. `weight` holds `P_1..P_n` with `p_ij = P_i - P_j`, normalized to
/// `P_n = -n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    pub word: Word,
    pub weight: Vec<i64>,
    pub depth: usize,
}

impl FockState {
    pub fn pij(&self, i: usize, j: usize) -> i64 {
        self.weight[i - 1] - self.weight[j - 1]
    }
}

#[derive(Clone, Debug)]
pub struct FockBasis {
    pub n: usize,
    pub h: usize,
    pub chirality: Chirality,
    pub max_depth: usize,
    /// Images are known for every state of depth below this.
    pub depth_reached: usize,
    /// No live state lacks an image and every relation was imposed everywhere.
    pub complete: bool,
    /// Cells created by the enumeration, live or eliminated.
    pub cells_created: usize,
    pub states: Vec<FockState>,
}

impl FockBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Indices of states on which every word of length `len` acts inside the
    /// enumerated part of the module; all states when the module is complete.
    pub fn determined(&self, len: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&s| self.complete || self.states[s].depth + len <= self.depth_reached).collect()
    }

    pub fn label(&self, s: usize) -> String {
        let w = &self.states[s].word;
        if w.is_empty() {
            return "|0>".into();
        }
        let parts: Vec<String> = w.iter().map(|g| g.fmt_in(self.chirality)).collect();
        format!("{}|0>", parts.join("*"))
    }
}

/// A vacuum module with the matrices of all zero modes.
#[derive(Clone, Debug)]
pub struct FockModule {
    ctx: &'static FieldCtx,
    basis: FockBasis,
    gens: Vec<OpMatrix>,
}

/// Default closure depth `n h`.
pub fn default_depth(n: usize, h: usize) -> usize {
    n * h
}

/// Builds the restricted vacuum module by closing the vacuum under all zero
/// modes modulo the exchange relations, the determinant condition and the
/// nilpotency of every zero mode.
pub fn build_module(ctx: &'static FieldCtx, chir: Chirality, max_depth: Option<usize>) -> Result<FockModule> {
    require_height(ctx)?;
    let n = ctx.n() as usize;
    let h = ctx.h() as usize;
    if n < 2 {
        return Err(Error::InvalidParams(format!("n must be at least 2 (got {n})")));
    }
    let max_depth = max_depth.unwrap_or_else(|| default_depth(n, h));
    if max_depth == 0 {
        // only the vacuum: every zero mode maps it outside the span
        let basis = FockBasis {
            n,
            h,
            chirality: chir,
            max_depth,
            depth_reached: 0,
            complete: false,
            cells_created: 1,
            states: vec![FockState { word: Vec::new(), weight: vacuum_weight(n), depth: 0 }],
        };
        let gens = (0..n * n).map(|_| OpMatrix::zero(ctx, 1, 1)).collect();
        return Ok(FockModule { ctx, basis, gens });
    }
    let e = Enumerator::new(ctx).run(max_depth);
    let dim = e.states.len();
    let states = e
        .states
        .into_iter()
        .map(|(w, weight, depth)| FockState {
            word: w.iter().map(|&g| Gen::new(g / n + 1, g % n + 1)).collect(),
            weight,
            depth,
        })
        .collect();
    let gens = e.columns.into_iter().map(|cols| OpMatrix::from_columns(ctx, dim, cols)).collect();
    let basis = FockBasis {
        n,
        h,
        chirality: chir,
        max_depth,
        depth_reached: e.depth_reached,
        complete: e.complete,
        cells_created: e.cells_created,
        states,
    };
    Ok(FockModule { ctx, basis, gens })
}

pub fn vacuum_weight(n: usize) -> Vec<i64> {
    (1..=n as i64).map(|i| -i).collect()
}

fn fmt_word(w: &[Gen], chir: Chirality) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.fmt_in(chir)).collect::<Vec<_>>().join("*")
}

impl FockModule {
    pub fn ctx(&self) -> &'static FieldCtx {
        self.ctx
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn chirality(&self) -> Chirality {
        self.basis.chirality
    }

    /// Matrix of `a^i_a` (or `abar^a_i`).
    pub fn gen(&self, i: usize, a: usize) -> &OpMatrix {
        &self.gens[gen_index(self.n(), i, a)]
    }

    pub fn gens(&self) -> &[OpMatrix] {
        &self.gens
    }

    pub fn vacuum(&self) -> SVec {
        SVec::unit(0, self.ctx)
    }

    /// `w v`; the rightmost letter acts first.
    pub fn apply_word(&self, w: &[Gen], v: &SVec) -> SVec {
        let mut out = v.clone();
        for g in w.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = self.gen(g.dyn_idx as usize, g.qg as usize).apply(&out);
        }
        out
    }

    pub fn word_matrix(&self, w: &[Gen]) -> OpMatrix {
        let cols = (0..self.dim()).map(|s| self.apply_word(w, &SVec::unit(s, self.ctx))).collect();
        OpMatrix::from_columns(self.ctx, self.dim(), cols)
    }

    /// Diagonal matrix of `q^{k p_ij}`.
    pub fn q_pij(&self, i: usize, j: usize, k: i64) -> OpMatrix {
        let d = self.basis.states.iter().map(|s| self.ctx.q_pow(k * s.pij(i, j))).collect();
        OpMatrix::diagonal(self.ctx, d)
    }

    /// Diagonal matrix of `[p_ij + s]`.
    pub fn qnum_pij(&self, i: usize, j: usize, s: i64) -> OpMatrix {
        let d = self.basis.states.iter().map(|st| qint(self.ctx, st.pij(i, j) + s)).collect();
        OpMatrix::diagonal(self.ctx, d)
    }

    /// `e v`, with `e` taken as written: each coefficient acts on `v` before its
    /// word. Normal ordering is not applied because it introduces
    /// denominators that vanish on states (already on the vacuum), so a pole
    /// that survives exact cancellation is reported.
    pub fn eval_on(&self, e: &AlgElement, v: &SVec) -> Result<SVec> {
        if e.chirality() != self.chirality() {
            return Err(Error::ChiralityMix);
        }
        let mut out = SVec::new();
        for (w, f) in e.terms() {
            let mut fv = SVec::new();
            for (&s, c) in v.iter() {
                let weight = &self.basis.states[s].weight;
                let val = eval_at_weight(f, weight)
                    .or_else(|| f.eval_z_resolving(&weight_exponents(self.ctx, weight)))
                    .ok_or_else(|| Error::PoleObstruction {
                        word: fmt_word(w, self.chirality()),
                        weight: weight.clone(),
                    })?;
                fv.add_entry(s, &(c * &val));
            }
            out = out.add(&self.apply_word(w, &fv));
        }
        Ok(out)
    }

    /// Matrix of `e` on the whole basis.
    pub fn eval_operator(&self, e: &AlgElement) -> Result<OpMatrix> {
        let cols = (0..self.dim())
            .map(|s| self.eval_on(e, &SVec::unit(s, self.ctx)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OpMatrix::from_columns(self.ctx, self.dim(), cols))
    }

    /// Diagonal of a weight coefficient; `None` where it has a pole.
    pub fn weight_values(&self, f: &PCoeff) -> Vec<Option<CycNum>> {
        self.basis.states.iter().map(|s| eval_at_weight(f, &s.weight)).collect()
    }

    pub fn to_json(&self) -> Value {
        let chir = self.chirality();
        let states: Vec<Value> = self
            .basis
            .states
            .iter()
            .map(|s| {
                let letters: Vec<[u8; 2]> = s.word.iter().map(|g| [g.dyn_idx, g.qg]).collect();
                json!({
                    "word": fmt_word(&s.word, chir),
                    "letters": letters,
                    "weight": s.weight,
                    "depth": s.depth,
                })
            })
            .collect();
        let n = self.n();
        let mut gens = Vec::new();
        for i in 1..=n {
            for a in 1..=n {
                let trip: Vec<Value> = self
                    .gen(i, a)
                    .triplets()
                    .into_iter()
                    .map(|(r, c, x)| json!([r, c, x.to_string()]))
                    .collect();
                gens.push(json!({ "gen": Gen::new(i, a).fmt_in(chir), "dyn": i, "qg": a, "triplets": trip }));
            }
        }
        json!({
            "n": n,
            "h": self.basis.h,
            "chirality": chir.name(),
            "max_depth": self.basis.max_depth,
            "depth_reached": self.basis.depth_reached,
            "complete": self.basis.complete,
            "cells_created": self.basis.cells_created,
            "dimension": self.dim(),
            "states": states,
            "generators": gens,
        })
    }

    pub fn from_json(v: &Value) -> Result<FockModule> {
        let bad = |what: &str| Error::Domain(format!("basis file: missing or malformed `{what}`"));
        let geti = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(|| bad(k));
        let n = geti("n")? as usize;
        let h = geti("h")? as usize;
        let ctx = FieldCtx::get(n as u32, h as u32);
        let chirality: Chirality = v
            .get("chirality")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("chirality"))?
            .parse()?;
        let mut states = Vec::new();
        for s in v.get("states").and_then(Value::as_array).ok_or_else(|| bad("states"))? {
            let letters = s.get("letters").and_then(Value::as_array).ok_or_else(|| bad("letters"))?;
            let mut word = Vec::new();
            for l in letters {
                let pair = l.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("letters"))?;
                let i = pair[0].as_u64().ok_or_else(|| bad("letters"))? as usize;
                let a = pair[1].as_u64().ok_or_else(|| bad("letters"))? as usize;
                word.push(Gen::new(i, a));
            }
            let weight = s
                .get("weight")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("weight"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("weight")))
                .collect::<Result<Vec<_>>>()?;
            let depth = s.get("depth").and_then(Value::as_u64).ok_or_else(|| bad("depth"))? as usize;
            states.push(FockState { word, weight, depth });
        }
        let dim = states.len();
        let mut gens = vec![OpMatrix::zero(ctx, dim, dim); n * n];
        for g in v.get("generators").and_then(Value::as_array).ok_or_else(|| bad("generators"))? {
            let i = g.get("dyn").and_then(Value::as_u64).ok_or_else(|| bad("dyn"))? as usize;
            let a = g.get("qg").and_then(Value::as_u64).ok_or_else(|| bad("qg"))? as usize;
            if !(1..=n).contains(&i) || !(1..=n).contains(&a) {
                return Err(bad("generators"));
            }
            let mut cols = vec![SVec::new(); dim];
            for t in g.get("triplets").and_then(Value::as_array).ok_or_else(|| bad("triplets"))? {
                let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("triplets"))?;
                let r = t[0].as_u64().ok_or_else(|| bad("triplets"))? as usize;
                let c = t[1].as_u64().ok_or_else(|| bad("triplets"))? as usize;
                let x = CycNum::parse(ctx, t[2].as_str().ok_or_else(|| bad("triplets"))?)?;
                if r >= dim || c >= dim {
                    return Err(bad("triplets"));
                }
                cols[c].add_entry(r, &x);
            }
            gens[gen_index(n, i, a)] = OpMatrix::from_columns(ctx, dim, cols);
        }
        let basis = FockBasis {
            n,
            h,
            chirality,
            max_depth: geti("max_depth")? as usize,
            depth_reached: geti("depth_reached")? as usize,
            complete: v.get("complete").and_then(Value::as_bool).ok_or_else(|| bad("complete"))?,
            cells_created: v.get("cells_created").and_then(Value::as_u64).unwrap_or(0) as usize,
            states,
        };
        Ok(FockModule { ctx, basis, gens })
    }
}
