//! Vector enumeration of the restricted vacuum module: cells are paths from the
//! vacuum, imposed relations turn into linear coincidences between cells, and
//! the newest cell of each coincidence is eliminated.

use std::collections::HashMap;

use crate::linalg::SVec;
use crate::qfield::{qfact, qint, CycNum, FieldCtx};
use crate::qtensor::{eps_component, eps_sign, permutations, EpsVariant};

/// Relations imposed on every state, all free of denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    /// `a^j_b a^i_a [p_ij - 1] - a^i_a a^j_b [p_ij] + a^i_b a^j_a q^{eps_ab p_ij}`, `i != j`, `a != b`.
    Exchange { i: usize, j: usize, a: usize, b: usize },
    /// `a^j_a a^i_a - a^i_a a^j_a`, `i < j`.
    Column { i: usize, j: usize, a: usize },
    /// `a^i_a a^i_b - q^{-1} a^i_b a^i_a`, `a < b`.
    Row { i: usize, a: usize, b: usize },
    /// `det(a) - D_q(p)`.
    Det,
    /// `(a^i_a)^h`.
    Nil { g: usize },
}

#[derive(Clone, Debug)]
struct Cell {
    weight: Vec<i64>,
    depth: usize,
    /// Generator indices in written order; the last one acts first.
    word: Vec<usize>,
    /// `Some` once the cell has been eliminated.
    subst: Option<SVec>,
    img: Vec<Option<SVec>>,
    pushed: Vec<bool>,
}

/// Outcome of an enumeration run.
#[derive(Clone, Debug)]
pub(crate) struct Enumerated {
    pub states: Vec<(Vec<usize>, Vec<i64>, usize)>,
    /// Per generator, columns over `states`.
    pub columns: Vec<Vec<SVec>>,
    pub complete: bool,
    pub depth_reached: usize,
    pub cells_created: usize,
}

pub(crate) struct Enumerator {
    ctx: &'static FieldCtx,
    n: usize,
    h: usize,
    cells: Vec<Cell>,
    rels: Vec<Rel>,
    det_words: Vec<(Vec<usize>, CycNum)>,
    deductions: Vec<(SVec, usize, SVec)>,
    qnums: HashMap<i64, CycNum>,
}

/// Generator index of `a^i_a` (1-based labels).
pub(crate) fn gen_index(n: usize, i: usize, a: usize) -> usize {
    (i - 1) * n + (a - 1)
}

impl Enumerator {
    pub(crate) fn new(ctx: &'static FieldCtx) -> Self {
        let n = ctx.n() as usize;
        let h = ctx.h() as usize;
        let mut rels = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for a in 1..=n {
                    for b in 1..=n {
                        if i != j && a != b {
                            rels.push(Rel::Exchange { i, j, a, b });
                        }
                    }
                }
            }
        }
        for a in 1..=n {
            for i in 1..=n {
                for j in i + 1..=n {
                    rels.push(Rel::Column { i, j, a });
                }
            }
        }
        for i in 1..=n {
            for a in 1..=n {
                for b in a + 1..=n {
                    rels.push(Rel::Row { i, a, b });
                }
            }
        }
        rels.push(Rel::Det);
        for g in 0..n * n {
            rels.push(Rel::Nil { g });
        }
        let norm = qfact(ctx, n as u32).inv().expect("[n]! is invertible for h > n");
        let perms = permutations(n);
        let mut det_words = Vec::new();
        for ip in &perms {
            let si = eps_component(ctx, ip, EpsVariant::Classical);
            for ap in &perms {
                let sa = eps_component(ctx, ap, EpsVariant::Upper);
                let w: Vec<usize> = ip.iter().zip(ap).rev().map(|(&i, &a)| gen_index(n, i, a)).collect();
                det_words.push((w, &(&si * &sa) * &norm));
            }
        }
        let mut e = Enumerator {
            ctx,
            n,
            h,
            cells: Vec::new(),
            rels,
            det_words,
            deductions: Vec::new(),
            qnums: HashMap::new(),
        };
        let vacuum: Vec<i64> = (1..=n as i64).map(|i| -i).collect();
        e.new_cell(vacuum, 0, Vec::new());
        e
    }

    fn new_cell(&mut self, weight: Vec<i64>, depth: usize, word: Vec<usize>) -> usize {
        let k = self.cells.len();
        self.cells.push(Cell {
            weight,
            depth,
            word,
            subst: None,
            img: vec![None; self.n * self.n],
            pushed: vec![false; self.rels.len()],
        });
        k
    }

    fn alive(&self, k: usize) -> bool {
        self.cells[k].subst.is_none()
    }

    fn qnum(&mut self, m: i64) -> CycNum {
        let ctx = self.ctx;
        self.qnums.entry(m).or_insert_with(|| qint(ctx, m)).clone()
    }

    fn rel_len(&self, r: Rel) -> usize {
        match r {
            Rel::Exchange { .. } | Rel::Column { .. } | Rel::Row { .. } => 2,
            Rel::Det => self.n,
            Rel::Nil { .. } => self.h,
        }
    }

    /// The relation at a state of weight `w`, as words in application order.
    fn instantiate(&mut self, r: Rel, w: &[i64]) -> Vec<(Vec<usize>, CycNum)> {
        let n = self.n;
        let ctx = self.ctx;
        let g = |i, a| gen_index(n, i, a);
        match r {
            Rel::Exchange { i, j, a, b } => {
                let p = w[i - 1] - w[j - 1];
                vec![
                    (vec![g(i, a), g(j, b)], self.qnum(p - 1)),
                    (vec![g(j, b), g(i, a)], -self.qnum(p)),
                    (vec![g(j, a), g(i, b)], ctx.q_pow(eps_sign(a, b) * p)),
                ]
            }
            Rel::Column { i, j, a } => vec![(vec![g(i, a), g(j, a)], ctx.one()), (vec![g(j, a), g(i, a)], -ctx.one())],
            Rel::Row { i, a, b } => vec![(vec![g(i, b), g(i, a)], ctx.one()), (vec![g(i, a), g(i, b)], -ctx.q_pow(-1))],
            Rel::Det => {
                let mut d = ctx.one();
                for i in 0..n {
                    for j in i + 1..n {
                        d = &d * &self.qnum(w[i] - w[j]);
                    }
                }
                let mut out = self.det_words.clone();
                out.push((Vec::new(), -d));
                out
            }
            Rel::Nil { g } => vec![(vec![g; self.h], ctx.one())],
        }
    }

    /// Rewrites `v` over live cells, compressing substitution chains.
    fn resolve(&mut self, v: &SVec) -> SVec {
        if v.iter().all(|(&k, _)| self.alive(k)) {
            return v.clone();
        }
        let mut out = SVec::new();
        for (&k, c) in v.iter() {
            if self.alive(k) {
                out.add_entry(k, c);
            } else {
                let s = self.resolved_subst(k);
                out.axpy(c, &s);
            }
        }
        out
    }

    fn resolved_subst(&mut self, k: usize) -> SVec {
        let s = self.cells[k].subst.clone().expect("dead cell");
        if s.iter().all(|(&j, _)| self.alive(j)) {
            return s;
        }
        // substitutions only mention older cells, so this terminates
        let r = self.resolve(&s);
        self.cells[k].subst = Some(r.clone());
        r
    }

    /// `g v`, or `None` if some live cell of `v` has no image under `g` yet.
    fn apply_gen(&mut self, v: &SVec, g: usize) -> Option<SVec> {
        let v = self.resolve(v);
        let mut out = SVec::new();
        for (&k, c) in v.iter() {
            let img = self.cells[k].img[g].clone()?;
            let img = self.resolve(&img);
            self.cells[k].img[g] = Some(img.clone());
            out.axpy(c, &img);
        }
        Some(out)
    }

    fn trace(&mut self, k: usize, r: Rel) -> Option<SVec> {
        let w = self.cells[k].weight.clone();
        let terms = self.instantiate(r, &w);
        let start = SVec::unit(k, self.ctx);
        let mut acc = SVec::new();
        for (word, c) in terms {
            if c.is_zero() {
                continue;
            }
            let mut v = start.clone();
            for &g in &word {
                if v.is_zero() {
                    break;
                }
                v = self.apply_gen(&v, g)?;
            }
            acc.axpy(&c, &v);
        }
        Some(acc)
    }

    /// Imposes `r = 0` and everything it forces.
    fn coincide(&mut self, r: SVec) {
        let mut queue = vec![r];
        while let Some(r) = queue.pop() {
            let r = self.resolve(&r);
            let Some((&p, c)) = r.0.iter().next_back() else {
                continue;
            };
            let scale = -c.inv().expect("nonzero pivot");
            let mut expr = r.clone();
            expr.0.remove(&p);
            let expr = expr.scale(&scale);
            assert!(p != 0 || !expr.is_zero(), "the vacuum was forced to vanish");
            let imgs = std::mem::take(&mut self.cells[p].img);
            self.cells[p].subst = Some(expr.clone());
            for (g, im) in imgs.into_iter().enumerate() {
                let Some(x) = im else { continue };
                match self.apply_gen(&expr, g) {
                    Some(y) => queue.push(y.sub(&x)),
                    None => self.deductions.push((expr.clone(), g, x)),
                }
            }
        }
    }

    fn retry_deductions(&mut self) -> bool {
        let pending = std::mem::take(&mut self.deductions);
        let mut progress = false;
        for (expr, g, x) in pending {
            match self.apply_gen(&expr, g) {
                Some(y) => {
                    progress = true;
                    self.coincide(y.sub(&x));
                }
                None => self.deductions.push((expr, g, x)),
            }
        }
        progress
    }

    fn define_images(&mut self, k: usize) {
        let n = self.n;
        for g in 0..n * n {
            if !self.alive(k) {
                return;
            }
            if self.cells[k].img[g].is_some() {
                continue;
            }
            let i = g / n + 1;
            if k == 0 && i != 1 {
                self.cells[k].img[g] = Some(SVec::new());
                continue;
            }
            let mut w = self.cells[k].weight.clone();
            w[i - 1] += 1;
            if i == n {
                // keep P_n = -n; only differences are physical
                for x in w.iter_mut() {
                    *x -= 1;
                }
            }
            let mut word = vec![g];
            word.extend_from_slice(&self.cells[k].word);
            let d = self.cells[k].depth + 1;
            let c = self.new_cell(w, d, word);
            self.cells[k].img[g] = Some(SVec::unit(c, self.ctx));
        }
    }

    /// Pushes every relation at `k` that can be traced now; true if any was.
    fn push_at(&mut self, k: usize, max_len: usize) -> bool {
        let mut any = false;
        for ri in 0..self.rels.len() {
            if !self.alive(k) {
                break;
            }
            let r = self.rels[ri];
            if self.cells[k].pushed[ri] || self.rel_len(r) > max_len {
                continue;
            }
            if let Some(v) = self.trace(k, r) {
                self.cells[k].pushed[ri] = true;
                any = true;
                self.coincide(v);
            }
        }
        any
    }

    pub(crate) fn run(mut self, max_depth: usize) -> Enumerated {
        let mut depth = 0;
        let mut depth_reached = 0;
        loop {
            let layer: Vec<usize> =
                (0..self.cells.len()).filter(|&k| self.alive(k) && self.cells[k].depth == depth).collect();
            if layer.is_empty() || depth >= max_depth {
                break;
            }
            depth_reached = depth + 1;
            for k in layer {
                self.define_images(k);
            }
            self.retry_deductions();
            // a relation of length L at depth d traces once layers up to d + L - 1 have images
            let ks: Vec<usize> = (0..self.cells.len()).filter(|&k| self.alive(k)).collect();
            for k in ks {
                let d = self.cells[k].depth;
                if d <= depth + 1 {
                    self.push_at(k, depth + 1 - d);
                }
            }
            self.retry_deductions();
            depth += 1;
        }
        loop {
            let ks: Vec<usize> = (0..self.cells.len()).filter(|&k| self.alive(k)).collect();
            let mut progress = false;
            for k in ks {
                progress |= self.push_at(k, usize::MAX);
            }
            progress |= self.retry_deductions();
            if !progress {
                break;
            }
        }
        self.finish(depth_reached)
    }

    fn finish(mut self, depth_reached: usize) -> Enumerated {
        let live: Vec<usize> = (0..self.cells.len()).filter(|&k| self.alive(k)).collect();
        let index: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut complete = self.deductions.is_empty();
        let ng = self.n * self.n;
        let mut columns = vec![Vec::with_capacity(live.len()); ng];
        for &k in &live {
            if self.cells[k].pushed.iter().any(|p| !p) {
                complete = false;
            }
            for (g, col) in columns.iter_mut().enumerate() {
                let v = match self.cells[k].img[g].clone() {
                    Some(img) => self.resolve(&img),
                    None => {
                        complete = false;
                        SVec::new()
                    }
                };
                col.push(SVec(v.0.into_iter().map(|(c, x)| (index[&c], x)).collect()));
            }
        }
        let states = live
            .iter()
            .map(|&k| (self.cells[k].word.clone(), self.cells[k].weight.clone(), self.cells[k].depth))
            .collect();
        Enumerated { states, columns, complete, depth_reached, cells_created: self.cells.len() }
    }
}
