use crate::qfield::{qfact, CycNum, FieldCtx};

/// Which totally antisymmetric tensor to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsVariant {
    /// `eps^{a_1..a_n}`, q-antisymmetric.
    Upper,
    /// `eps_{a_1..a_n}`; equal to the upper tensor componentwise.
    Lower,
    /// The classical sign tensor on dynamical indices.
    Classical,
}

/// Number of pairs `i < j` with `idx[i] < idx[j]`; `None` unless `idx` is a
/// permutation of `1..=n`.
pub fn inversion_length(idx: &[usize]) -> Option<usize> {
    let n = idx.len();
    let mut seen = vec![false; n + 1];
    for &a in idx {
        if a == 0 || a > n || seen[a] {
            return None;
        }
        seen[a] = true;
    }
    let mut l = 0;
    for i in 0..n {
        for j in i + 1..n {
            if idx[i] < idx[j] {
                l += 1;
            }
        }
    }
    Some(l)
}

/// `q^{-n(n-1)/4} (-q)^l` for the q-tensors, `(-1)^l` classically, and zero
/// off permutations. The rank is the field's `n`.
pub fn eps_component(ctx: &'static FieldCtx, idx: &[usize], variant: EpsVariant) -> CycNum {
    assert_eq!(idx.len(), ctx.n() as usize, "epsilon rank must equal n");
    let Some(l) = inversion_length(idx) else {
        return ctx.zero();
    };
    let sign = if l % 2 == 0 { 1 } else { -1 };
    match variant {
        EpsVariant::Classical => ctx.int(sign),
        EpsVariant::Upper | EpsVariant::Lower => {
            let n = idx.len() as i64;
            let pre = ctx
                .q_rational_pow(-n * (n - 1), 4)
                .expect("field order admits q^{n(n-1)/4}");
            (&pre * &ctx.q_pow(l as i64)).scale_int(sign)
        }
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// `eps^{a..} eps_{a..}` summed over all index tuples.
pub fn eps_contract(ctx: &'static FieldCtx) -> CycNum {
    let n = ctx.n() as usize;
    let mut acc = ctx.zero();
    for p in permutations(n) {
        let up = eps_component(ctx, &p, EpsVariant::Upper);
        let lo = eps_component(ctx, &p, EpsVariant::Lower);
        acc += &(&up * &lo);
    }
    acc
}

/// `eps_contract - [n]!`; zero when the normalization holds.
pub fn eps_contract_residual(ctx: &'static FieldCtx) -> CycNum {
    eps_contract(ctx) - qfact(ctx, ctx.n())
}

/// Checks the adjacent-swap rule on every tuple in `{1..n}^n`; returns the
/// first violating tuple and position.
pub fn check_adjacent_swaps(ctx: &'static FieldCtx) -> Option<(Vec<usize>, usize)> {
    let n = ctx.n() as usize;
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut idx = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            idx.push(c % n + 1);
            c /= n;
        }
        let e = eps_component(ctx, &idx, EpsVariant::Upper);
        for i in 0..n.saturating_sub(1) {
            let mut sw = idx.clone();
            sw.swap(i, i + 1);
            let f = eps_component(ctx, &sw, EpsVariant::Upper);
            let s = eps_sign(idx[i], idx[i + 1]);
            let rhs = -(&ctx.q_pow(-s) * &f);
            if e != rhs {
                return Some((idx, i));
            }
        }
    }
    None
}

/// `eps_{ab}`: `1` for `a > b`, `0` for `a = b`, `-1` otherwise.
pub fn eps_sign(a: usize, b: usize) -> i64 {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_for_small_rank() {
        let c2 = FieldCtx::get(2, 4);
        assert_eq!(eps_component(c2, &[2, 1], EpsVariant::Upper), c2.q_frac_pow(-1));
        assert_eq!(eps_component(c2, &[1, 2], EpsVariant::Upper), -c2.q_frac_pow(1));
        assert!(eps_component(c2, &[1, 1], EpsVariant::Upper).is_zero());
        let c3 = FieldCtx::get(3, 5);
        assert_eq!(
            eps_component(c3, &[3, 2, 1], EpsVariant::Lower),
            c3.q_rational_pow(-3, 2).unwrap()
        );
        assert_eq!(eps_component(c3, &[1, 2, 3], EpsVariant::Classical), c3.int(-1));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1), vec![vec![1]]);
    }
}
