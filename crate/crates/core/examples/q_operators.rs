//! Nilpotency and exchange relations of `Q^i_j` at `n = 3`.

use std::time::Instant;

use qzero::qfield::FieldCtx;
use qzero::qops::{build_q, check_lemma1, check_lemma2, check_nilpotency};

fn main() -> qzero::Result<()> {
    let h: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t = Instant::now();
    let space = build_q(FieldCtx::get(3, h), None)?;
    println!("built F (x) Fbar: {} x {} states in {:.1?}", space.left().dim(), space.right().dim(), t.elapsed());
    for rep in [check_nilpotency(&space), check_lemma1(&space), check_lemma2(&space)?] {
        println!("{}", rep.to_text());
    }
    println!("total {:.1?}", t.elapsed());
    Ok(())
}
