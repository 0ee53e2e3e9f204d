//! Restricted vacuum modules: complete at n = 2, truncated at n = 3.

use std::time::Instant;

use qzero::fock::{build_module, check_module};
use qzero::qfield::FieldCtx;
use qzero::zmodes::Chirality;

fn main() -> qzero::Result<()> {
    for h in 3..=6u32 {
        let t = Instant::now();
        let m = build_module(FieldCtx::get(2, h), Chirality::Left, None)?;
        println!("n = 2, h = {h}: dim {} (h^2 = {}) in {:.1?}", m.dim(), h * h, t.elapsed());
    }
    let m = build_module(FieldCtx::get(3, 4), Chirality::Right, Some(8))?;
    let rep = check_module(&m);
    println!("n = 3, h = 4, depth 8: {} states, complete = {}", m.dim(), rep.complete);
    for s in 0..4 {
        println!("  state {s}: {}", m.basis().label(s));
    }
    print!("{}", rep.to_text());
    Ok(())
}
