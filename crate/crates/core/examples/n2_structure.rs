//! The n = 2 operators A, B, C, D on F (x) Fbar against the closed form.

use qzero::qfield::FieldCtx;
use qzero::qops::{build_q, n2_suite};

fn main() -> qzero::Result<()> {
    let h: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let space = build_q(FieldCtx::get(2, h), None)?;
    println!("dim F (x) Fbar = {}", space.dim());
    let rep = n2_suite(&space)?;
    print!("{}", rep.to_text());
    println!("all passed: {}", rep.passed());
    Ok(())
}
