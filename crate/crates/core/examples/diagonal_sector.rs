//! Off-diagonal monomials on the vacuum, the diagonal sector and the hopping
//! relations.

use std::time::Instant;

use qzero::qfield::FieldCtx;
use qzero::qops::{build_q, conjecture_scan, diag_sector, plactic_compare};

fn main() -> qzero::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(3);
    let h = args.next().flatten().unwrap_or(4);
    let len = args.next().flatten().unwrap_or(4);
    let t = Instant::now();
    let space = build_q(FieldCtx::get(n as u32, h as u32), None)?;
    println!("{}", conjecture_scan(&space, len)?.to_text());
    let (sector, rep) = diag_sector(&space, len)?;
    println!("{}", rep.to_text());
    println!("dim F^diag = {}, dim F' = {}", sector.dim(), sector.f_prime.len());
    println!("{}", plactic_compare(&space, len)?.to_text());
    println!("total {:.1?}", t.elapsed());
    Ok(())
}
