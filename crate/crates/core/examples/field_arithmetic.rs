//! Exact cyclotomic arithmetic: q-numbers at a root of unity and their
//! complex values.

use qzero::qfield::{qfact, qint, qplus_binom, FieldCtx};

fn main() -> qzero::Result<()> {
    let h: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let ctx = FieldCtx::get(2, h);
    println!("n = 2, h = {h}: root order {}, field degree {}", ctx.order(), ctx.degree());
    let q = ctx.q_pow(1);
    println!("q = {q} ~ {:.6}", q.to_complex());
    for m in 0..=h as i64 {
        let v = qint(ctx, m);
        println!("[{m}] = {v}  ~ {:.6}", v.to_complex().re);
    }
    // [h] = 0 makes [h]! vanish as well
    println!("[{h}]! is zero: {}", qfact(ctx, h).is_zero());
    let c = qplus_binom(ctx, h as i64, 2)?;
    println!("[{h} 2]_+ = {c}");
    let x = qzero::qfield::CycNum::parse(ctx, "1/2*z^3 - z")?;
    println!("x = {x}, 1/x = {}", x.inv().expect("nonzero"));
    Ok(())
}
