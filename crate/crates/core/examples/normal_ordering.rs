//! Normal ordering in the left zero-mode algebra and the quantum determinant.

use qzero::qfield::FieldCtx;
use qzero::zmodes::{check_confluence_samples, det_a, AlgElement, Chirality, Gen};

fn main() -> qzero::Result<()> {
    let ctx = FieldCtx::get(2, 4);
    let e = AlgElement::word(ctx, Chirality::Left, vec![Gen::new(2, 1), Gen::new(1, 2)]);
    println!("a[2,1]*a[1,2] = {}", e.normal_form());
    let e = AlgElement::word(ctx, Chirality::Left, vec![Gen::new(1, 2), Gen::new(1, 1)]);
    println!("a[1,2]*a[1,1] = {}", e.normal_form());
    for n in [2u32, 3] {
        let ctx = FieldCtx::get(n, n + 2);
        let d = det_a(ctx, Chirality::Left)?;
        println!("n = {n}: det(a) has {} normal-ordered terms", d.len());
    }
    let rep = check_confluence_samples(FieldCtx::get(3, 4), 40, 0);
    print!("{}", rep.to_text());
    Ok(())
}
