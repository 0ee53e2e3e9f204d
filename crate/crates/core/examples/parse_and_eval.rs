//! Textual input: parse, normal order, evaluate on the vacuum module.

use qzero::cli::parse_expr;
use qzero::fock::build_module;
use qzero::qfield::FieldCtx;
use qzero::zmodes::Chirality;

fn main() -> qzero::Result<()> {
    let ctx = FieldCtx::get(2, 4);
    let m = build_module(ctx, Chirality::Left, None)?;
    for text in ["qp[1]*a[1,2]", "a[2,1]*a[1,2]", "a[1,1]*a[2,2] - a[1,2]*a[2,1]*z^2", "a[1,1]^4"] {
        let e = parse_expr(ctx, text)?;
        let op = m.eval_operator(&e)?;
        println!("{text}\n  normal form: {}\n  matrix nnz on F: {}", e.normal_form(), op.nnz());
    }
    match parse_expr(ctx, "a[1,1]*a[1,2] - ?") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
