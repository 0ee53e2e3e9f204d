//! Constant and dynamical braid matrices, and the q-antisymmetric tensor.

use qzero::qfield::FieldCtx;
use qzero::qtensor::{eps_contract, explore_dynamical_ybe, verify_rmatrix_structure, AlphaChoice};
use qzero::zmodes::check_rmatrix_equivalence;

fn main() {
    for n in [2u32, 3, 4] {
        let ctx = FieldCtx::get(n, n + 1);
        println!("n = {n}: eps contraction = {}", eps_contract(ctx));
    }
    for n in [2u32, 3] {
        let ctx = FieldCtx::get(n, 5);
        print!("{}", verify_rmatrix_structure(ctx).to_text());
        print!("{}", check_rmatrix_equivalence(ctx).to_text());
    }
    print!("{}", explore_dynamical_ybe(FieldCtx::get(2, 5), AlphaChoice::Unit).to_text());
}
