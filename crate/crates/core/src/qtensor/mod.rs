//! q-antisymmetric tensors and the constant and dynamical braid matrices.

mod eps;
mod rmatrix;

pub use eps::{
    check_adjacent_swaps, eps_component, eps_contract, eps_contract_residual, eps_sign, inversion_length,
    permutations, EpsVariant,
};
pub use rmatrix::{
    dyn_a, dyn_b, dynamical_braid_residual, explore_dynamical_ybe, minimal_polynomial, rhat, rhat_dyn, unit_roots,
    verify_rmatrix_structure, AlphaChoice, DynRMatrix, RMatrix, YbeShift,
};
