//! Exact arithmetic for quantum-matrix zero-mode algebras at the root of
//! unity `q = exp(-i pi / h)`, their vacuum modules and the tensor-product
//! operators `Q^i_j`.
//!
//! The crate is organized bottom-up:
//!
//! * [`qfield`]: the cyclotomic field, q-numbers and weight coefficients;
//! * [`qtensor`]: q-antisymmetric tensors and the constant and dynamical R-matrices;
//! * [`zmodes`]: the symbolic zero-mode algebras and their normal ordering;
//! * [`fock`]: restricted vacuum modules as exact sparse matrices;
//! * [`qops`]: the 2D operators `Q^i_j` and every structural check on them;
//! * [`cli`]: argument handling, the expression parser and report emission.

pub mod error;
pub mod linalg;
pub mod qfield;
pub mod qtensor;
pub mod zmodes;
pub mod fock;
pub mod qops;
pub mod report;
pub mod cli;

pub use error::{Error, Result};
