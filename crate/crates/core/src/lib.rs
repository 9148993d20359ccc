//! One-way quantum deficit of two adjacent bulk spins of the spin-1/2 XX chain
//! in the thermodynamic limit.
//!
//! The pipeline is `xxmodel` (correlators as a function of the field λ) →
//! `xstate` (the symmetric two-qubit X state and its spectrum) → `deficit`
//! (minimization of the post-measurement entropy). The deficit module carries
//! two independent routes: a closed-form one-variable search over the
//! measurement axis component `z3`, and a brute-force oracle that samples the
//! whole unitary group of one-qubit measurements and diagonalizes the
//! dephased state numerically.
//!
//! All entropies are in bits.

// NaN must fail the range checks, and small-matrix code reads best indexed.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod deficit;
mod error;
pub mod linalg;
pub mod search;
pub mod xstate;
pub mod xxmodel;

pub use deficit::{
    deficit_for_lambda, minimize_over_z3, oracle_full_measurement, post_measurement_entropy,
    post_measurement_spectrum, DeficitResult, MeasurementDirection, UnitaryParams,
};
pub use error::{Error, Result};
pub use linalg::{
    entropy_kernel, hermitian_eigenvalues, kron, pauli, ComplexMatrix2, ComplexMatrix4,
    DensityMatrix4,
};
pub use xstate::XStateParams;
pub use xxmodel::{classify_phase, correlators, polarized_correlators, Correlators, Lambda, Phase};
