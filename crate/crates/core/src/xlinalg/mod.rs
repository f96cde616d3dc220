//! Extended-precision Hermitian positive-definite linear algebra.
//!
//! Scalars are MPFR/MPC values at a [`PrecisionTag`]. Factorizations never
//! change precision on their own: a `NotPositiveDefinite` failure is
//! reported to the caller, which may retry at [`PrecisionTag::next`].

mod extremal;
mod matrix;

pub use extremal::{
    cholesky, constrained_max_leading, quadratic_form, schur_leading, CholeskyFactor,
    ExtremalSolution,
};
pub use matrix::{from_c64, to_c64, HermitianMatrix, PrecisionTag};
