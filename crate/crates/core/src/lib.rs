//! Outer correctors for finite Blaschke products and the leading
//! coefficients of orthonormal polynomials for circle measures carrying
//! point masses outside the unit disk.
//!
//! The crate is organised bottom-up:
//!
//! - [`circle_fourier`]: Laurent polynomials on 𝕋, Vallée-Poussin type
//!   multipliers, sup/L^p norms and Besov seminorms.
//! - [`blaschke`]: finite Blaschke products, the dilated corrector `φ₀` with
//!   `Bφ₀ = R^n B̃`, derivative sup-norms and their certificates.
//! - [`xlinalg`]: extended-precision Hermitian Cholesky, Schur complements
//!   and the norm-constrained leading-coefficient problem.
//! - [`measure_opuc`]: measures `dm/|ψ|² + Σ μ_k δ_{z_k}`, Gram matrices,
//!   `τ_n`, `η_n`, orthonormal elements and the residue identity.
//! - [`asymptotics`]: the constructive lower-bound pipelines (Vallée-Poussin
//!   and Taylor routes) with per-`n` certificates.
//! - [`cli`]: manifests, instance generation and the experiment runner used
//!   by the `szego-lab` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod asymptotics;
pub mod blaschke;
pub mod circle_fourier;
pub mod cli;
pub mod error;
pub mod measure_opuc;
pub mod xlinalg;

pub use error::{Error, Result};
