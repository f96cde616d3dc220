//! Laurent polynomials on the unit circle, trapezoidal Fourier multipliers
//! (de la Vallée-Poussin blocks, their symmetric variants and the Dirichlet
//! projection), sampled norms and the `q = ∞` Besov seminorm.

mod grid;
mod kernel;
mod laurent;
mod norms;

pub use grid::{node, CircleGrid};
pub use kernel::{convolve, kernel_coeffs, kernel_identity_vk_vpn, KernelSpec};
pub use laurent::LaurentPolynomial;
pub use norms::{besov_seminorm, lp_norm, sup_norm, Lp, SupEstimate, DEFAULT_OVERSAMPLE};
pub(crate) use norms::grid_size;
