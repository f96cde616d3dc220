//! Finite Blaschke products and the outer corrector `φ₀` that makes `Bφ₀`
//! Lipschitz with constant `O(n)` while keeping `φ₀(0) = 1` and `|φ₀|`
//! bounded on the circle.

mod corrector;
mod product;

pub use corrector::{
    build_corrector, corrector_certificate, derivative_sup, derivative_sup_cauchy, phi_sup,
    CertificateOptions, CorrectorCertificate, DerivativeSup, DilatedCorrector, SmoothnessRatio,
};
pub use product::{eval_blaschke, BlaschkeProduct, DiskSide, ZeroSet, POLE_GUARD};
