//! The measure `dm/|ψ|² + Σ μ_k δ_{z_k}` with `|z_k| > 1`: moments, Gram
//! matrices, the leading coefficients `τ_n` and `η_n`, and the residue
//! identity for the orthonormal Laurent functions.

mod element;
mod gram;
mod log_condition;
mod measure;
mod residue;

pub use element::MpLaurent;
pub use gram::{
    eta_n, gram_laurent, gram_over, gram_polynomial, laurent_basis, orthonormal_element, polynomial_basis, tau_n,
    LeadingCoefficient, OrthonormalElement,
};
pub use log_condition::{log_condition_report, log_spaced, tail_mass, LogConditionReport, LogConditionRow};
pub use measure::{
    MeasureFile, MeasureSpec, OuterWeight, PointMass, PointSpectrum, ReflectedBlaschke, WEIGHT_CHECK_NODES,
};
pub use residue::{residue_identity_check, ResidueCheck};
