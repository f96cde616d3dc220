//! Constructive lower bounds for `η_n` and `τ_n`: partial reflected products,
//! the dilated corrector, kernel approximants, and per-`n` certificates.

mod experiment;
mod pipeline;
mod schedule;

pub use experiment::{convergence_experiment, trend_ok, ConvergenceReport, ConvergenceRow, Which};
pub use pipeline::{
    competitor, partial_product, taylor_approximant, vp_approximant, PartialProduct, PipelineCertificate, Route,
};
pub use schedule::{ScheduleParams, SeqFamily};
