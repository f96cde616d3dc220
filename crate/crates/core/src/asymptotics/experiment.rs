use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure_opuc::{eta_n, tau_n, MeasureSpec};

use super::pipeline::{taylor_approximant, vp_approximant, PipelineCertificate};
use super::schedule::ScheduleParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Tau,
    Eta,
    Both,
}

impl Which {
    pub fn tau(self) -> bool {
        matches!(self, Which::Tau | Which::Both)
    }

    pub fn eta(self) -> bool {
        matches!(self, Which::Eta | Which::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub tau: Option<f64>,
    pub tau_error: Option<f64>,
    pub tau_bits: Option<u32>,
    pub eta: Option<f64>,
    pub eta_error: Option<f64>,
    pub eta_bits: Option<u32>,
    /// Taylor-route lower bound for `τ_n`.
    pub tau_lower: Option<PipelineCertificate>,
    /// Vallée-Poussin-route lower bound for `η_n`.
    pub eta_lower: Option<PipelineCertificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub target: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Errors nonincreasing up to a factor 2 (`None` if not computed).
    pub tau_trend_ok: Option<bool>,
    pub eta_trend_ok: Option<bool>,
}

/// `e_j <= 2 min_{i<j} e_i` for every `j` (with a `1e-12` absolute floor).
pub fn trend_ok(errors: &[f64]) -> bool {
    let mut best = f64::INFINITY;
    for &e in errors {
        if e > 2.0 * best + 1e-12 {
            return false;
        }
        best = best.min(e);
    }
    true
}

/// Exact optima on `n_grid`, their distance to `B(0)ψ(0)`, and (with a
/// schedule) the pipeline lower bounds. Rows are computed in parallel.
pub fn convergence_experiment(
    mu: &MeasureSpec,
    n_grid: &[u64],
    which: Which,
    pipeline: Option<&ScheduleParams>,
) -> Result<ConvergenceReport> {
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("n_grid must be nonempty and strictly increasing".into()));
    }
    if which.eta() && n_grid[0] == 0 {
        return Err(Error::InvalidInput("eta_n needs n >= 1".into()));
    }
    if let Some(s) = pipeline {
        if n_grid.len() > 1 {
            s.validate(n_grid)?;
        }
    }
    let target = mu.target();
    let rows: Vec<ConvergenceRow> = n_grid
        .par_iter()
        .map(|&n| -> Result<ConvergenceRow> {
            let tau = which.tau().then(|| tau_n(mu, n as i64)).transpose()?;
            let eta = which.eta().then(|| eta_n(mu, n as i64)).transpose()?;
            let tau_lower = match pipeline {
                Some(s) if which.tau() => Some(taylor_approximant(mu, n, s)?.1),
                _ => None,
            };
            let eta_lower = match pipeline {
                Some(s) if which.eta() => Some(vp_approximant(mu, n, s)?.1),
                _ => None,
            };
            Ok(ConvergenceRow {
                n,
                tau_error: tau.as_ref().map(|t| (t.to_f64() - target).abs()),
                tau_bits: tau.as_ref().map(|t| t.bits_used),
                tau: tau.map(|t| t.to_f64()),
                eta_error: eta.as_ref().map(|t| (t.to_f64() - target).abs()),
                eta_bits: eta.as_ref().map(|t| t.bits_used),
                eta: eta.map(|t| t.to_f64()),
                tau_lower,
                eta_lower,
            })
        })
        .collect::<Result<_>>()?;
    let trend = |sel: fn(&ConvergenceRow) -> Option<f64>| {
        let errs: Option<Vec<f64>> = rows.iter().map(sel).collect();
        errs.map(|e| trend_ok(&e))
    };
    Ok(ConvergenceReport {
        target,
        tau_trend_ok: trend(|r| r.tau_error),
        eta_trend_ok: trend(|r| r.eta_error),
        rows,
    })
}
