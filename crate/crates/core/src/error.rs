use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Variants are grouped by the runner's exit-code contract: input problems
/// map to 2, numeric failures to 3 and schedule violations to 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero set is empty")]
    EmptyZeroSet,

    #[error("evaluation point {point} is within {distance:e} of a pole")]
    PoleProximity { point: String, distance: f64 },

    #[error("matrix is not positive definite at pivot {pivot} ({bits} bits)")]
    NotPositiveDefinite { pivot: usize, bits: u32 },

    #[error("quadrature did not converge (grid reached {grid} nodes, last change {change:e})")]
    QuadratureNonConvergence { grid: usize, change: f64 },

    #[error("tolerance {requested:e} unreachable, best achieved bound {achieved:e}")]
    ToleranceUnreachable { requested: f64, achieved: f64 },

    #[error("schedule violation: {0}")]
    ScheduleViolation(String),

    #[error("condition (log) not satisfied for any tested exponent")]
    LogConditionFailed,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Parses JSON, naming the offending field on failure.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Json(inner)
        } else {
            Error::InvalidInput(format!("{path}: {inner}"))
        }
    })
}

impl Error {
    /// Process exit code for the runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Precondition(_)
            | Error::EmptyZeroSet
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::PoleProximity { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::QuadratureNonConvergence { .. }
            | Error::ToleranceUnreachable { .. } => 3,
            Error::ScheduleViolation(_) | Error::LogConditionFailed => 4,
        }
    }

    /// Short machine-readable kind tag, used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Precondition(_) => "precondition",
            Error::EmptyZeroSet => "empty_zero_set",
            Error::PoleProximity { .. } => "pole_proximity",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::QuadratureNonConvergence { .. } => "quadrature_non_convergence",
            Error::ToleranceUnreachable { .. } => "tolerance_unreachable",
            Error::ScheduleViolation(_) => "schedule_violation",
            Error::LogConditionFailed => "log_condition_failed",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
