use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no elliptic orbit at pressure {pressure} (elliptic range is {range})")]
    NoEllipticOrbit { pressure: f64, range: String },

    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("continuum case: every elliptic level at lambda = {lambda} is 2pi-periodic; pick a pressure explicitly")]
    ContinuumCase { lambda: f64 },

    #[error("closure failure: return mismatch {defect:.3e} exceeds tolerance {tol:.3e}")]
    ClosureFailure { defect: f64, tol: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
