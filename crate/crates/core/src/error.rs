use thiserror::Error;

/// Errors raised by the measures, the estimator, and the simulation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution parameters: {0}")]
    InvalidDistribution(String),

    #[error("log_gamma is only defined here for x > 0, got {0}")]
    NonPositiveGammaArgument(f64),

    #[error("record index must be at least 1")]
    ZeroRecordIndex,

    #[error("quadrature did not converge (estimate {estimate:e}, error bound {error_bound:e}); check truncation or shape parameters")]
    QuadratureDidNotConverge { estimate: f64, error_bound: f64 },

    #[error("no quantile form is implemented for {0}")]
    NoQuantileForm(String),

    #[error("sample is empty")]
    EmptySample,

    #[error("observation {index} is not finite ({value})")]
    NonFiniteObservation { index: usize, value: f64 },

    #[error("need at least {required} observations, got {n}")]
    TooFewObservations { n: usize, required: usize },

    #[error("window size m = {m} is invalid for n = {n} (require 1 <= m <= n/2)")]
    InvalidWindow { m: usize, n: usize },

    #[error("zero 2m-spacing at order statistic {index} (tied observations); retry with jitter tie handling")]
    ZeroSpacing { index: usize },

    #[error("jitter epsilon must be finite and positive, got {0}")]
    InvalidJitter(f64),

    #[error("significance level must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("at least {min} replications are required, got {reps}")]
    TooFewReplications { reps: usize, min: usize },

    #[error("observation {index} = {value} lies outside the support [0, 1]")]
    OutOfSupport { index: usize, value: f64 },

    #[error("{0}")]
    InvalidGrid(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
