//! Varextropy toolkit.
//!
//! - [`measures`]: extropy `J(X) = −½∫f²` and varextropy
//!   `VJ(X) = Var(−½f(X)) = ¼∫f³ − ¼(∫f²)²`, by closed form, quadrature, or the
//!   quantile-density representation.
//! - [`estimator`]: the m-spacing estimate `Δ̂` of `VJ` from a sample.
//! - [`simulation`]: seeded, worker-count independent Monte Carlo critical values
//!   and power.
//! - [`uniformity`]: the test rejecting uniformity on `[0, 1]` for large `Δ̂`.
//! - [`cli`]: the `varextropy` command-line front end.

pub mod cli;
pub mod distribution;
pub mod error;
pub mod estimator;
pub mod measures;
pub mod quadrature;
pub mod sample;
pub mod simulation;
pub mod special;
pub mod uniformity;

pub use distribution::{DistributionSpec, Law};
pub use error::{Error, Result};
pub use estimator::{
    default_window, estimate_varextropy, spacing_terms, EstimatorConfig, SpacingTerms, TiePolicy,
};
pub use measures::{
    extropy, record_varextropy_exponential, varextropy_closed, varextropy_quadrature,
    varextropy_quantile_form, MeasureValue, Method,
};
pub use sample::Sample;
pub use simulation::{RngSpec, SimulationTable, Simulator, TableKind};
pub use special::log_gamma;
pub use uniformity::{run_test, run_test_with, Decision, TestReport};
