//! Monte Carlo uniformity test: reject `H₀: X ~ U(0, 1)` when `Δ̂ >= C_{1−α}`.

use crate::error::{Error, Result};
use crate::estimator::{estimate_varextropy, EstimatorConfig};
use crate::sample::Sample;
use crate::simulation::Simulator;

pub const MIN_TEST_SIZE: usize = 4;
pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Reject,
    FailToReject,
}

impl Decision {
    pub fn from_statistic(statistic: f64, critical_value: f64) -> Self {
        if statistic >= critical_value {
            Decision::Reject
        } else {
            Decision::FailToReject
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Reject => "reject",
            Decision::FailToReject => "fail_to_reject",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestReport {
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub reps: usize,
    pub seed: u64,
    pub decision: Decision,
}

/// Checks that every observation lies in `[0, 1]`.
pub fn check_unit_support(sample: &Sample) -> Result<()> {
    // The sample is sorted, so only the extremes can violate the support.
    let x = sample.order_statistics();
    for (index, value) in [(0, x[0]), (x.len() - 1, x[x.len() - 1])] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfSupport { index, value });
        }
    }
    Ok(())
}

/// Runs the test with the given estimator settings and simulator. The critical
/// value is simulated at the sample's own `(n, m, α)`.
pub fn run_test_with(
    sample: &Sample,
    config: &EstimatorConfig,
    alpha: f64,
    simulator: &Simulator,
) -> Result<TestReport> {
    let n = sample.len();
    if n < MIN_TEST_SIZE {
        return Err(Error::TooFewObservations {
            n,
            required: MIN_TEST_SIZE,
        });
    }
    check_unit_support(sample)?;
    let statistic = estimate_varextropy(sample, config)?;
    let critical_value = simulator.critical_value(n, config.m, alpha)?;
    Ok(TestReport {
        statistic,
        critical_value,
        alpha,
        n,
        m: config.m,
        reps: simulator.reps(),
        seed: simulator.seed(),
        decision: Decision::from_statistic(statistic, critical_value),
    })
}

/// Runs the test; `m = None` selects the default window `round(√n)`.
pub fn run_test(
    sample: &Sample,
    m: Option<usize>,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<TestReport> {
    let config = match m {
        Some(m) => EstimatorConfig::new(m),
        None => EstimatorConfig::with_default_window(sample.len()),
    };
    run_test_with(sample, &config, alpha, &Simulator::new(seed, reps)?)
}
