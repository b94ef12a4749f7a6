//! The m-spacing varextropy estimator.
//!
//! For order statistics `X_{1:n} <= ... <= X_{n:n}` and window `m`,
//!
//! ```text
//! y_i = (2m/n) / (X_{i+m:n} − X_{i−m:n}),   indices clamped to [1, n]
//! Δ̂   = (1/4n) Σ y_i² − ¼ ((1/n) Σ y_i)²
//! ```
//!
//! Each `y_i` is a spacing-based density estimate at `X_{i:n}`, so `Δ̂` is a
//! plug-in estimate of `Var(−½ f(X))`.

use crate::error::{Error, Result};
use crate::sample::Sample;

/// How zero 2m-spacings (tied order statistics) are handled.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TiePolicy {
    #[default]
    Error,
    /// Add `k·ε` to the `k`-th order statistic (0-based) before estimating.
    /// `None` uses `ε = 1e-10 × range`.
    Jitter(Option<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub m: usize,
    pub tie_policy: TiePolicy,
}

impl EstimatorConfig {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            tie_policy: TiePolicy::Error,
        }
    }

    /// Window `round(√n)` clamped to `[1, n/2]`.
    pub fn with_default_window(n: usize) -> Self {
        Self::new(default_window(n))
    }

    pub fn tie_policy(mut self, policy: TiePolicy) -> Self {
        self.tie_policy = policy;
        self
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::TooFewObservations { n, required: 2 });
        }
        if self.m == 0 || self.m > n / 2 {
            return Err(Error::InvalidWindow { m: self.m, n });
        }
        if let TiePolicy::Jitter(Some(eps)) = self.tie_policy {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::InvalidJitter(eps));
            }
        }
        Ok(())
    }
}

pub fn default_window(n: usize) -> usize {
    let m = (n as f64).sqrt().round() as usize;
    m.clamp(1, (n / 2).max(1))
}

pub const DEFAULT_JITTER_SCALE: f64 = 1e-10;

/// The per-observation density terms behind `Δ̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingTerms {
    pub y: Vec<f64>,
    pub m: usize,
}

impl SpacingTerms {
    /// `Δ̂` from the terms. Evaluated as one quarter of the population variance of
    /// `y`, centered in two passes; algebraically identical to the raw-moment form
    /// and never negative.
    pub fn statistic(&self) -> f64 {
        let n = self.y.len() as f64;
        let mean = self.y.iter().sum::<f64>() / n;
        let centered = self.y.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>();
        0.25 * centered / n
    }
}

pub fn spacing_terms(sample: &Sample, config: &EstimatorConfig) -> Result<SpacingTerms> {
    let n = sample.len();
    config.validate(n)?;
    let jittered;
    let x: &[f64] = match config.tie_policy {
        TiePolicy::Error => sample.order_statistics(),
        TiePolicy::Jitter(eps) => {
            let eps = eps.unwrap_or_else(|| {
                let range = sample.range();
                DEFAULT_JITTER_SCALE * if range > 0.0 { range } else { 1.0 }
            });
            jittered = sample
                .order_statistics()
                .iter()
                .enumerate()
                .map(|(k, &v)| v + k as f64 * eps)
                .collect::<Vec<_>>();
            &jittered
        }
    };
    Ok(SpacingTerms {
        y: density_terms(x, config.m)?,
        m: config.m,
    })
}

fn density_terms(x: &[f64], m: usize) -> Result<Vec<f64>> {
    let n = x.len();
    let scale = 2.0 * m as f64 / n as f64;
    (0..n)
        .map(|i| {
            let spacing = x[(i + m).min(n - 1)] - x[i.saturating_sub(m)];
            if spacing > 0.0 {
                Ok(scale / spacing)
            } else {
                Err(Error::ZeroSpacing { index: i + 1 })
            }
        })
        .collect()
}

/// The estimate `Δ̂` of varextropy for `sample` with the configured window.
pub fn estimate_varextropy(sample: &Sample, config: &EstimatorConfig) -> Result<f64> {
    spacing_terms(sample, config).map(|t| t.statistic())
}

/// `Δ̂` straight from sorted, tie-free order statistics; used by the simulation engine.
pub(crate) fn spacing_statistic(sorted: &[f64], m: usize) -> Result<f64> {
    Ok(SpacingTerms {
        y: density_terms(sorted, m)?,
        m,
    }
    .statistic())
}
