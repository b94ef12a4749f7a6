//! Parametric laws used by the closed forms, the quadrature paths and the samplers.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::log_gamma_unchecked;

/// Exponential support is cut where the survival function reaches this value.
pub const EXPONENTIAL_TAIL_MASS: f64 = 1e-12;
/// Normal support is cut at this many standard deviations from the mean.
pub const NORMAL_TRUNCATION_SIGMAS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    Uniform { low: f64, high: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, variance: f64 },
    Beta { a: f64, b: f64 },
}

/// A validated parametric distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    law: Law,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidDistribution(msg()))
    }
}

impl DistributionSpec {
    pub fn uniform(low: f64, high: f64) -> Result<Self> {
        require(low.is_finite() && high.is_finite() && low < high, || {
            format!("uniform endpoints must satisfy a < b, got ({low}, {high})")
        })?;
        Ok(Self {
            law: Law::Uniform { low, high },
        })
    }

    pub fn standard_uniform() -> Self {
        Self {
            law: Law::Uniform {
                low: 0.0,
                high: 1.0,
            },
        }
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        require(rate.is_finite() && rate > 0.0, || {
            format!("exponential rate must be positive, got {rate}")
        })?;
        Ok(Self {
            law: Law::Exponential { rate },
        })
    }

    pub fn normal(mean: f64, variance: f64) -> Result<Self> {
        require(
            mean.is_finite() && variance.is_finite() && variance > 0.0,
            || {
                format!(
                    "normal needs a finite mean and positive variance, got ({mean}, {variance})"
                )
            },
        )?;
        Ok(Self {
            law: Law::Normal { mean, variance },
        })
    }

    pub fn beta(a: f64, b: f64) -> Result<Self> {
        require(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0, || {
            format!("beta shapes must be positive, got ({a}, {b})")
        })?;
        Ok(Self {
            law: Law::Beta { a, b },
        })
    }

    pub fn law(&self) -> Law {
        self.law
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self.law {
            Law::Uniform { low, high } => {
                if (low..=high).contains(&x) {
                    1.0 / (high - low)
                } else {
                    0.0
                }
            }
            Law::Exponential { rate } => {
                if x >= 0.0 {
                    rate * (-rate * x).exp()
                } else {
                    0.0
                }
            }
            Law::Normal { mean, variance } => {
                let z = x - mean;
                (-(z * z) / (2.0 * variance)).exp() / (2.0 * PI * variance).sqrt()
            }
            Law::Beta { a, b } => {
                if !(0.0..=1.0).contains(&x) {
                    return 0.0;
                }
                let log_beta =
                    log_gamma_unchecked(a) + log_gamma_unchecked(b) - log_gamma_unchecked(a + b);
                (xlogy(a - 1.0, x) + xlogy(b - 1.0, 1.0 - x) - log_beta).exp()
            }
        }
    }

    /// Integration range: the support, cut off for the unbounded laws.
    pub fn integration_range(&self) -> (f64, f64) {
        match self.law {
            Law::Uniform { low, high } => (low, high),
            Law::Exponential { rate } => (0.0, -EXPONENTIAL_TAIL_MASS.ln() / rate),
            Law::Normal { mean, variance } => {
                let reach = NORMAL_TRUNCATION_SIGMAS * variance.sqrt();
                (mean - reach, mean + reach)
            }
            Law::Beta { .. } => (0.0, 1.0),
        }
    }

    /// Reciprocal of the quantile density, `1 / (d/dp F^{-1}(p)) = f(F^{-1}(p))`,
    /// for the laws where it has a closed form.
    pub fn density_at_quantile(&self, p: f64) -> Result<f64> {
        match self.law {
            Law::Uniform { low, high } => Ok(1.0 / (high - low)),
            Law::Exponential { rate } => Ok(rate * (1.0 - p)),
            Law::Beta { a: 1.0, b } => Ok(b * (1.0 - p).powf((b - 1.0) / b)),
            _ => Err(Error::NoQuantileForm(self.to_string())),
        }
    }

    /// Inverse cdf, where it has a closed form.
    pub fn inverse_cdf(&self, p: f64) -> Result<f64> {
        match self.law {
            Law::Uniform { low, high } => Ok(low + p * (high - low)),
            Law::Exponential { rate } => Ok(-(-p).ln_1p() / rate),
            Law::Beta { a: 1.0, b } => Ok(1.0 - (1.0 - p).powf(1.0 / b)),
            _ => Err(Error::NoQuantileForm(self.to_string())),
        }
    }
}

// x * ln(y) with the convention 0 * ln(0) = 0.
fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.law {
            Law::Uniform { low, high } => write!(f, "uniform:{low},{high}"),
            Law::Exponential { rate } => write!(f, "exponential:{rate}"),
            Law::Normal { mean, variance } => write!(f, "normal:{mean},{variance}"),
            Law::Beta { a, b } => write!(f, "beta:{a},{b}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Parses `uniform`, `uniform:a,b`, `exponential:rate`, `normal:mean,variance`
    /// or `beta:a,b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once(':') {
            Some((name, args)) => (name.trim(), Some(args)),
            None => (s, None),
        };
        let params: Vec<f64> = match args {
            Some(args) => args
                .split(',')
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidDistribution(format!("bad parameter {t:?} in {s:?}"))
                    })
                })
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let arity = |k: usize| {
            require(params.len() == k, || {
                format!("{name} takes {k} parameter(s), got {}", params.len())
            })
        };
        match name.to_ascii_lowercase().as_str() {
            "uniform" if params.is_empty() => Ok(Self::standard_uniform()),
            "uniform" => {
                arity(2)?;
                Self::uniform(params[0], params[1])
            }
            "exponential" | "exp" => {
                arity(1)?;
                Self::exponential(params[0])
            }
            "normal" => {
                arity(2)?;
                Self::normal(params[0], params[1])
            }
            "beta" => {
                arity(2)?;
                Self::beta(params[0], params[1])
            }
            other => Err(Error::InvalidDistribution(format!(
                "unknown distribution {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(DistributionSpec::uniform(1.0, 1.0).is_err());
        assert!(DistributionSpec::uniform(2.0, 1.0).is_err());
        assert!(DistributionSpec::exponential(0.0).is_err());
        assert!(DistributionSpec::exponential(-2.0).is_err());
        assert!(DistributionSpec::normal(0.0, 0.0).is_err());
        assert!(DistributionSpec::beta(0.0, 1.0).is_err());
        assert!(DistributionSpec::beta(1.0, f64::NAN).is_err());
    }

    #[test]
    fn densities_integrate_to_one() {
        let laws = [
            DistributionSpec::standard_uniform(),
            DistributionSpec::uniform(-2.0, 3.0).unwrap(),
            DistributionSpec::exponential(0.5).unwrap(),
            DistributionSpec::exponential(5.0).unwrap(),
            DistributionSpec::normal(1.0, 0.25).unwrap(),
            DistributionSpec::normal(-3.0, 4.0).unwrap(),
            DistributionSpec::beta(1.0, 2.0).unwrap(),
            DistributionSpec::beta(2.5, 3.5).unwrap(),
        ];
        for d in laws {
            let (lo, hi) = d.integration_range();
            let mass = integrate(|x| d.pdf(x), lo, hi, 1e-12).unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "{d}: {mass}");
        }
    }

    #[test]
    fn beta_one_two_inverse_cdf() {
        let d = DistributionSpec::beta(1.0, 2.0).unwrap();
        assert!((d.inverse_cdf(0.75).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["uniform:0,1", "exponential:2", "normal:0,4", "beta:1,2"] {
            let d: DistributionSpec = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!(
            "uniform".parse::<DistributionSpec>().unwrap(),
            DistributionSpec::standard_uniform()
        );
        assert!("beta:0,1".parse::<DistributionSpec>().is_err());
        assert!("beta:1".parse::<DistributionSpec>().is_err());
        assert!("gamma:1,2".parse::<DistributionSpec>().is_err());
        assert!("normal:0,x".parse::<DistributionSpec>().is_err());
    }

    #[test]
    fn no_quantile_form_for_normal() {
        let d = DistributionSpec::normal(0.0, 1.0).unwrap();
        assert!(matches!(
            d.density_at_quantile(0.3),
            Err(Error::NoQuantileForm(_))
        ));
    }
}
