//! Extropy and varextropy of parametric laws.
//!
//! Three independent routes are offered for varextropy: closed forms, direct
//! quadrature of `¼∫f³ − ¼(∫f²)²` over the (truncated) support, and quadrature of
//! the quantile-density representation over `p ∈ (0, 1)`.

use std::f64::consts::PI;

use crate::distribution::{DistributionSpec, Law};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, DEFAULT_ABS_TOL};
use crate::special::log_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    QuantileForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::QuantileForm => "quantile_form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub method: Method,
}

impl MeasureValue {
    fn closed(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
        }
    }

    fn quadrature(value: f64) -> Self {
        Self {
            value,
            method: Method::Quadrature,
        }
    }
}

/// `∫ f(x)^power dx` over the integration range of `dist`.
pub fn density_power_integral(dist: &DistributionSpec, power: i32) -> Result<f64> {
    let (lo, hi) = dist.integration_range();
    integrate(|x| dist.pdf(x).powi(power), lo, hi, DEFAULT_ABS_TOL)
}

/// Extropy `J(X) = −½∫f²`. Beta laws are integrated numerically.
pub fn extropy(dist: &DistributionSpec) -> Result<MeasureValue> {
    Ok(match dist.law() {
        Law::Uniform { low, high } => MeasureValue::closed(-0.5 / (high - low)),
        Law::Exponential { rate } => MeasureValue::closed(-rate / 4.0),
        Law::Normal { variance, .. } => {
            MeasureValue::closed(-1.0 / (4.0 * variance.sqrt() * PI.sqrt()))
        }
        Law::Beta { .. } => MeasureValue::quadrature(-0.5 * density_power_integral(dist, 2)?),
    })
}

/// Closed-form varextropy. Beta laws have no closed form here and are routed to
/// [`varextropy_quadrature`]; the returned method says which path ran.
pub fn varextropy_closed(dist: &DistributionSpec) -> Result<MeasureValue> {
    match dist.law() {
        Law::Uniform { .. } => Ok(MeasureValue::closed(0.0)),
        Law::Exponential { rate } => Ok(MeasureValue::closed(rate * rate / 48.0)),
        Law::Normal { variance, .. } => {
            let root3 = 3f64.sqrt();
            Ok(MeasureValue::closed(
                (2.0 - root3) / (16.0 * PI * variance * root3),
            ))
        }
        Law::Beta { .. } => varextropy_quadrature(dist),
    }
}

/// Varextropy as `¼∫f³ − ¼(∫f²)²` by adaptive quadrature.
pub fn varextropy_quadrature(dist: &DistributionSpec) -> Result<MeasureValue> {
    let cube = density_power_integral(dist, 3)?;
    let square = density_power_integral(dist, 2)?;
    Ok(MeasureValue::quadrature(
        0.25 * cube - 0.25 * square * square,
    ))
}

/// Varextropy through the quantile density `q(p) = d/dp F⁻¹(p)`:
/// `¼[∫₀¹ q⁻² dp − (∫₀¹ q⁻¹ dp)²]`.
///
/// Available for uniform, exponential and Beta(1, b).
pub fn varextropy_quantile_form(dist: &DistributionSpec) -> Result<MeasureValue> {
    // Probe once so unsupported laws fail with NoQuantileForm, not inside quadrature.
    dist.density_at_quantile(0.5)?;
    let r = |p: f64| dist.density_at_quantile(p).unwrap_or(f64::NAN);
    let second = integrate(|p| r(p).powi(2), 0.0, 1.0, DEFAULT_ABS_TOL)?;
    let first = integrate(r, 0.0, 1.0, DEFAULT_ABS_TOL)?;
    Ok(MeasureValue {
        value: 0.25 * (second - first * first),
        method: Method::QuantileForm,
    })
}

/// Varextropy of the `n`-th upper record of an exponential(rate) sequence:
///
/// `λ²/16 · [4Γ(3n−2) / (Γ(n)³ 3^{3n−2}) − Γ(2n−1)² / (Γ(n)⁴ 4^{2n−2})]`
///
/// Both ratios are formed in log space, so large `n` cannot overflow.
pub fn record_varextropy_exponential(n: u32, rate: f64) -> Result<MeasureValue> {
    if n == 0 {
        return Err(Error::ZeroRecordIndex);
    }
    DistributionSpec::exponential(rate)?;
    let n = f64::from(n);
    let lg_n = log_gamma(n)?;
    let first = 4f64.ln() + log_gamma(3.0 * n - 2.0)? - 3.0 * lg_n - (3.0 * n - 2.0) * 3f64.ln();
    let second = 2.0 * log_gamma(2.0 * n - 1.0)? - 4.0 * lg_n - (2.0 * n - 2.0) * 4f64.ln();
    // e^a − e^b = e^b (e^{a−b} − 1)
    let bracket = second.exp() * (first - second).exp_m1();
    Ok(MeasureValue::closed(rate * rate / 16.0 * bracket))
}
