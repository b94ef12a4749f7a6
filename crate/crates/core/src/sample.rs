use crate::error::{Error, Result};

/// Observations held as order statistics (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    sorted: Vec<f64>,
}

impl Sample {
    /// Validates and sorts the observations. Input order is irrelevant.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteObservation { index, value });
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Order statistics `X_{1:n} <= ... <= X_{n:n}`.
    pub fn order_statistics(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    /// Empirical distribution function: the fraction of observations `<= x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    /// Min-max rescaling onto `[0, 1]`. A constant sample maps to all zeros.
    pub fn rescaled_to_unit(&self) -> Self {
        let (lo, width) = (self.min(), self.range());
        let sorted = self
            .sorted
            .iter()
            .map(|&v| if width > 0.0 { (v - lo) / width } else { 0.0 })
            .collect();
        Self { sorted }
    }

    pub(crate) fn from_sorted_unchecked(sorted: Vec<f64>) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        Self { sorted }
    }
}
