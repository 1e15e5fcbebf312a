//! Sorted samples with summary moments and ECDF queries.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
    mean: f64,
    variance: f64,
}

impl EmpiricalDistribution {
    /// Rejects empty input and NaN values.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Degenerate("empty sample".into()));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Degenerate("sample contains NaN".into()));
        }
        values.sort_by(|a, b| a.total_cmp(b));
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let variance = if values.len() > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Ok(Self { sorted: values, mean, variance })
    }

    pub fn from_counts<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(|v| v as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance (zero for a single observation).
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.len() as f64).sqrt()
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.len() - 1]
    }

    /// Linear-interpolation quantile; `quantile(0) = min`, `quantile(1) = max`.
    pub fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let h = p * (self.len() - 1) as f64;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        self.sorted[lo] + (h - lo as f64) * (self.sorted[hi] - self.sorted[lo])
    }

    /// Fraction of the sample `≤ x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Fraction of the sample `< x`.
    pub fn ecdf_left(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v < x) as f64 / self.len() as f64
    }

    /// Applies `f` to every value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.sorted.iter().map(|&v| f(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_and_quantiles() {
        let d = EmpiricalDistribution::new(vec![3.0, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(d.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.mean(), 2.5);
        assert!((d.variance() - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(d.quantile(0.0), 1.0);
        assert_eq!(d.quantile(1.0), 4.0);
        assert_eq!(d.quantile(0.5), 2.5);
        assert_eq!(d.ecdf(2.0), 0.5);
        assert_eq!(d.ecdf_left(2.0), 0.25);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(EmpiricalDistribution::new(vec![]).is_err());
        assert!(EmpiricalDistribution::new(vec![f64::NAN]).is_err());
        assert_eq!(EmpiricalDistribution::new(vec![1.0]).unwrap().variance(), 0.0);
    }
}
