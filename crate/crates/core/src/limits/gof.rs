//! Normal distribution function and Kolmogorov–Smirnov distances.

use statrs::function::erf::erfc;

use crate::empirical::EmpiricalDistribution;
use crate::error::{Error, Result};

/// A distribution function with an explicit left limit (equal to the CDF when continuous).
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;

    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    mean: f64,
    sd: f64,
}

impl Gaussian {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) || !variance.is_finite() || !mean.is_finite() {
            return Err(Error::Degenerate(format!("Gaussian with mean {mean} and variance {variance}")));
        }
        Ok(Self { mean, sd: variance.sqrt() })
    }
}

impl Cdf for Gaussian {
    fn cdf(&self, x: f64) -> f64 {
        0.5 * erfc(-(x - self.mean) / (self.sd * std::f64::consts::SQRT_2))
    }
}

impl Cdf for EmpiricalDistribution {
    fn cdf(&self, x: f64) -> f64 {
        self.ecdf(x)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.ecdf_left(x)
    }
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, x: f64) -> f64 {
        self(x)
    }
}

pub fn gaussian_cdf(x: f64, mean: f64, variance: f64) -> Result<f64> {
    Ok(Gaussian::new(mean, variance)?.cdf(x))
}

/// sup_x |F_n(x) − F(x)|, checking both sides of every jump of the sample ECDF.
pub fn ks_statistic(sample: &EmpiricalDistribution, cdf: &impl Cdf) -> f64 {
    let v = sample.values();
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < v.len() {
        let x = v[i];
        let mut k = i;
        while k < v.len() && v[k] == x {
            k += 1;
        }
        let below = i as f64 / n;
        let upto = k as f64 / n;
        d = d.max((below - cdf.cdf_left(x)).abs()).max((upto - cdf.cdf(x)).abs());
        i = k;
    }
    d
}

/// sup_x |F_a(x) − F_b(x)| over the pooled sample; ties are handled exactly.
pub fn two_sample_ks(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (va, vb) = (a.values(), b.values());
    let (na, nb) = (va.len() as f64, vb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < va.len() || j < vb.len() {
        let x = match (va.get(i), vb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < va.len() && va[i] == x {
            i += 1;
        }
        while j < vb.len() && vb[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_symmetry() {
        assert_eq!(gaussian_cdf(0.0, 0.0, 1.0).unwrap(), 0.5);
        for k in -400..=400 {
            let x = k as f64 / 50.0;
            let s = gaussian_cdf(x, 0.0, 1.0).unwrap() + gaussian_cdf(-x, 0.0, 1.0).unwrap();
            assert!((s - 1.0).abs() < 1e-10);
        }
        assert!((gaussian_cdf(1.96, 0.0, 1.0).unwrap() - 0.975_002_104_851_780).abs() < 1e-10);
        assert!(gaussian_cdf(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn ks_self_and_identical() {
        let s = EmpiricalDistribution::new(vec![1.0, 2.0, 2.0, 3.0, 7.0]).unwrap();
        assert_eq!(ks_statistic(&s, &s), 0.0);
        assert_eq!(two_sample_ks(&s, &s.clone()), 0.0);
        let t = EmpiricalDistribution::new(vec![10.0, 11.0]).unwrap();
        assert_eq!(two_sample_ks(&s, &t), 1.0);
    }

    #[test]
    fn ks_against_uniform() {
        let s = EmpiricalDistribution::new(vec![0.5]).unwrap();
        let u = |x: f64| x.clamp(0.0, 1.0);
        assert!((ks_statistic(&s, &u) - 0.5).abs() < 1e-15);
    }
}
