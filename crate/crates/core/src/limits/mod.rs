//! Reference limit objects: the Ω curve, the descent kernel, moment formulas, lower-bound
//! constants and goodness-of-fit statistics.

pub mod constants;
pub mod gof;
pub mod kernel;
pub mod moments;

pub use constants::{g_integral, lower_bound_constants, prior_theta_root, LowerBoundConstants};
pub use gof::{gaussian_cdf, ks_statistic, two_sample_ks, Cdf, Gaussian};
pub use kernel::{bernoulli_numbers, descent_window_probability, k0, KernelWindow};
pub use moments::{clicks_variance, las_mean, las_var};

use std::f64::consts::PI;

/// Ω(s) = (2/π)(s·arcsin s + √(1−s²)) for |s| < 1 and |s| otherwise.
pub fn omega(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        s.abs()
    } else {
        2.0 / PI * (s * s.asin() + (1.0 - s * s).sqrt())
    }
}
