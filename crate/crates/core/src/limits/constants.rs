//! Constants of the LIS lower bounds without cycle conditions.

use serde::Serialize;

use super::omega;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundConstants {
    /// θ′ = 4 − √13.
    pub theta_prime: f64,
    /// θ″ = 2(1 − θ′) = 2√13 − 6.
    pub theta_double_prime: f64,
    /// The root θ of G(2√x) = (2 + x)/12.
    pub prior_theta: f64,
    /// 2√θ.
    pub prior_bound: f64,
}

pub fn lower_bound_constants() -> LowerBoundConstants {
    let s13 = 13f64.sqrt();
    let theta = prior_theta_root();
    LowerBoundConstants {
        theta_prime: 4.0 - s13,
        theta_double_prime: 2.0 * s13 - 6.0,
        prior_theta: theta,
        prior_bound: 2.0 * theta.sqrt(),
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// G(x) = ∫_{−1}^{1} (Ω(s) − |s + x/2| − x/2)₊ ds on [0, 2].
pub fn g_integral(x: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("G is defined on [0, 2], got {x}")));
    }
    let f = |s: f64| (omega(s) - (s + x / 2.0).abs() - x / 2.0).max(0.0);
    // The integrand has a kink at s = −x/2; splitting there keeps the quadrature accurate.
    let k = -x / 2.0;
    Ok(integrate(f, -1.0, k, 1e-11) + integrate(f, k, 1.0, 1e-11))
}

/// Solves G(2√x) = (2 + x)/12 on [0, 1] by bisection.
pub fn prior_theta_root() -> f64 {
    let h = |x: f64| g_integral(2.0 * x.sqrt()).expect("argument lies in [0, 2]") - (2.0 + x) / 12.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    debug_assert!(h(lo) > 0.0 && h(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}
