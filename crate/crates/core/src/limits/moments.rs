//! Exact moment formulas.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// v_j = (C(4j−2, 2j−1) − 2·C(2j−1, j)²) / (2·((2j−1)!)²), the limiting variance of
/// K_j(σ)/n^{j−1/2}.
pub fn clicks_variance(j: usize) -> Result<Rational> {
    if j < 2 {
        return Err(Error::InvalidParameter(format!("clicks variance needs j ≥ 2, got {j}")));
    }
    let a = binomial(BigInt::from(4 * j - 2), BigInt::from(2 * j - 1));
    let b = binomial(BigInt::from(2 * j - 1), BigInt::from(j));
    let f: BigInt = (1..2 * j).map(BigInt::from).product();
    Ok(Rational::new(a - BigInt::from(2) * &b * &b, BigInt::from(2) * &f * &f))
}

/// E[LAS] = 2n/3 + 1/6 for uniform σ ∈ 𝔖_n, n ≥ 2.
pub fn las_mean(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("LAS mean formula needs n ≥ 2, got {n}")));
    }
    Ok(rat(2 * n as i64, 3) + rat(1, 6))
}

/// Var[LAS] = 8n/45 − 13/180 for uniform σ ∈ 𝔖_n, n ≥ 4.
pub fn las_var(n: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("LAS variance formula needs n ≥ 4, got {n}")));
    }
    Ok(rat(8 * n as i64, 45) - rat(13, 180))
}
