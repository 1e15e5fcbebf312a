//! The descent kernel k₀: Laurent coefficients of 1/(1−e^z), and its Toeplitz minors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, Rational};

/// B₀, …, B_m with B₁ = −1/2, from Σ_{k≤m} C(m+1,k) B_k = 0.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for k in 1..=m {
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bi;
            binom = binom * BigInt::from(k + 1 - i) / BigInt::from(i + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// k₀(i) = −B_{i+1}/(i+1)! for i ≥ −1, and 0 for i ≤ −2.
pub fn k0(i: i64) -> Rational {
    if i <= -2 {
        return Rational::zero();
    }
    let m = (i + 1) as usize;
    let b = bernoulli_numbers(m).pop().unwrap();
    let fact: BigInt = (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    -b / Rational::from_integer(fact)
}

/// The matrix [k(j−i)]_{i,j∈A} for a finite increasing set A.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWindow {
    set: Vec<usize>,
    matrix: Vec<Vec<Rational>>,
}

impl KernelWindow {
    pub fn new(set: &[usize]) -> Result<Self> {
        Self::with_kernel(set, k0)
    }

    /// Builds the window from an arbitrary kernel; used to test the checker itself.
    pub fn with_kernel(set: &[usize], kernel: impl Fn(i64) -> Rational) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::Degenerate("empty descent window".into()));
        }
        if set.contains(&0) {
            return Err(Error::OutOfRange { value: 0, n: *set.iter().max().unwrap() });
        }
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let max = *set.last().unwrap() as i64;
        let table: Vec<Rational> = (-max..=max).map(&kernel).collect();
        let matrix = set
            .iter()
            .map(|&a| set.iter().map(|&b| table[(b as i64 - a as i64 + max) as usize].clone()).collect())
            .collect();
        Ok(Self { set, matrix })
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.matrix)
    }
}

/// ℙ(A ⊆ D(σ)) for a uniform σ ∈ 𝔖_n with n > max A, as det[k₀(j−i)].
pub fn descent_window_probability(set: &[usize]) -> Result<Rational> {
    Ok(KernelWindow::new(set)?.determinant())
}
