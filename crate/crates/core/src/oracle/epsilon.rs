//! Exact one-step and whole-trajectory error functionals of the merge walk.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::stats::StatisticSpec;

use super::enumerate::{enumerate_sn, lex_rank, FINAL_SET_CAP};

/// Normalization of a statistic: f = statistic / scale(n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scaling {
    One,
    SqrtN,
    N,
    Power(f64),
}

impl Scaling {
    /// Parses `1`, `sqrt`, `n` or `n^p`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Self::One),
            "sqrt" | "sqrt(n)" => Ok(Self::SqrtN),
            "n" => Ok(Self::N),
            t => t
                .strip_prefix("n^")
                .and_then(|p| p.parse::<f64>().ok())
                .map(Self::Power)
                .ok_or_else(|| Error::Parse(format!("bad scaling `{s}`"))),
        }
    }

    pub fn factor(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            Self::One => 1.0,
            Self::SqrtN => n.sqrt(),
            Self::N => n,
            Self::Power(p) => n.powf(p),
        }
    }
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "1"),
            Self::SqrtN => write!(f, "sqrt"),
            Self::N => write!(f, "n"),
            Self::Power(p) => write!(f, "n^{p}"),
        }
    }
}

/// ε_{n,k}, ε′_{n,k} (index `k−1`) and ε_n, both in raw integer units and scaled.
#[derive(Debug, Clone, Serialize)]
pub struct EpsilonTable {
    pub n: usize,
    pub statistic: String,
    pub scaling: String,
    pub eps_raw: Vec<i64>,
    pub eps_prime_raw: Vec<i64>,
    pub eps_n_raw: i64,
    pub scale: f64,
    pub eps: Vec<f64>,
    pub eps_prime: Vec<f64>,
    pub eps_n: f64,
    /// ε′_{n,k} ≤ Σ_{2≤i≤k} ε_{n,i} ≤ (k−1)·ε_n for every k.
    pub chain_holds: bool,
}

/// Exhaustive computation over 𝔖_n (n ≤ 6). ε_n is the maximum of ε_{n,k} over all k, so
/// that the chain of inequalities is meaningful for every k ≤ n.
pub fn exact_epsilon(n: usize, statistic: &StatisticSpec, scaling: Scaling) -> Result<EpsilonTable> {
    if n > FINAL_SET_CAP {
        return Err(Error::CapExceeded { n, cap: FINAL_SET_CAP });
    }
    let states: Vec<Permutation> = enumerate_sn(n)?.collect();
    let values = states.iter().map(|s| statistic.eval_int(s)).collect::<Result<Vec<i64>>>()?;
    let cycles: Vec<usize> = states.iter().map(Permutation::num_cycles).collect();
    let next: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            let mut targets: Vec<usize> = s
                .admissible_merge_pairs()
                .into_iter()
                .map(|(i, j)| {
                    let mut t = s.clone();
                    t.swap_positions(i - 1, j - 1);
                    lex_rank(&t)
                })
                .collect();
            targets.sort_unstable();
            targets.dedup();
            targets
        })
        .collect();

    let mut eps_raw = vec![0i64; n];
    for (i, targets) in next.iter().enumerate() {
        for &t in targets {
            let d = (values[i] - values[t]).abs();
            let k = cycles[i] - 1;
            eps_raw[k] = eps_raw[k].max(d);
        }
    }

    let mut order: Vec<usize> = (0..states.len()).collect();
    order.sort_by_key(|&i| cycles[i]);
    let mut range = vec![(0i64, 0i64); states.len()];
    for &i in &order {
        range[i] = if next[i].is_empty() {
            (values[i], values[i])
        } else {
            next[i].iter().fold((i64::MAX, i64::MIN), |(lo, hi), &t| (lo.min(range[t].0), hi.max(range[t].1)))
        };
    }
    let mut eps_prime_raw = vec![0i64; n];
    for i in 0..states.len() {
        let d = (values[i] - range[i].0).abs().max((values[i] - range[i].1).abs());
        let k = cycles[i] - 1;
        eps_prime_raw[k] = eps_prime_raw[k].max(d);
    }

    let eps_n_raw = eps_raw.iter().copied().max().unwrap_or(0);
    let chain_holds = (1..=n).all(|k| {
        let partial: i64 = eps_raw[1..k].iter().sum();
        eps_prime_raw[k - 1] <= partial && partial <= (k as i64 - 1) * eps_n_raw
    });
    let scale = scaling.factor(n);
    Ok(EpsilonTable {
        n,
        statistic: statistic.to_string(),
        scaling: scaling.to_string(),
        eps: eps_raw.iter().map(|&e| e as f64 / scale).collect(),
        eps_prime: eps_prime_raw.iter().map(|&e| e as f64 / scale).collect(),
        eps_n: eps_n_raw as f64 / scale,
        eps_raw,
        eps_prime_raw,
        eps_n_raw,
        scale,
        chain_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lis_over_sqrt_n() {
        let t = exact_epsilon(4, &StatisticSpec::Lis, Scaling::SqrtN).unwrap();
        assert_eq!(t.eps_n, 1.0);
        assert!(t.chain_holds);
        assert_eq!(t.eps_prime_raw[0], 0);
    }

    #[test]
    fn las_over_n() {
        let t = exact_epsilon(5, &StatisticSpec::Las, Scaling::N).unwrap();
        assert!(t.eps_n <= 6.0 / 5.0);
        assert!(t.chain_holds);
    }

    #[test]
    fn several_statistics_satisfy_the_chain() {
        for s in ["lds", "desc", "peaks", "fix", "clicks:2", "rsk:2", "lics"] {
            let spec = StatisticSpec::parse(s).unwrap();
            for n in 2..=6 {
                let t = exact_epsilon(n, &spec, Scaling::One).unwrap();
                assert!(t.chain_holds, "{s} at n = {n}");
                assert_eq!(t.eps_prime_raw[0], 0);
            }
        }
        assert!(exact_epsilon(7, &StatisticSpec::Lis, Scaling::One).is_err());
        assert_eq!(Scaling::parse("n^0.5").unwrap(), Scaling::Power(0.5));
    }
}
