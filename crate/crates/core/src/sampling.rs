//! Permutation laws: uniform, Ewens(θ), uniform on a conjugacy class, and colored
//! permutations.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::{parse_rational, to_f64, Rational};
use crate::rng::RandomSource;

/// Fisher–Yates: every σ ∈ 𝔖_n with probability 1/n!.
pub fn sample_uniform(n: usize, rng: &mut RandomSource) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut word: Vec<u32> = (0..n as u32).collect();
    word.shuffle(rng);
    Ok(Permutation::from_zero_based_unchecked(word))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EwensParams {
    n: usize,
    theta: f64,
}

impl EwensParams {
    pub fn new(n: usize, theta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if !(theta >= 0.0) || theta.is_infinite() {
            return Err(Error::InvalidParameter(format!("Ewens parameter must be finite and ≥ 0, got {theta}")));
        }
        Ok(Self { n, theta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Chinese restaurant process on a successor array: element `t` opens a new cycle with
/// probability θ/(θ+t−1), otherwise it is seated right after a uniform earlier element.
pub fn sample_ewens(params: &EwensParams, rng: &mut RandomSource) -> Permutation {
    let n = params.n;
    let theta = params.theta;
    let mut next: Vec<u32> = vec![0; n];
    for t in 0..n {
        let opens = t == 0 || rng.uniform() * (theta + t as f64) < theta;
        if opens {
            next[t] = t as u32;
        } else {
            let u = rng.below(t);
            next[t] = next[u];
            next[u] = t as u32;
        }
    }
    Permutation::from_zero_based_unchecked(next)
}

/// Exact Ewens mass θ^{#(σ)−1} / Π_{i=1}^{n−1}(θ+i).
pub fn ewens_probability(sigma: &Permutation, theta: &Rational) -> Rational {
    let k = sigma.num_cycles();
    let mut num = Rational::one();
    for _ in 1..k {
        num *= theta;
    }
    let mut den = Rational::one();
    for i in 1..sigma.len() {
        den *= theta + Rational::from_integer(i.into());
    }
    num / den
}

/// Shuffles a word and brackets consecutive blocks of sizes λ₁, λ₂, … into cycles.
pub fn sample_cycle_type(lambda: &Partition, rng: &mut RandomSource) -> Result<Permutation> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    let mut labels: Vec<u32> = (0..n as u32).collect();
    labels.shuffle(rng);
    let mut word = vec![0u32; n];
    let mut start = 0;
    for &part in lambda.parts() {
        let block = &labels[start..start + part];
        for k in 0..part {
            word[block[k] as usize] = block[(k + 1) % part];
        }
        start += part;
    }
    Ok(Permutation::from_zero_based_unchecked(word))
}

/// Uniform n-cycle (Sattolo's algorithm).
pub fn sample_uniform_cycle(n: usize, rng: &mut RandomSource) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut word: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.below(i);
        word.swap(i, j);
    }
    Ok(Permutation::from_zero_based_unchecked(word))
}

/// Law of #(σ) under Ewens(θ): entry `k` is ℙ(#(σ) = k), for `k` in `0..=n`.
pub fn cycle_count_pmf(n: usize, theta: f64) -> Vec<f64> {
    let mut pmf = vec![0.0; n + 1];
    pmf[0] = 1.0;
    for i in 0..n {
        let p = if i == 0 { 1.0 } else { theta / (theta + i as f64) };
        for k in (0..=i + 1).rev() {
            let stay = pmf[k] * (1.0 - p);
            let up = if k > 0 { pmf[k - 1] * p } else { 0.0 };
            pmf[k] = stay + up;
        }
    }
    pmf
}

/// Exact rational version of [`cycle_count_pmf`].
pub fn cycle_count_pmf_exact(n: usize, theta: &Rational) -> Vec<Rational> {
    let mut pmf = vec![Rational::zero(); n + 1];
    pmf[0] = Rational::one();
    for i in 0..n {
        let p = if i == 0 {
            Rational::one()
        } else {
            theta / (theta + Rational::from_integer(i.into()))
        };
        let q = Rational::one() - &p;
        for k in (0..=i + 1).rev() {
            let stay = &pmf[k] * &q;
            let up = if k > 0 { &pmf[k - 1] * &p } else { Rational::zero() };
            pmf[k] = stay + up;
        }
    }
    pmf
}

/// E[#(σ)] = 1 + Σ_{i=2}^n θ/(i−1+θ).
pub fn cycle_count_mean(n: usize, theta: f64) -> f64 {
    1.0 + (2..=n).map(|i| theta / (i as f64 - 1.0 + theta)).sum::<f64>()
}

/// Var[#(σ)] = Σ_{i=1}^{n−1} θi/(θ+i)².
pub fn cycle_count_variance(n: usize, theta: f64) -> f64 {
    (1..n).map(|i| theta * i as f64 / ((theta + i as f64) * (theta + i as f64))).sum()
}

/// E[#₁(σ)] = nθ/(n−1+θ).
pub fn fixed_point_mean(n: usize, theta: f64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    n as f64 * theta / (n as f64 - 1.0 + theta)
}

/// A permutation together with a color map `{1..N} → {1..m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPermutation {
    sigma: Permutation,
    colors: Vec<u32>,
    m: usize,
}

impl ColoredPermutation {
    /// `colors[k]` is the 1-based color of position `k+1`.
    pub fn new(sigma: Permutation, colors: Vec<u32>, m: usize) -> Result<Self> {
        if colors.len() != sigma.len() {
            return Err(Error::SizeMismatch { left: sigma.len(), right: colors.len() });
        }
        if m == 0 || colors.iter().any(|&c| c == 0 || c as usize > m) {
            return Err(Error::InvalidParameter(format!("colors must lie in 1..={m}")));
        }
        Ok(Self { sigma, colors, m })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Independent pair of a permutation of size `n` drawn from `base` and a uniform color map.
pub fn sample_colored(n: usize, m: usize, base: &LawSpec, rng: &mut RandomSource) -> Result<ColoredPermutation> {
    if m == 0 {
        return Err(Error::InvalidParameter("at least one color is required".into()));
    }
    let sigma = base.sample(n, rng)?;
    let colors = (0..n).map(|_| rng.below(m) as u32 + 1).collect();
    ColoredPermutation::new(sigma, colors, m)
}

/// A part of a class descriptor: a literal size or `n` minus the literal parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartToken {
    Fixed(usize),
    Rest,
}

/// A permutation law descriptor: `uniform`, `ewens:θ`, `class:λ`, `colored:m:<base>`.
#[derive(Debug, Clone, PartialEq)]
pub enum LawSpec {
    Uniform,
    Ewens { theta: Rational },
    Class(Vec<PartToken>),
    Colored { m: usize, base: Box<LawSpec> },
}

impl LawSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "uniform" if rest.is_empty() => Ok(Self::Uniform),
            "ewens" => {
                let theta = parse_rational(rest)?;
                if theta < Rational::zero() {
                    return Err(Error::InvalidParameter(format!("negative Ewens parameter in `{s}`")));
                }
                Ok(Self::Ewens { theta })
            }
            "class" => {
                let body = rest.trim().trim_start_matches('(').trim_end_matches(')');
                let tokens = body
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        if t == "n" {
                            Ok(PartToken::Rest)
                        } else {
                            t.parse::<usize>()
                                .ok()
                                .filter(|&v| v > 0)
                                .map(PartToken::Fixed)
                                .ok_or_else(|| Error::Parse(format!("bad part `{t}` in `{s}`")))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                if tokens.is_empty() || tokens.iter().filter(|t| **t == PartToken::Rest).count() > 1 {
                    return Err(Error::Parse(format!("bad class descriptor `{s}`")));
                }
                Ok(Self::Class(tokens))
            }
            "colored" => {
                let (m, base) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected colored:m:<base> in `{s}`")))?;
                let m: usize = m.parse().map_err(|_| Error::Parse(format!("bad color count in `{s}`")))?;
                if m == 0 {
                    return Err(Error::InvalidParameter("at least one color is required".into()));
                }
                Ok(Self::Colored { m, base: Box::new(Self::parse(base)?) })
            }
            _ => Err(Error::Parse(format!("unknown law `{s}`"))),
        }
    }

    /// The cycle type requested by a class descriptor at size `n`.
    pub fn class_partition(tokens: &[PartToken], n: usize) -> Result<Partition> {
        let fixed: usize = tokens
            .iter()
            .map(|t| match t {
                PartToken::Fixed(v) => *v,
                PartToken::Rest => 0,
            })
            .sum();
        let has_rest = tokens.contains(&PartToken::Rest);
        if fixed > n || (!has_rest && fixed != n) || (has_rest && fixed == n) {
            return Err(Error::InvalidPartition(format!("class parts do not sum to n = {n}")));
        }
        let parts = tokens
            .iter()
            .map(|t| match t {
                PartToken::Fixed(v) => *v,
                PartToken::Rest => n - fixed,
            })
            .collect();
        Ok(Partition::from_unsorted(parts))
    }

    /// Draws the permutation part of the law at size `n`.
    pub fn sample(&self, n: usize, rng: &mut RandomSource) -> Result<Permutation> {
        match self {
            Self::Uniform => sample_uniform(n, rng),
            Self::Ewens { theta } => Ok(sample_ewens(&EwensParams::new(n, to_f64(theta))?, rng)),
            Self::Class(tokens) => sample_cycle_type(&Self::class_partition(tokens, n)?, rng),
            Self::Colored { base, .. } => base.sample(n, rng),
        }
    }

    pub fn colors(&self) -> Option<usize> {
        match self {
            Self::Colored { m, .. } => Some(*m),
            _ => None,
        }
    }

    /// Exact mass of `sigma` under the (uncolored part of the) law.
    pub fn probability(&self, sigma: &Permutation) -> Result<Rational> {
        let n = sigma.len();
        Ok(match self {
            Self::Uniform => Rational::new(1.into(), crate::partition::factorial(n).into()),
            Self::Ewens { theta } => ewens_probability(sigma, theta),
            Self::Class(tokens) => {
                let lambda = Self::class_partition(tokens, n)?;
                if sigma.cycle_type() == lambda {
                    Rational::new(1.into(), lambda.class_size().into())
                } else {
                    Rational::zero()
                }
            }
            Self::Colored { base, .. } => base.probability(sigma)?,
        })
    }
}

impl fmt::Display for LawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform => write!(f, "uniform"),
            Self::Ewens { theta } => write!(f, "ewens:{theta}"),
            Self::Class(tokens) => {
                write!(f, "class:")?;
                for (k, t) in tokens.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    match t {
                        PartToken::Fixed(v) => write!(f, "{v}")?,
                        PartToken::Rest => write!(f, "n")?,
                    }
                }
                Ok(())
            }
            Self::Colored { m, base } => write!(f, "colored:{m}:{base}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn uniform_singleton() {
        let mut rng = RandomSource::new(0);
        assert!(sample_uniform(1, &mut rng).unwrap().is_identity());
        assert!(sample_uniform(0, &mut rng).is_err());
    }

    #[test]
    fn ewens_zero_gives_cycles() {
        let mut rng = RandomSource::new(5);
        let p = EwensParams::new(50, 0.0).unwrap();
        for _ in 0..100 {
            assert!(sample_ewens(&p, &mut rng).is_single_cycle());
        }
        assert!(EwensParams::new(3, -1.0).is_err());
    }

    #[test]
    fn ewens_mass_examples() {
        let id = Permutation::identity(3);
        assert_eq!(ewens_probability(&id, &rat(2, 1)), rat(1, 3));
        assert_eq!(ewens_probability(&id, &rat(1, 1)), rat(1, 6));
        let c = Permutation::long_cycle(4);
        assert_eq!(ewens_probability(&c, &rat(0, 1)), rat(1, 6));
        assert_eq!(ewens_probability(&id.clone(), &rat(0, 1)), rat(0, 1));
    }

    #[test]
    fn cycle_type_sampler_hits_type() {
        let mut rng = RandomSource::new(11);
        let lambda = Partition::new(vec![4, 2, 2, 1]).unwrap();
        for _ in 0..200 {
            assert_eq!(sample_cycle_type(&lambda, &mut rng).unwrap().cycle_type(), lambda);
        }
        let ones = Partition::single_column(5);
        assert!(sample_cycle_type(&ones, &mut rng).unwrap().is_identity());
    }

    #[test]
    fn pmf_examples() {
        let pmf = cycle_count_pmf_exact(3, &rat(1, 1));
        assert_eq!(pmf, vec![rat(0, 1), rat(1, 3), rat(1, 2), rat(1, 6)]);
        let zero = cycle_count_pmf(6, 0.0);
        assert_eq!(zero[1], 1.0);
        let h10: f64 = (1..=10).map(|i| 1.0 / i as f64).sum();
        assert!((cycle_count_mean(10, 1.0) - h10).abs() < 1e-12);
        let pmf = cycle_count_pmf(10, 1.0);
        let mean: f64 = pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        assert!((mean - h10).abs() < 1e-12);
    }

    #[test]
    fn law_descriptors() {
        assert_eq!(LawSpec::parse("uniform").unwrap(), LawSpec::Uniform);
        assert_eq!(LawSpec::parse("ewens:0.5").unwrap(), LawSpec::Ewens { theta: rat(1, 2) });
        let c = LawSpec::parse("class:n").unwrap();
        assert_eq!(LawSpec::class_partition(match &c { LawSpec::Class(t) => t, _ => unreachable!() }, 7).unwrap(), Partition::single_row(7));
        let c = LawSpec::parse("class:(3,1)").unwrap();
        let mut rng = RandomSource::new(1);
        assert_eq!(c.sample(4, &mut rng).unwrap().cycle_type().parts(), &[3, 1]);
        assert!(c.sample(5, &mut rng).is_err());
        let col = LawSpec::parse("colored:3:ewens:2").unwrap();
        assert_eq!(col.colors(), Some(3));
        assert_eq!(col.to_string(), "colored:3:ewens:2");
        assert!(LawSpec::parse("mallows:1").is_err());
        assert!(LawSpec::parse("ewens:-1").is_err());
    }

    #[test]
    fn colored_two_by_two_support() {
        let mut rng = RandomSource::new(3);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            let c = sample_colored(2, 2, &LawSpec::Uniform, &mut rng).unwrap();
            seen.insert((c.sigma().one_line(), c.colors().to_vec()));
        }
        assert_eq!(seen.len(), 8);
    }
}
