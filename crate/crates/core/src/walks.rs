//! Markov operators on 𝔖_n: the cycle-merging walk, the splitting operator used by the
//! inverse walk, and the threshold merge.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::{to_f64, Rational};
use crate::rng::RandomSource;
use crate::sampling::LawSpec;

/// States visited by a walk.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WalkTrace {
    pub states: Vec<Permutation>,
    pub steps: usize,
}

fn cycles_as_lists(sigma: &Permutation) -> Vec<Vec<u32>> {
    let (id, lengths) = sigma.cycle_index();
    let mut lists: Vec<Vec<u32>> = lengths.iter().map(|&l| Vec::with_capacity(l)).collect();
    for (x, &c) in id.iter().enumerate() {
        lists[c as usize].push(x as u32);
    }
    lists
}

/// Draws an ordered pair `(i,j)` (0-based) uniformly among pairs with `j` outside the cycle
/// of `i`, or `None` when σ is a single cycle.
pub fn sample_merge_pair(sigma: &Permutation, rng: &mut RandomSource) -> Option<(usize, usize)> {
    let (id, lengths) = sigma.cycle_index();
    if lengths.len() < 2 {
        return None;
    }
    let n = sigma.len() as u128;
    let total: u128 = lengths.iter().map(|&l| l as u128 * (n - l as u128)).sum();
    let mut r = rng.below_u128(total);
    let mut ci = 0;
    for (c, &l) in lengths.iter().enumerate() {
        let w = l as u128 * (n - l as u128);
        if r < w {
            ci = c;
            break;
        }
        r -= w;
    }
    let li = lengths[ci];
    let mut ri = rng.below(li);
    let mut rj = rng.below(sigma.len() - li);
    let (mut i, mut j) = (usize::MAX, usize::MAX);
    for (x, &c) in id.iter().enumerate() {
        if c as usize == ci {
            if ri == 0 && i == usize::MAX {
                i = x;
            }
            ri = ri.wrapping_sub(1);
        } else {
            if rj == 0 && j == usize::MAX {
                j = x;
            }
            rj = rj.wrapping_sub(1);
        }
    }
    Some((i, j))
}

/// One step of the merge walk T: σ∘(i,j) for a uniform admissible ordered pair, or σ itself
/// when σ is a single cycle.
pub fn merge_step(sigma: &Permutation, rng: &mut RandomSource) -> Permutation {
    let mut out = sigma.clone();
    if let Some((i, j)) = sample_merge_pair(sigma, rng) {
        out.swap_positions(i, j);
    }
    out
}

/// Applies the merge walk #(σ)−1 times, ending on a single cycle.
pub fn run_to_single_cycle(sigma: &Permutation, rng: &mut RandomSource, record: bool) -> (Permutation, WalkTrace) {
    let mut trace = WalkTrace::default();
    if record {
        trace.states.push(sigma.clone());
    }
    let mut current = sigma.clone();
    let mut lists = cycles_as_lists(sigma);
    let n = sigma.len();
    // Cycle membership is tracked incrementally so that each step costs O(#cycles).
    while lists.len() > 1 {
        let total: u128 = lists.iter().map(|c| c.len() as u128 * (n - c.len()) as u128).sum();
        let mut r = rng.below_u128(total);
        let mut ci = 0;
        for (c, list) in lists.iter().enumerate() {
            let w = list.len() as u128 * (n - list.len()) as u128;
            if r < w {
                ci = c;
                break;
            }
            r -= w;
        }
        let mut rj = rng.below(n - lists[ci].len());
        let mut cj = 0;
        for (c, list) in lists.iter().enumerate() {
            if c == ci {
                continue;
            }
            if rj < list.len() {
                cj = c;
                break;
            }
            rj -= list.len();
        }
        let i = lists[ci][rng.below(lists[ci].len())] as usize;
        let j = lists[cj][rj] as usize;
        current.swap_positions(i, j);
        let absorbed = lists.swap_remove(cj.max(ci));
        let keep = cj.min(ci);
        lists[keep].extend(absorbed);
        trace.steps += 1;
        if record {
            trace.states.push(current.clone());
        }
    }
    (current, trace)
}

/// 𝔗_{i,λ}: cuts σ¹(i), σ²(i), …, σⁿ(i) into consecutive blocks of sizes λ₁, …, λ_ℓ and
/// makes each block a cycle.
pub fn split(sigma: &Permutation, i: usize, lambda: &Partition) -> Result<Permutation> {
    let n = sigma.len();
    if lambda.size() != n {
        return Err(Error::SizeMismatch { left: n, right: lambda.size() });
    }
    if i == 0 || i > n {
        return Err(Error::OutOfRange { value: i, n });
    }
    if !sigma.is_single_cycle() {
        return Err(Error::NotSingleCycle);
    }
    let w = sigma.as_zero_based();
    let mut seq = Vec::with_capacity(n);
    let mut x = w[i - 1];
    for _ in 0..n {
        seq.push(x);
        x = w[x as usize];
    }
    let mut word = vec![0u32; n];
    let mut start = 0;
    for &part in lambda.parts() {
        let block = &seq[start..start + part];
        for k in 0..part {
            word[block[k] as usize] = block[(k + 1) % part];
        }
        start += part;
    }
    Ok(Permutation::from_zero_based_unchecked(word))
}

/// A law on cycle types: explicit weights or the cycle type of a permutation law.
#[derive(Debug, Clone, PartialEq)]
pub enum CycleTypeLaw {
    Explicit(Vec<(Partition, Rational)>),
    OfLaw(LawSpec),
}

impl CycleTypeLaw {
    /// Validates nonnegative weights summing to one.
    pub fn explicit(weights: Vec<(Partition, Rational)>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|(_, w)| *w < Rational::zero()) {
            return Err(Error::InvalidParameter("cycle type weights must be nonnegative".into()));
        }
        let total: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::InvalidParameter(format!("cycle type weights sum to {total}, not 1")));
        }
        Ok(Self::Explicit(weights))
    }

    /// Exact cycle type law of a permutation law at size `n`.
    pub fn exact_of(law: &LawSpec, n: usize) -> Result<Self> {
        let mut weights = Vec::new();
        for lambda in Partition::all(n) {
            let rep = Permutation::from_cycles(n, &representative_cycles(&lambda))?;
            let w = law.probability(&rep)? * Rational::from_integer(lambda.class_size().into());
            if !w.is_zero() {
                weights.push((lambda, w));
            }
        }
        Self::explicit(weights)
    }

    pub fn sample(&self, n: usize, rng: &mut RandomSource) -> Result<Partition> {
        let lambda = match self {
            Self::Explicit(weights) => {
                let u = rng.uniform();
                let mut acc = 0.0;
                let mut chosen = &weights[weights.len() - 1].0;
                for (lambda, w) in weights {
                    acc += to_f64(w);
                    if u < acc {
                        chosen = lambda;
                        break;
                    }
                }
                chosen.clone()
            }
            Self::OfLaw(law) => law.sample(n, rng)?.cycle_type(),
        };
        if lambda.size() != n {
            return Err(Error::SizeMismatch { left: n, right: lambda.size() });
        }
        Ok(lambda)
    }
}

/// Cycles `(1..λ₁)(λ₁+1..)…` realizing the cycle type λ.
pub fn representative_cycles(lambda: &Partition) -> Vec<Vec<usize>> {
    let mut start = 1;
    lambda
        .parts()
        .iter()
        .map(|&p| {
            let c: Vec<usize> = (start..start + p).collect();
            start += p;
            c
        })
        .collect()
}

/// One step of the inverse walk: `split(σ, i, λ)` with `i` uniform and λ drawn from `law`.
pub fn inverse_step(sigma: &Permutation, law: &CycleTypeLaw, rng: &mut RandomSource) -> Result<Permutation> {
    if !sigma.is_single_cycle() {
        return Err(Error::NotSingleCycle);
    }
    let i = rng.below(sigma.len()) + 1;
    let lambda = law.sample(sigma.len(), rng)?;
    split(sigma, i, &lambda)
}

/// The deterministic skeleton of a threshold merge: candidate big cycles (all of maximal
/// length) and the short cycles (length < `j`), each as 0-based element lists, short cycles
/// ordered by their minimum.
#[derive(Debug, Clone)]
pub struct ThresholdPlan {
    pub cycles: Vec<Vec<u32>>,
    pub big_candidates: Vec<usize>,
    pub short: Vec<usize>,
}

pub fn threshold_plan(sigma: &Permutation, j: usize) -> Result<ThresholdPlan> {
    if j < 2 {
        return Err(Error::InvalidParameter(format!("threshold must be ≥ 2, got {j}")));
    }
    let cycles = cycles_as_lists(sigma);
    let max = cycles.iter().map(Vec::len).max().unwrap_or(0);
    let big_candidates = (0..cycles.len()).filter(|&c| cycles[c].len() == max).collect();
    let short = (0..cycles.len()).filter(|&c| cycles[c].len() < j).collect();
    Ok(ThresholdPlan { cycles, big_candidates, short })
}

/// Merges every cycle shorter than `j` into one of the longest cycles (chosen uniformly).
/// Short cycles are merged in increasing order of their minimum, each through σ∘(a,b) with
/// `a` uniform in the growing big cycle and `b` uniform in the short cycle. Afterwards every
/// cycle has length ≥ `j`, or σ is a single cycle.
pub fn threshold_merge(sigma: &Permutation, j: usize, rng: &mut RandomSource) -> Result<Permutation> {
    let plan = threshold_plan(sigma, j)?;
    let mut out = sigma.clone();
    if plan.short.is_empty() {
        return Ok(out);
    }
    let big = plan.big_candidates[rng.below(plan.big_candidates.len())];
    let mut members = plan.cycles[big].clone();
    for &c in plan.short.iter().filter(|&&c| c != big) {
        let a = members[rng.below(members.len())];
        let short = &plan.cycles[c];
        let b = short[rng.below(short.len())];
        out.swap_positions(a as usize, b as usize);
        members.extend_from_slice(short);
    }
    Ok(out)
}

/// Walk descriptors: `merge`, `merge-to-cycle`, `split:<λ>[:i]`, `inverse:<law>`, `threshold:<j>`.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkSpec {
    Merge,
    MergeToCycle,
    Split { lambda: Vec<crate::sampling::PartToken>, i: usize },
    Inverse(LawSpec),
    Threshold(usize),
}

impl WalkSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "merge" if rest.is_empty() => Ok(Self::Merge),
            "merge-to-cycle" if rest.is_empty() => Ok(Self::MergeToCycle),
            "split" => {
                let (lam, i) = match rest.rsplit_once(':') {
                    Some((lam, i)) => (lam, i.parse::<usize>().map_err(|_| Error::Parse(format!("bad label in `{s}`")))?),
                    None => (rest, 1),
                };
                match LawSpec::parse(&format!("class:{lam}"))? {
                    LawSpec::Class(lambda) => Ok(Self::Split { lambda, i }),
                    _ => unreachable!(),
                }
            }
            "inverse" => Ok(Self::Inverse(LawSpec::parse(rest)?)),
            "threshold" => {
                let j = rest.parse::<usize>().map_err(|_| Error::Parse(format!("bad threshold in `{s}`")))?;
                if j < 2 {
                    return Err(Error::InvalidParameter(format!("threshold must be ≥ 2, got {j}")));
                }
                Ok(Self::Threshold(j))
            }
            _ => Err(Error::Parse(format!("unknown walk `{s}`"))),
        }
    }

    /// Applies the walk once (or until absorption for `merge-to-cycle`), returning the final
    /// state and the number of steps taken.
    pub fn apply(&self, sigma: &Permutation, rng: &mut RandomSource) -> Result<(Permutation, usize)> {
        let n = sigma.len();
        match self {
            Self::Merge => {
                let steps = usize::from(!sigma.is_single_cycle());
                Ok((merge_step(sigma, rng), steps))
            }
            Self::MergeToCycle => {
                let (out, trace) = run_to_single_cycle(sigma, rng, false);
                Ok((out, trace.steps))
            }
            Self::Split { lambda, i } => {
                let lambda = LawSpec::class_partition(lambda, n)?;
                Ok((split(sigma, *i, &lambda)?, 1))
            }
            Self::Inverse(law) => Ok((inverse_step(sigma, &CycleTypeLaw::OfLaw(law.clone()), rng)?, 1)),
            Self::Threshold(j) => Ok((threshold_merge(sigma, *j, rng)?, 1)),
        }
    }
}

impl fmt::Display for WalkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Merge => write!(f, "merge"),
            Self::MergeToCycle => write!(f, "merge-to-cycle"),
            Self::Split { lambda, i } => {
                let law = LawSpec::Class(lambda.clone()).to_string();
                write!(f, "split:{}:{i}", &law["class:".len()..])
            }
            Self::Inverse(law) => write!(f, "inverse:{law}"),
            Self::Threshold(j) => write!(f, "threshold:{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn merge_step_on_transposition() {
        let s = Permutation::parse_cycles_in(3, "(1 2)").unwrap();
        let mut rng = RandomSource::new(1);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..4000 {
            *counts.entry(merge_step(&s, &mut rng).to_string()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 2);
        assert!(counts.values().all(|&c| c > 1800));
        let c = p("2,3,1");
        assert_eq!(merge_step(&c, &mut rng), c);
    }

    #[test]
    fn walk_reaches_single_cycle() {
        let mut rng = RandomSource::new(2);
        let id = Permutation::identity(30);
        let (out, trace) = run_to_single_cycle(&id, &mut rng, true);
        assert!(out.is_single_cycle());
        assert_eq!(trace.steps, 29);
        assert_eq!(trace.states.len(), 30);
        for (k, s) in trace.states.iter().enumerate() {
            assert_eq!(s.num_cycles(), 30 - k);
        }
        let c = Permutation::long_cycle(5);
        let (out, trace) = run_to_single_cycle(&c, &mut rng, false);
        assert_eq!((out, trace.steps), (c, 0));
    }

    #[test]
    fn split_examples() {
        let s = p("2,3,4,1");
        assert_eq!(split(&s, 1, &Partition::new(vec![2, 2]).unwrap()).unwrap(), p("4,3,2,1"));
        assert_eq!(split(&s, 3, &Partition::single_row(4)).unwrap(), s);
        assert!(split(&s, 2, &Partition::single_column(4)).unwrap().is_identity());
        assert_eq!(split(&Permutation::identity(4), 1, &Partition::single_row(4)), Err(Error::NotSingleCycle));
    }

    #[test]
    fn inverse_step_point_mass() {
        let law = CycleTypeLaw::explicit(vec![(Partition::single_row(5), rat(1, 1))]).unwrap();
        let mut rng = RandomSource::new(3);
        let s = Permutation::long_cycle(5);
        assert_eq!(inverse_step(&s, &law, &mut rng).unwrap(), s);
        let exact = CycleTypeLaw::exact_of(&LawSpec::Uniform, 3).unwrap();
        match exact {
            CycleTypeLaw::Explicit(w) => assert_eq!(w.len(), 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn threshold_examples() {
        let mut rng = RandomSource::new(4);
        let s = Permutation::parse_cycles_in(3, "(2 3)").unwrap();
        for _ in 0..50 {
            assert!(threshold_merge(&s, 2, &mut rng).unwrap().is_single_cycle());
        }
        let t = Permutation::parse_cycles_in(6, "(1 2 3)(4 5 6)").unwrap();
        assert_eq!(threshold_merge(&t, 3, &mut rng).unwrap(), t);
        assert!(threshold_merge(&t, 1, &mut rng).is_err());
        let id = Permutation::identity(8);
        for _ in 0..50 {
            let out = threshold_merge(&id, 3, &mut rng).unwrap();
            assert!(out.is_single_cycle());
        }
        let u = Permutation::parse_cycles_in(9, "(1 2 3 4)(5 6 7)(8)").unwrap();
        for _ in 0..50 {
            let out = threshold_merge(&u, 4, &mut rng).unwrap();
            assert!(out.cycle_decomposition().cycles().iter().all(|c| c.len() >= 4));
        }
    }

    #[test]
    fn walk_descriptors() {
        for s in ["merge", "merge-to-cycle", "split:2,2:1", "inverse:uniform", "threshold:3"] {
            assert_eq!(WalkSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(WalkSpec::parse("threshold:1").is_err());
        let mut rng = RandomSource::new(0);
        let (out, steps) = WalkSpec::parse("merge-to-cycle").unwrap().apply(&Permutation::identity(6), &mut rng).unwrap();
        assert!(out.is_single_cycle());
        assert_eq!(steps, 5);
    }
}
