//! Exact transition structure of the merge walk and of the inverse step.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::walks::{representative_cycles, split, CycleTypeLaw};

use super::enumerate::{enumerate_sn, lex_rank, WALK_MATRIX_CAP};
use super::law::ExactLaw;

/// One-step transition matrix of the merge walk on 𝔖_n, states in lexicographic order.
#[derive(Debug, Clone)]
pub struct WalkMatrix {
    states: Vec<Permutation>,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl WalkMatrix {
    pub fn states(&self) -> &[Permutation] {
        &self.states
    }

    /// Sparse row of the state with lexicographic index `i`.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn entry(&self, from: &Permutation, to: &Permutation) -> Rational {
        let j = lex_rank(to);
        self.rows[lex_rank(from)]
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn rows_sum_to_one(&self) -> bool {
        let one = Rational::from_integer(1.into());
        self.rows.iter().all(|r| r.iter().map(|(_, p)| p.clone()).sum::<Rational>() == one)
    }

    /// μ ↦ μP for a row vector μ indexed like `states`.
    pub fn apply(&self, mu: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.states.len()];
        for (i, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (j, p) in &self.rows[i] {
                out[*j] += m * p;
            }
        }
        out
    }

    pub fn apply_steps(&self, mu: &[Rational], steps: usize) -> Vec<Rational> {
        (0..steps).fold(mu.to_vec(), |acc, _| self.apply(&acc))
    }

    pub fn vector_of(&self, law: &ExactLaw<Permutation>) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.states.len()];
        for (s, w) in law.iter() {
            v[lex_rank(s)] = w.clone();
        }
        v
    }

    pub fn law_of(&self, v: &[Rational]) -> Result<ExactLaw<Permutation>> {
        ExactLaw::new(self.states.iter().cloned().zip(v.iter().cloned()))
    }

    /// Whether `v` gives equal mass to permutations of equal cycle type.
    pub fn is_class_uniform(&self, v: &[Rational]) -> bool {
        let mut seen: BTreeMap<Partition, Rational> = BTreeMap::new();
        self.states.iter().zip(v).all(|(s, w)| seen.entry(s.cycle_type()).or_insert_with(|| w.clone()) == w)
    }
}

/// Exact one-step matrix of the merge walk (n ≤ 6).
pub fn exact_walk_matrix(n: usize) -> Result<WalkMatrix> {
    if n > WALK_MATRIX_CAP {
        return Err(Error::CapExceeded { n, cap: WALK_MATRIX_CAP });
    }
    let states: Vec<Permutation> = enumerate_sn(n)?.collect();
    let rows = states.iter().enumerate().map(|(i, s)| merge_row(s, i)).collect();
    Ok(WalkMatrix { states, rows })
}

fn merge_row(sigma: &Permutation, index: usize) -> Vec<(usize, Rational)> {
    let pairs = sigma.admissible_merge_pairs();
    if pairs.is_empty() {
        return vec![(index, Rational::from_integer(1.into()))];
    }
    let p = Rational::new(1.into(), pairs.len().into());
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, j) in pairs {
        let mut t = sigma.clone();
        t.swap_positions(i - 1, j - 1);
        *acc.entry(lex_rank(&t)).or_insert_with(Rational::zero) += &p;
    }
    acc.into_iter().collect()
}

/// Exact law after `steps` merge steps from `start`, without building a matrix (n ≤ 8).
pub fn exact_merge_law(start: &ExactLaw<Permutation>, steps: usize) -> Result<ExactLaw<Permutation>> {
    let mut current: BTreeMap<Permutation, Rational> = start.iter().map(|(s, w)| (s.clone(), w.clone())).collect();
    for _ in 0..steps {
        let mut next: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (s, w) in current {
            let pairs = s.admissible_merge_pairs();
            if pairs.is_empty() {
                *next.entry(s).or_insert_with(Rational::zero) += w;
                continue;
            }
            let p = w / Rational::from_integer(pairs.len().into());
            for (i, j) in pairs {
                let mut t = s.clone();
                t.swap_positions(i - 1, j - 1);
                *next.entry(t).or_insert_with(Rational::zero) += &p;
            }
        }
        current = next;
    }
    ExactLaw::new(current)
}

/// Uniform law on the conjugacy class of cycle type λ.
pub fn class_uniform_law(lambda: &Partition) -> Result<ExactLaw<Permutation>> {
    let n = lambda.size();
    let rep = Permutation::from_cycles(n, &representative_cycles(lambda))?;
    let members: Vec<Permutation> = enumerate_sn(n)?.filter(|s| s.cycle_type() == *lambda).collect();
    debug_assert!(members.contains(&rep));
    ExactLaw::uniform(members)
}

/// Exact output law of the inverse step: σ from `input` (single cycles), `i` uniform and λ
/// from an explicit cycle-type law.
pub fn exact_inverse_step_law(input: &ExactLaw<Permutation>, law: &CycleTypeLaw) -> Result<ExactLaw<Permutation>> {
    let CycleTypeLaw::Explicit(weights) = law else {
        return Err(Error::InvalidParameter("exact inverse step needs an explicit cycle-type law".into()));
    };
    let mut items = Vec::new();
    for (sigma, w) in input.iter() {
        let n = sigma.len();
        let pi = Rational::new(1.into(), n.into());
        for i in 1..=n {
            for (lambda, wl) in weights {
                items.push((split(sigma, i, lambda)?, w * &pi * wl));
            }
        }
    }
    ExactLaw::new(items)
}
