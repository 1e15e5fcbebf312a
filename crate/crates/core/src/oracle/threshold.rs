//! Exact law of the threshold merge, compared with the uniform law on its outcomes.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::{to_f64, Rational};
use crate::walks::threshold_plan;

use super::enumerate::{enumerate_sn, FINAL_SET_CAP};
use super::law::ExactLaw;

/// Exact outcome law of `threshold_merge(σ, j)`.
pub fn threshold_merge_law(sigma: &Permutation, j: usize) -> Result<ExactLaw<Permutation>> {
    let plan = threshold_plan(sigma, j)?;
    if plan.short.is_empty() {
        return ExactLaw::uniform(vec![sigma.clone()]);
    }
    let mut items = Vec::new();
    let pb = Rational::new(1.into(), plan.big_candidates.len().into());
    for &big in &plan.big_candidates {
        let shorts: Vec<&Vec<u32>> = plan.short.iter().filter(|&&c| c != big).map(|&c| &plan.cycles[c]).collect();
        let mut stack = vec![(sigma.clone(), plan.cycles[big].clone(), 0usize, pb.clone())];
        while let Some((state, members, k, p)) = stack.pop() {
            if k == shorts.len() {
                items.push((state, p));
                continue;
            }
            let short = shorts[k];
            let q = &p / Rational::from_integer((members.len() * short.len()).into());
            for &a in &members {
                for &b in short {
                    let mut next = state.clone();
                    next.swap_positions(a as usize, b as usize);
                    let mut grown = members.clone();
                    grown.extend_from_slice(short);
                    stack.push((next, grown, k + 1, q.clone()));
                }
            }
        }
    }
    ExactLaw::new(items)
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdComparison {
    pub n: usize,
    pub cases: usize,
    /// Cases whose outcome law differs from the uniform law on the same outcome set.
    pub non_uniform_cases: usize,
    /// Largest total variation distance to the uniform-over-outcomes law.
    pub max_tv: String,
    pub max_tv_f64: f64,
    pub witness: Option<(Permutation, usize)>,
}

/// Runs the comparison over every σ ∈ 𝔖_n and every threshold 2 ≤ j ≤ n (n ≤ 6).
pub fn threshold_comparison(n: usize) -> Result<ThresholdComparison> {
    if n > FINAL_SET_CAP {
        return Err(Error::CapExceeded { n, cap: FINAL_SET_CAP });
    }
    let mut out = ThresholdComparison {
        n,
        cases: 0,
        non_uniform_cases: 0,
        max_tv: "0".into(),
        max_tv_f64: 0.0,
        witness: None,
    };
    let mut best = Rational::zero();
    for sigma in enumerate_sn(n)? {
        for j in 2..=n.max(2) {
            let law = threshold_merge_law(&sigma, j)?;
            let uniform = ExactLaw::uniform(law.support().cloned())?;
            let tv = law.total_variation(&uniform);
            out.cases += 1;
            if !tv.is_zero() {
                out.non_uniform_cases += 1;
            }
            if tv > best {
                best = tv;
                out.witness = Some((sigma.clone(), j));
            }
        }
    }
    out.max_tv = best.to_string();
    out.max_tv_f64 = to_f64(&best);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn small_examples() {
        let s = Permutation::parse_cycles_in(3, "(2 3)").unwrap();
        let law = threshold_merge_law(&s, 2).unwrap();
        assert_eq!(law.len(), 2);
        assert!(law.iter().all(|(p, w)| p.is_single_cycle() && *w == rat(1, 2)));
        let id = threshold_merge_law(&Permutation::identity(3), 3).unwrap();
        assert_eq!(id.len(), 2);
        assert!(id.iter().all(|(_, w)| *w == rat(1, 2)));
        let c = Permutation::long_cycle(4);
        assert_eq!(threshold_merge_law(&c, 3).unwrap().len(), 1);
    }

    #[test]
    fn outcomes_satisfy_postcondition() {
        for n in 2..=5 {
            for sigma in enumerate_sn(n).unwrap() {
                for j in 2..=n {
                    for (out, _) in threshold_merge_law(&sigma, j).unwrap().iter() {
                        let d = out.cycle_decomposition();
                        assert!(d.num_cycles() == 1 || d.cycles().iter().all(|c| c.len() >= j));
                    }
                }
            }
        }
    }
}
