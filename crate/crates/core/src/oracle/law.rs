//! Exact finite laws and their pushforwards.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::sampling::LawSpec;

use super::enumerate::enumerate_sn;

/// A finitely supported law with rational weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactLaw<T: Ord> {
    weights: BTreeMap<T, Rational>,
}

impl<T: Ord + Clone> ExactLaw<T> {
    /// Merges repeated support points; rejects negative weights and totals other than one.
    pub fn new(items: impl IntoIterator<Item = (T, Rational)>) -> Result<Self> {
        let mut weights: BTreeMap<T, Rational> = BTreeMap::new();
        for (x, w) in items {
            if w.is_negative() {
                return Err(Error::InvalidParameter("negative weight".into()));
            }
            *weights.entry(x).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        let total: Rational = weights.values().cloned().sum();
        if total != Rational::one() {
            return Err(Error::InvalidParameter(format!("weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    /// Uniform law on the given (distinct) points.
    pub fn uniform(points: impl IntoIterator<Item = T>) -> Result<Self> {
        let points: Vec<T> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::Degenerate("uniform law on an empty set".into()));
        }
        let w = Rational::new(1.into(), points.len().into());
        Self::new(points.into_iter().map(|p| (p, w.clone())))
    }

    pub fn probability(&self, x: &T) -> Rational {
        self.weights.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total variation distance ½Σ|p − q|.
    pub fn total_variation(&self, other: &Self) -> Rational {
        let mut keys: Vec<&T> = self.weights.keys().chain(other.weights.keys()).collect();
        keys.sort();
        keys.dedup();
        let s: Rational = keys.iter().map(|k| (self.probability(k) - other.probability(k)).abs()).sum();
        s / Rational::from_integer(2.into())
    }
}

impl ExactLaw<i64> {
    pub fn mean(&self) -> Rational {
        self.weights.iter().map(|(x, w)| Rational::from_integer((*x).into()) * w).sum()
    }

    pub fn variance(&self) -> Rational {
        let m = self.mean();
        self.weights
            .iter()
            .map(|(x, w)| {
                let d = Rational::from_integer((*x).into()) - &m;
                &d * &d * w
            })
            .sum()
    }
}

/// The law of `spec` on 𝔖_n, by enumeration (n ≤ 8).
pub fn exact_law(spec: &LawSpec, n: usize) -> Result<ExactLaw<Permutation>> {
    let mut items = Vec::new();
    for sigma in enumerate_sn(n)? {
        let p = spec.probability(&sigma)?;
        if !p.is_zero() {
            items.push((sigma, p));
        }
    }
    ExactLaw::new(items)
}

/// The exact law of `statistic(σ)`.
pub fn exact_pushforward<T, S>(law: &ExactLaw<T>, statistic: impl Fn(&T) -> Result<S>) -> Result<ExactLaw<S>>
where
    T: Ord + Clone,
    S: Ord + Clone,
{
    let items = law
        .iter()
        .map(|(x, w)| Ok((statistic(x)?, w.clone())))
        .collect::<Result<Vec<_>>>()?;
    ExactLaw::new(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::stats::{descent_count, lis};

    #[test]
    fn pushforward_examples() {
        let u3 = exact_law(&LawSpec::Uniform, 3).unwrap();
        let l = exact_pushforward(&u3, |s| Ok(lis(s) as i64)).unwrap();
        assert_eq!(l.probability(&1), rat(1, 6));
        assert_eq!(l.probability(&2), rat(2, 3));
        assert_eq!(l.probability(&3), rat(1, 6));
        let d = exact_pushforward(&u3, |s| Ok(descent_count(s) as i64)).unwrap();
        assert_eq!((d.probability(&0), d.probability(&1), d.probability(&2)), (rat(1, 6), rat(2, 3), rat(1, 6)));
        let e = exact_law(&LawSpec::parse("ewens:1").unwrap(), 3).unwrap();
        let fix = exact_pushforward(&e, |s| Ok(s.fixed_point_count() as i64)).unwrap();
        assert_eq!(fix.mean(), rat(1, 1));
    }

    #[test]
    fn ewens_examples() {
        let e2 = exact_law(&LawSpec::parse("ewens:2").unwrap(), 3).unwrap();
        assert_eq!(e2.probability(&Permutation::identity(3)), rat(1, 3));
        let e0 = exact_law(&LawSpec::parse("ewens:0").unwrap(), 4).unwrap();
        assert_eq!(e0.len(), 6);
        assert!(e0.iter().all(|(s, w)| s.is_single_cycle() && *w == rat(1, 6)));
        let c = exact_law(&LawSpec::parse("class:n").unwrap(), 4).unwrap();
        assert_eq!(c, e0);
        assert_eq!(c.total_variation(&e0), rat(0, 1));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(ExactLaw::new(vec![(1i64, rat(1, 2))]).is_err());
        assert!(ExactLaw::new(vec![(1i64, rat(3, 2)), (2, rat(-1, 2))]).is_err());
        assert!(ExactLaw::<i64>::uniform(vec![]).is_err());
    }
}
