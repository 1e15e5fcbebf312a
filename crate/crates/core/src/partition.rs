//! Integer partitions, used both as cycle types and as RSK shapes.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts the parts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// The one-row partition `(n)`.
    pub fn single_row(n: usize) -> Self {
        Self { parts: vec![n] }
    }

    /// The one-column partition `(1, …, 1)`.
    pub fn single_column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ_i with 1-based `i`; zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Σ_{k≤i} λ_k.
    pub fn prefix_sum(&self, i: usize) -> usize {
        self.parts.iter().take(i).sum()
    }

    /// The transposed partition λ′.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Σ λ_k².
    pub fn sum_of_squares(&self) -> usize {
        self.parts.iter().map(|p| p * p).sum()
    }

    /// Multiplicity of the part `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// Size of the centralizer of a permutation with this cycle type: Π_j j^{m_j} m_j!.
    pub fn centralizer_size(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let j = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&p| p == j).count();
            for k in 1..=m {
                z *= BigUint::from(j) * BigUint::from(k);
            }
            i += m;
        }
        z
    }

    /// Number of permutations of `size()` elements with this cycle type: n!/z_λ.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.centralizer_size()
    }

    /// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: current.clone() });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }

    /// Parses a comma- or space-separated list of parts, e.g. `"3,2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::Parse(format!("empty partition `{s}`")));
        }
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugate_of_hook() {
        let p = Partition::new(vec![2, 1, 1, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[4, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=7 {
            let total: BigUint = Partition::all(n).iter().map(|p| p.class_size()).sum();
            assert_eq!(total, factorial(n));
        }
        let p = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(p.class_size(), BigUint::from(3u32));
    }
}
