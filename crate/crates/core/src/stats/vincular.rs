//! Occurrences of vincular (dashed) patterns.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A pattern τ ∈ 𝔖_p with adjacency set X ⊆ {1..p−1}: an occurrence at positions
/// i₁ < … < i_p must have i_{x+1} = i_x + 1 for every x ∈ X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VincularPattern {
    tau: Permutation,
    adjacent: Vec<bool>,
}

impl VincularPattern {
    pub fn new(tau: Permutation, x: &[usize]) -> Result<Self> {
        let p = tau.len();
        let mut adjacent = vec![false; p];
        for &i in x {
            if i == 0 || i >= p {
                return Err(Error::InvalidParameter(format!("adjacency index {i} outside 1..{p}")));
            }
            adjacent[i] = true;
        }
        Ok(Self { tau, adjacent })
    }

    /// Parses `"132"` or `"1,3,2"` for τ and a comma list (possibly empty) for X.
    pub fn parse(tau: &str, x: &str) -> Result<Self> {
        let tau = if tau.contains(',') {
            Permutation::parse(tau)?
        } else {
            let digits = tau
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad pattern `{tau}`"))))
                .collect::<Result<Vec<_>>>()?;
            Permutation::from_one_line(&digits)?
        };
        let x = x
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad adjacency `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tau, &x)
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn size(&self) -> usize {
        self.tau.len()
    }

    /// q = card(X).
    pub fn adjacency_count(&self) -> usize {
        self.adjacent.iter().filter(|&&b| b).count()
    }

    pub fn adjacency(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| self.adjacent[i]).collect()
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = self.adjacency().iter().map(|i| i.to_string()).collect();
        write!(f, "({},{{{}}})", self.tau, x.join(","))
    }
}

/// Number of occurrences of `pattern` in σ, by backtracking over position tuples.
pub fn vincular_count(sigma: &Permutation, pattern: &VincularPattern) -> Result<u64> {
    let p = pattern.size();
    let w = sigma.as_zero_based();
    if p > w.len() {
        return Ok(0);
    }
    // rank[k] = τ(k+1) − 1; a partial tuple is consistent iff relative order matches τ.
    let rank = pattern.tau.as_zero_based();
    let mut chosen: Vec<u32> = Vec::with_capacity(p);
    let mut count = 0u64;
    fn rec(
        w: &[u32],
        rank: &[u32],
        adjacent: &[bool],
        start: usize,
        chosen: &mut Vec<u32>,
        count: &mut u64,
    ) {
        let k = chosen.len();
        if k == rank.len() {
            *count += 1;
            return;
        }
        let remaining = rank.len() - k;
        let range = if k > 0 && adjacent[k] { start..(start + 1).min(w.len()) } else { start..w.len() };
        for pos in range {
            if w.len() - pos < remaining {
                break;
            }
            let v = w[pos];
            let ok = chosen.iter().zip(rank).all(|(&c, &r)| (c < v) == (r < rank[k]));
            if ok {
                chosen.push(v);
                rec(w, rank, adjacent, pos + 1, chosen, count);
                chosen.pop();
            }
        }
    }
    rec(w, rank, &pattern.adjacent, 0, &mut chosen, &mut count);
    Ok(count)
}
