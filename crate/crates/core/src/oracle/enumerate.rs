//! Lexicographic enumeration of 𝔖_n.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest n for which 𝔖_n is enumerated.
pub const ENUMERATION_CAP: usize = 8;
/// Largest n for exact transition matrices of the merge walk.
pub const WALK_MATRIX_CAP: usize = 6;
/// Largest n for which final(σ) is explored exhaustively.
pub const FINAL_SET_CAP: usize = 6;

/// Iterator over 𝔖_n in lexicographic order of one-line words.
#[derive(Debug, Clone)]
pub struct SnIter {
    next: Option<Vec<u32>>,
}

impl Iterator for SnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut w = current.clone();
        let n = w.len();
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) {
            let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
            w.swap(i, j);
            w[i + 1..].reverse();
            self.next = Some(w);
        }
        Some(Permutation::from_zero_based_unchecked(current))
    }
}

/// All of 𝔖_n, starting at the identity and ending at the reversal.
pub fn enumerate_sn(n: usize) -> Result<SnIter> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    Ok(SnIter { next: Some((0..n as u32).collect()) })
}

/// Position of σ in the lexicographic enumeration (Lehmer code).
pub fn lex_rank(sigma: &Permutation) -> usize {
    let w = sigma.as_zero_based();
    let n = w.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = w[i + 1..].iter().filter(|&&v| v < w[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_extremes() {
        assert_eq!(enumerate_sn(3).unwrap().count(), 6);
        let one: Vec<_> = enumerate_sn(1).unwrap().collect();
        assert_eq!(one, vec![Permutation::identity(1)]);
        let all: Vec<_> = enumerate_sn(4).unwrap().collect();
        assert_eq!(all[0].one_line(), vec![1, 2, 3, 4]);
        assert_eq!(all[23].one_line(), vec![4, 3, 2, 1]);
        assert!(matches!(enumerate_sn(9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn complete_sorted_and_ranked() {
        let all: Vec<_> = enumerate_sn(6).unwrap().collect();
        assert_eq!(all.len(), 720);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (k, s) in all.iter().enumerate() {
            assert_eq!(lex_rank(s), k);
        }
    }
}
