//! Permutations of `{1..n}` stored as one-line words.
//!
//! Internally the word is kept 0-based in a `Vec<u32>`; every public accessor speaks
//! 1-based labels. Composition follows `(σ∘τ)(i) = σ(τ(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A bijection of `{1..n}`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Permutation {
    word: Vec<u32>,
}

/// The transposition swapping the labels `i` and `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidParameter(format!("transposition ({i},{j}) has equal labels")));
        }
        if i == 0 || j == 0 {
            return Err(Error::OutOfRange { value: 0, n: i.max(j) });
        }
        Ok(Self { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// The transposition as an element of 𝔖_n.
    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        let m = self.i.max(self.j);
        if m > n {
            return Err(Error::OutOfRange { value: m, n });
        }
        let mut p = Permutation::identity(n);
        p.word.swap(self.i - 1, self.j - 1);
        Ok(p)
    }
}

impl Permutation {
    /// Builds a permutation from a 1-based one-line word.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!("n = {n} does not fit in 32 bits")));
        }
        let mut seen = vec![false; n];
        let mut word = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { value: v, n });
            }
            if seen[v - 1] {
                return Err(Error::Duplicate(v));
            }
            seen[v - 1] = true;
            word.push((v - 1) as u32);
        }
        Ok(Self { word })
    }

    /// Builds a permutation from a 0-based word, validating it.
    pub fn from_zero_based(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &word {
            let v = v as usize;
            if v >= n {
                return Err(Error::OutOfRange { value: v + 1, n });
            }
            if seen[v] {
                return Err(Error::Duplicate(v + 1));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    /// Wraps a 0-based word already known to be a bijection.
    pub(crate) fn from_zero_based_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(!word.is_empty());
        Self { word }
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles; unlisted labels are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut word: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > n {
                    return Err(Error::OutOfRange { value: v, n });
                }
                if seen[v - 1] {
                    return Err(Error::Duplicate(v));
                }
                seen[v - 1] = true;
            }
            for (k, &v) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                word[v - 1] = (next - 1) as u32;
            }
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "the identity needs n >= 1");
        Self { word: (0..n as u32).collect() }
    }

    /// The cycle `(1 2 … n)`.
    pub fn long_cycle(n: usize) -> Self {
        assert!(n >= 1, "the long cycle needs n >= 1");
        Self { word: (0..n as u32).map(|i| (i + 1) % n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// σ(i) for a 1-based label `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1] as usize + 1
    }

    /// The 1-based one-line word.
    pub fn one_line(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize + 1).collect()
    }

    /// The 0-based word; entry `k` is σ(k+1) − 1.
    pub fn as_zero_based(&self) -> &[u32] {
        &self.word
    }

    pub fn into_zero_based(self) -> Vec<u32> {
        self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// `outer ∘ inner`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.len() != inner.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: inner.len() });
        }
        let word = inner.word.iter().map(|&v| self.word[v as usize]).collect();
        Ok(Permutation { word })
    }

    /// σ∘(i,j): swaps the word entries at 1-based positions `i` and `j`.
    pub fn compose_transposition(&self, t: Transposition) -> Result<Permutation> {
        let m = t.i.max(t.j);
        if m > self.len() {
            return Err(Error::OutOfRange { value: m, n: self.len() });
        }
        let mut out = self.clone();
        out.word.swap(t.i - 1, t.j - 1);
        Ok(out)
    }

    /// In-place σ ← σ∘(a+1,b+1) with 0-based positions.
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        self.word.swap(a, b);
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u32; self.len()];
        for (k, &v) in self.word.iter().enumerate() {
            word[v as usize] = k as u32;
        }
        Permutation { word }
    }

    /// σ^k, computed cycle by cycle in O(n).
    pub fn power(&self, k: u64) -> Permutation {
        let n = self.len();
        let mut word = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.word[x] as usize;
            }
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (pos, &v) in cycle.iter().enumerate() {
                word[v as usize] = cycle[(pos + shift) % len];
            }
        }
        Permutation { word }
    }

    /// ρ⁻¹∘σ∘ρ.
    pub fn conjugate(&self, rho: &Permutation) -> Result<Permutation> {
        rho.inverse().compose(&self.compose(rho)?)
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.word[x] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { n, cycles }
    }

    /// For each 0-based element, the index of its cycle (cycles numbered by increasing minimum),
    /// together with the cycle lengths.
    pub fn cycle_index(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.len();
        let mut id = vec![u32::MAX; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if id[start] != u32::MAX {
                continue;
            }
            let c = lengths.len() as u32;
            let mut len = 0;
            let mut x = start;
            while id[x] == u32::MAX {
                id[x] = c;
                len += 1;
                x = self.word[x] as usize;
            }
            lengths.push(len);
        }
        (id, lengths)
    }

    /// #(σ), the number of cycles.
    pub fn num_cycles(&self) -> usize {
        self.cycle_index().1.len()
    }

    pub fn is_single_cycle(&self) -> bool {
        self.num_cycles() == 1
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_index().1)
    }

    /// #₁(σ).
    pub fn fixed_point_count(&self) -> usize {
        self.word.iter().enumerate().filter(|(k, &v)| *k == v as usize).count()
    }

    /// #_j(σ), the number of cycles of length `j`.
    pub fn count_cycles_of_length(&self, j: usize) -> usize {
        self.cycle_index().1.iter().filter(|&&l| l == j).count()
    }

    /// Number of ordered pairs `(i,j)` with `j` outside the cycle of `i`: n² − Σλ².
    pub fn admissible_merge_pair_count(&self) -> u128 {
        let n = self.len() as u128;
        let sq: u128 = self.cycle_index().1.iter().map(|&l| (l as u128) * (l as u128)).sum();
        n * n - sq
    }

    /// All ordered pairs `(i,j)` (1-based) with `j` outside the cycle of `i`.
    pub fn admissible_merge_pairs(&self) -> Vec<(usize, usize)> {
        let (id, _) = self.cycle_index();
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if id[i] != id[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Parses either a comma-separated word `"5,3,2,1,4"` or cycle notation `"(1 5 4)(2 3)"`.
    /// Cycle notation infers `n` as the largest label.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('(') {
            let cycles = parse_cycles(t)?;
            let n = cycles.iter().flatten().copied().max().ok_or(Error::Empty)?;
            return Self::from_cycles(n, &cycles);
        }
        let values = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry `{x}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&values)
    }

    /// Parses cycle notation for an explicit ambient size `n`.
    pub fn parse_cycles_in(n: usize, s: &str) -> Result<Self> {
        Self::from_cycles(n, &parse_cycles(s.trim())?)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
        let cycle = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad label `{x}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if cycle.is_empty() {
            return Err(Error::Parse(format!("empty cycle in `{s}`")));
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &v) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

/// Canonical cycle form: each cycle starts at its minimum, cycles sorted by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles.iter().map(Vec::len).collect())
    }

    pub fn fixed_point_count(&self) -> usize {
        self.count_cycles_of_length(1)
    }

    pub fn count_cycles_of_length(&self, j: usize) -> usize {
        self.cycles.iter().filter(|c| c.len() == j).count()
    }

    /// The cycle containing the label `i`.
    pub fn cycle_of(&self, i: usize) -> Option<&[usize]> {
        self.cycles.iter().find(|c| c.contains(&i)).map(Vec::as_slice)
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("canonical cycles are a valid permutation")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
