//! Concrete classified graphs.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::fenwick::inversions;
use crate::oracle::enumerate_sn;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rng::RandomSource;
use crate::sampling::{sample_cycle_type, ColoredPermutation};
use crate::walks::{run_to_single_cycle, sample_merge_pair};

use super::{ClassLabel, ClassifiedGraph, Vertex};

const PERM_ENUMERATION_CAP: usize = 8;

fn perm_of(v: &[u32]) -> Permutation {
    Permutation::from_zero_based_unchecked(v.to_vec())
}

fn partition_of(class: &ClassLabel) -> Result<Partition> {
    Partition::new(class.clone())
}

fn all_perms(n: usize) -> Option<Vec<Vertex>> {
    if n > PERM_ENUMERATION_CAP {
        return None;
    }
    Some(enumerate_sn(n).ok()?.map(Permutation::into_zero_based).collect())
}

fn transposition_neighbors(word: &[u32], n: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut w = word.to_vec();
            w.swap(i, j);
            out.push(w);
        }
    }
    out
}

/// Cayley graph of 𝔖_n generated by all transpositions; vertices are 0-based words, classes
/// are cycle types, and the target is the class of n-cycles.
#[derive(Debug, Clone)]
pub struct SymmetricTranspositions {
    n: usize,
}

pub fn symmetric_transpositions(n: usize) -> Result<SymmetricTranspositions> {
    if n == 0 {
        return Err(Error::Empty);
    }
    Ok(SymmetricTranspositions { n })
}

impl ClassifiedGraph for SymmetricTranspositions {
    fn descriptor(&self) -> String {
        format!("sym-transp:{}", self.n)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        transposition_neighbors(v, self.n)
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        perm_of(v).cycle_type().parts().to_vec()
    }

    fn target_class(&self) -> ClassLabel {
        vec![self.n]
    }

    fn classes(&self) -> Vec<ClassLabel> {
        Partition::all(self.n).into_iter().map(|p| p.parts().to_vec()).collect()
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        partition_of(class).map(|p| p.class_size()).unwrap_or_default()
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        all_perms(self.n)
    }

    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let lambda = partition_of(class)?;
        if lambda.size() != self.n {
            return Err(Error::SizeMismatch { left: lambda.size(), right: self.n });
        }
        Ok(sample_cycle_type(&lambda, rng)?.into_zero_based())
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        perm_of(v).to_string()
    }

    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok(perm_of(v).num_cycles() - 1)
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        Ok(class.len().saturating_sub(1))
    }

    fn derived_step(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        let sigma = perm_of(v);
        Ok(match sample_merge_pair(&sigma, rng) {
            Some((i, j)) => {
                let mut w = v.clone();
                w.swap(i, j);
                w
            }
            None => v.clone(),
        })
    }

    fn run_to_target(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        Ok(run_to_single_cycle(&perm_of(v), rng, false).0.into_zero_based())
    }

    fn as_permutation(&self, v: &Vertex) -> Option<Permutation> {
        Some(perm_of(v))
    }
}

/// Number of permutations of 𝔖_n with k inversions, for k = 0..=n(n−1)/2.
pub fn mahonian_numbers(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..n {
        let mut next = vec![BigUint::zero(); row.len() + i];
        for (k, c) in row.iter().enumerate() {
            for t in 0..=i {
                next[k + t] += c;
            }
        }
        row = next;
    }
    row
}

/// Largest n for which class sampling on the adjacent-transposition graph is exact in u128.
const ADJACENT_SAMPLING_CAP: usize = 33;

/// Right Cayley graph of 𝔖_n generated by the adjacent transpositions (i, i+1); classes are
/// inversion counts and the target is ⌈n²/4⌉ inversions.
#[derive(Debug, Clone)]
pub struct SymmetricAdjacent {
    n: usize,
    target: usize,
}

pub fn symmetric_adjacent(n: usize) -> Result<SymmetricAdjacent> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let target = (n * n).div_ceil(4).min(n * (n - 1) / 2);
    Ok(SymmetricAdjacent { n, target })
}

impl ClassifiedGraph for SymmetricAdjacent {
    fn descriptor(&self) -> String {
        format!("sym-adj:{}", self.n)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        (0..self.n.saturating_sub(1))
            .map(|i| {
                let mut w = v.clone();
                w.swap(i, i + 1);
                w
            })
            .collect()
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        vec![inversions(v) as usize]
    }

    fn target_class(&self) -> ClassLabel {
        vec![self.target]
    }

    fn classes(&self) -> Vec<ClassLabel> {
        (0..=self.n * (self.n - 1) / 2).map(|k| vec![k]).collect()
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        let counts = mahonian_numbers(self.n);
        class.first().and_then(|&k| counts.get(k).cloned()).unwrap_or_default()
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        all_perms(self.n)
    }

    /// Samples a Lehmer code with the prescribed sum, then decodes it.
    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let n = self.n;
        if n > ADJACENT_SAMPLING_CAP {
            return Err(Error::CapExceeded { n, cap: ADJACENT_SAMPLING_CAP });
        }
        let max = n * (n - 1) / 2;
        let mut k = match class.as_slice() {
            [k] if *k <= max => *k,
            _ => return Err(Error::InvalidParameter(format!("no class {class:?} on {}", self.descriptor()))),
        };
        // ways[r][s]: codes for the last r positions (ranges 0..r−1, …, 0..0) summing to s.
        let mut ways = vec![vec![1u128]];
        for r in 1..=n {
            let prev = &ways[r - 1];
            let mut row = vec![0u128; prev.len() + r - 1];
            for (s, &c) in prev.iter().enumerate() {
                for t in 0..r {
                    row[s + t] += c;
                }
            }
            ways.push(row);
        }
        let mut code = Vec::with_capacity(n);
        for pos in 0..n {
            let r = n - pos;
            let rest = &ways[r - 1];
            let total: u128 = (0..r).filter(|&t| t <= k).map(|t| rest.get(k - t).copied().unwrap_or(0)).sum();
            let mut u = rng.below_u128(total);
            let mut chosen = 0;
            for t in 0..r.min(k + 1) {
                let w = rest.get(k - t).copied().unwrap_or(0);
                if u < w {
                    chosen = t;
                    break;
                }
                u -= w;
            }
            code.push(chosen);
            k -= chosen;
        }
        let mut remaining: Vec<u32> = (0..n as u32).collect();
        Ok(code.into_iter().map(|c| remaining.remove(c)).collect())
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        perm_of(v).to_string()
    }

    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok((inversions(v) as usize).abs_diff(self.target))
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        Ok(class.first().copied().unwrap_or(0).abs_diff(self.target))
    }

    fn as_permutation(&self, v: &Vertex) -> Option<Permutation> {
        Some(perm_of(v))
    }
}

/// Cayley graph of the even permutations of 𝔖_N (N odd) generated by 3-cycles; classes are
/// cycle types (necessarily with an odd number of parts) and the target is the N-cycles.
#[derive(Debug, Clone)]
pub struct Even3Cycles {
    n: usize,
}

pub fn even_3cycles(n: usize) -> Result<Even3Cycles> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("even3 needs an odd size ≥ 3, got {n}")));
    }
    Ok(Even3Cycles { n })
}

impl ClassifiedGraph for Even3Cycles {
    fn descriptor(&self) -> String {
        format!("even3:{}", self.n)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut w = v.clone();
                    w[a] = v[b];
                    w[b] = v[c];
                    w[c] = v[a];
                    out.push(w);
                    let mut w = v.clone();
                    w[a] = v[c];
                    w[b] = v[a];
                    w[c] = v[b];
                    out.push(w);
                }
            }
        }
        out
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        perm_of(v).cycle_type().parts().to_vec()
    }

    fn target_class(&self) -> ClassLabel {
        vec![self.n]
    }

    fn classes(&self) -> Vec<ClassLabel> {
        Partition::all(self.n).into_iter().filter(|p| p.len() % 2 == 1).map(|p| p.parts().to_vec()).collect()
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        match partition_of(class) {
            Ok(p) if p.len() % 2 == 1 => p.class_size(),
            _ => BigUint::zero(),
        }
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        Some(all_perms(self.n)?.into_iter().filter(|v| perm_of(v).num_cycles() % 2 == 1).collect())
    }

    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let lambda = partition_of(class)?;
        if lambda.size() != self.n || lambda.len() % 2 == 0 {
            return Err(Error::InvalidParameter(format!("no class {lambda} on {}", self.descriptor())));
        }
        Ok(sample_cycle_type(&lambda, rng)?.into_zero_based())
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        perm_of(v).to_string()
    }

    /// A 3-cycle changes the number of cycles by −2, 0 or 2, and joining three distinct cycles
    /// achieves −2.
    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok((perm_of(v).num_cycles() - 1) / 2)
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        Ok(class.len().saturating_sub(1) / 2)
    }

    fn as_permutation(&self, v: &Vertex) -> Option<Permutation> {
        Some(perm_of(v))
    }
}

/// The hypercube (ℤ/2ℤ)^d for even d; classes are Hamming weights, the target weight d/2.
#[derive(Debug, Clone)]
pub struct Hypercube {
    d: usize,
}

const HYPERCUBE_ENUMERATION_CAP: usize = 20;

pub fn hypercube(d: usize) -> Result<Hypercube> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::InvalidParameter(format!("hypercube needs an even dimension, got {d}")));
    }
    Ok(Hypercube { d })
}

impl ClassifiedGraph for Hypercube {
    fn descriptor(&self) -> String {
        format!("hypercube:{}", self.d)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        (0..self.d)
            .map(|i| {
                let mut w = v.clone();
                w[i] ^= 1;
                w
            })
            .collect()
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        vec![v.iter().filter(|&&b| b == 1).count()]
    }

    fn target_class(&self) -> ClassLabel {
        vec![self.d / 2]
    }

    fn classes(&self) -> Vec<ClassLabel> {
        (0..=self.d).map(|k| vec![k]).collect()
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        match class.as_slice() {
            [k] if *k <= self.d => (0..*k).fold(BigUint::one(), |acc, i| acc * (self.d - i) / (i + 1)),
            _ => BigUint::zero(),
        }
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        if self.d > HYPERCUBE_ENUMERATION_CAP {
            return None;
        }
        Some((0u64..1 << self.d).map(|x| (0..self.d).map(|i| ((x >> i) & 1) as u32).collect()).collect())
    }

    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let k = match class.as_slice() {
            [k] if *k <= self.d => *k,
            _ => return Err(Error::InvalidParameter(format!("no class {class:?} on {}", self.descriptor()))),
        };
        let mut v = vec![0u32; self.d];
        for &i in (0..self.d).collect::<Vec<_>>().choose_multiple(rng, k) {
            v[i] = 1;
        }
        Ok(v)
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        v.iter().map(ToString::to_string).collect()
    }

    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok(self.class_of(v)[0].abs_diff(self.d / 2))
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        Ok(class.first().copied().unwrap_or(0).abs_diff(self.d / 2))
    }
}

/// An element of the dihedral group of order 2n: a rotation r_i or a reflection s_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DihedralElement {
    R(usize),
    S(usize),
}

/// Product in the dihedral group of order 2n.
pub fn dihedral_multiply(a: DihedralElement, b: DihedralElement, n: usize) -> DihedralElement {
    use DihedralElement::{R, S};
    match (a, b) {
        (R(i), R(j)) => R((i + j) % n),
        (R(i), S(j)) => S((i + j) % n),
        (S(i), R(j)) => S((i + n - j) % n),
        (S(i), S(j)) => R((i + n - j) % n),
    }
}

/// Cayley graph of the dihedral group of order 2n generated by the reflections. Vertices are
/// `[0, i]` for r_i and `[1, i]` for s_i. Classes are {rotations, reflections} with target the
/// rotations, or, with `conjugacy`, the conjugacy classes with target {r₀}.
#[derive(Debug, Clone)]
pub struct Dihedral {
    n: usize,
    conjugacy: bool,
}

pub fn dihedral(n: usize, conjugacy: bool) -> Result<Dihedral> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("dihedral needs n ≥ 3, got {n}")));
    }
    Ok(Dihedral { n, conjugacy })
}

impl Dihedral {
    fn element(&self, v: &Vertex) -> DihedralElement {
        if v[0] == 0 {
            DihedralElement::R(v[1] as usize)
        } else {
            DihedralElement::S(v[1] as usize)
        }
    }

    fn vertex(e: DihedralElement) -> Vertex {
        match e {
            DihedralElement::R(i) => vec![0, i as u32],
            DihedralElement::S(i) => vec![1, i as u32],
        }
    }

    fn members(&self, class: &ClassLabel) -> Vec<Vertex> {
        let n = self.n;
        (0..n)
            .flat_map(|i| [vec![0, i as u32], vec![1, i as u32]])
            .filter(|v| self.class_of(v) == *class)
            .collect()
    }
}

impl ClassifiedGraph for Dihedral {
    fn descriptor(&self) -> String {
        if self.conjugacy {
            format!("dihedral:{}:conj", self.n)
        } else {
            format!("dihedral:{}", self.n)
        }
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let a = self.element(v);
        (0..self.n).map(|j| Self::vertex(dihedral_multiply(a, DihedralElement::S(j), self.n))).collect()
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        let (kind, i) = (v[0] as usize, v[1] as usize);
        if !self.conjugacy {
            return vec![kind];
        }
        if kind == 0 {
            vec![0, i.min(self.n - i)]
        } else if self.n.is_multiple_of(2) {
            vec![1, i % 2]
        } else {
            vec![1, 0]
        }
    }

    fn target_class(&self) -> ClassLabel {
        if self.conjugacy {
            vec![0, 0]
        } else {
            vec![0]
        }
    }

    fn classes(&self) -> Vec<ClassLabel> {
        if !self.conjugacy {
            return vec![vec![0], vec![1]];
        }
        let mut out: Vec<ClassLabel> = (0..=self.n / 2).map(|i| vec![0, i]).collect();
        out.push(vec![1, 0]);
        if self.n.is_multiple_of(2) {
            out.push(vec![1, 1]);
        }
        out
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        BigUint::from(self.members(class).len())
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        Some((0..self.n).flat_map(|i| [vec![0, i as u32], vec![1, i as u32]]).collect())
    }

    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let members = self.members(class);
        if members.is_empty() {
            return Err(Error::InvalidParameter(format!("no class {class:?} on {}", self.descriptor())));
        }
        Ok(members[rng.below(members.len())].clone())
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        format!("{}{}", if v[0] == 0 { 'r' } else { 's' }, v[1])
    }

    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok(match (v[0], v[1]) {
            (1, _) => 1,
            (_, 0) => 0,
            _ if self.conjugacy => 2,
            _ => 0,
        })
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        let v = self.members(class).into_iter().next().ok_or_else(|| Error::InvalidParameter("empty class".into()))?;
        self.underline_d(&v)
    }
}

/// Colored permutations (σ, φ) with φ ∈ {1..m}^n; edges change σ by a transposition and keep φ.
/// Vertices are σ's 0-based word followed by the n colors. Classes are cycle types of σ.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    n: usize,
    m: usize,
}

const COLORED_ENUMERATION_CAP: u128 = 200_000;

pub fn colored_graph(n: usize, m: usize) -> Result<ColoredGraph> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("colored graph needs n, m ≥ 1, got {n}, {m}")));
    }
    Ok(ColoredGraph { n, m })
}

impl ColoredGraph {
    fn split<'a>(&self, v: &'a Vertex) -> (&'a [u32], &'a [u32]) {
        v.split_at(self.n)
    }
}

impl ClassifiedGraph for ColoredGraph {
    fn descriptor(&self) -> String {
        format!("colored:{}:{}", self.n, self.m)
    }

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let (sigma, colors) = self.split(v);
        transposition_neighbors(sigma, self.n)
            .into_iter()
            .map(|mut w| {
                w.extend_from_slice(colors);
                w
            })
            .collect()
    }

    fn class_of(&self, v: &Vertex) -> ClassLabel {
        perm_of(self.split(v).0).cycle_type().parts().to_vec()
    }

    fn target_class(&self) -> ClassLabel {
        vec![self.n]
    }

    fn classes(&self) -> Vec<ClassLabel> {
        Partition::all(self.n).into_iter().map(|p| p.parts().to_vec()).collect()
    }

    fn class_size(&self, class: &ClassLabel) -> BigUint {
        let colorings = BigUint::from(self.m).pow(self.n as u32);
        partition_of(class).map(|p| p.class_size() * colorings).unwrap_or_default()
    }

    fn vertices(&self) -> Option<Vec<Vertex>> {
        let count = (1..=self.n as u128).product::<u128>().checked_mul((self.m as u128).checked_pow(self.n as u32)?)?;
        if count > COLORED_ENUMERATION_CAP {
            return None;
        }
        let perms = all_perms(self.n)?;
        let mut colorings: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..self.n {
            colorings = colorings
                .into_iter()
                .flat_map(|c| {
                    (1..=self.m as u32).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        Some(
            perms
                .iter()
                .flat_map(|p| {
                    colorings.iter().map(move |c| {
                        let mut v = p.clone();
                        v.extend_from_slice(c);
                        v
                    })
                })
                .collect(),
        )
    }

    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex> {
        let lambda = partition_of(class)?;
        if lambda.size() != self.n {
            return Err(Error::SizeMismatch { left: lambda.size(), right: self.n });
        }
        let mut v = sample_cycle_type(&lambda, rng)?.into_zero_based();
        v.extend((0..self.n).map(|_| 1 + rng.below(self.m) as u32));
        Ok(v)
    }

    fn format_vertex(&self, v: &Vertex) -> String {
        let (sigma, colors) = self.split(v);
        let colors: Vec<String> = colors.iter().map(ToString::to_string).collect();
        format!("{}|{}", perm_of(sigma), colors.join(","))
    }

    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        Ok(perm_of(self.split(v).0).num_cycles() - 1)
    }

    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        Ok(class.len().saturating_sub(1))
    }

    fn derived_step(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        let sigma = perm_of(self.split(v).0);
        let mut w = v.clone();
        if let Some((i, j)) = sample_merge_pair(&sigma, rng) {
            w.swap(i, j);
        }
        Ok(w)
    }

    fn run_to_target(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        let (sigma, colors) = self.split(v);
        let mut w = run_to_single_cycle(&perm_of(sigma), rng, false).0.into_zero_based();
        w.extend_from_slice(colors);
        Ok(w)
    }

    fn as_permutation(&self, v: &Vertex) -> Option<Permutation> {
        Some(perm_of(self.split(v).0))
    }

    fn as_colored(&self, v: &Vertex) -> Option<ColoredPermutation> {
        let (sigma, colors) = self.split(v);
        ColoredPermutation::new(perm_of(sigma), colors.to_vec(), self.m).ok()
    }
}
