//! Class-partitioned graphs, the derived walk toward a target class, and G-invariant laws.

mod instances;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::empirical::EmpiricalDistribution;
use crate::error::{Error, Result};
use crate::limits::two_sample_ks;
use crate::montecarlo::run_trials;
use crate::perm::Permutation;
use crate::rational::{to_f64, Rational};
use crate::rng::RandomSource;
use crate::sampling::ColoredPermutation;
use crate::stats::StatisticSpec;

pub use instances::{
    colored_graph, dihedral, dihedral_multiply, even_3cycles, hypercube, mahonian_numbers, symmetric_adjacent,
    symmetric_transpositions, ColoredGraph, Dihedral, DihedralElement, Even3Cycles, Hypercube, SymmetricAdjacent,
    SymmetricTranspositions,
};

/// Vertices are encoded as integer words; each instance documents its encoding.
pub type Vertex = Vec<u32>;
/// Class labels are integer words (a partition, an inversion count, a Hamming weight, …).
pub type ClassLabel = Vec<usize>;

/// Largest vertex set enumerated by the generic checkers.
pub const ENUMERATION_LIMIT: usize = 1_000_000;
/// Largest vertex set for exact rational law propagation.
pub const EXACT_LAW_LIMIT: usize = 10_000;

/// A locally finite graph whose vertex set is partitioned into classes, with a target class.
pub trait ClassifiedGraph: Send + Sync {
    /// Harness descriptor, e.g. `hypercube:6`.
    fn descriptor(&self) -> String;

    fn neighbors(&self, v: &Vertex) -> Vec<Vertex>;

    fn class_of(&self, v: &Vertex) -> ClassLabel;

    fn target_class(&self) -> ClassLabel;

    /// Every class, each non-empty.
    fn classes(&self) -> Vec<ClassLabel>;

    fn class_size(&self, class: &ClassLabel) -> BigUint;

    /// All vertices, or `None` when the instance is too large to enumerate.
    fn vertices(&self) -> Option<Vec<Vertex>>;

    /// A uniform vertex of the class.
    fn sample_in_class(&self, class: &ClassLabel, rng: &mut RandomSource) -> Result<Vertex>;

    fn format_vertex(&self, v: &Vertex) -> String {
        format!("{v:?}")
    }

    fn format_class(&self, class: &ClassLabel) -> String {
        let parts: Vec<String> = class.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }

    fn vertex_count(&self) -> BigUint {
        self.classes().iter().map(|c| self.class_size(c)).sum()
    }

    /// d̲(v): graph distance from `v` to the target class. Breadth-first by default.
    fn underline_d(&self, v: &Vertex) -> Result<usize> {
        bfs_distance(self, v)
    }

    /// d̲ on a class (constant on classes under regularity).
    fn class_distance(&self, class: &ClassLabel) -> Result<usize> {
        let mut rng = RandomSource::new(0);
        let v = self.sample_in_class(class, &mut rng)?;
        self.underline_d(&v)
    }

    /// One step of the uniform walk on the derived graph: a uniform neighbour with d̲ one
    /// smaller, or `v` itself in the target class.
    fn derived_step(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        let d = self.underline_d(v)?;
        if d == 0 {
            return Ok(v.clone());
        }
        let down = descending_neighbors(self, v, d)?;
        if down.is_empty() {
            return Err(Error::NoDescendingNeighbor { distance: d });
        }
        Ok(down[rng.below(down.len())].clone())
    }

    /// Exactly d̲(v) derived steps.
    fn run_to_target(&self, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
        let d = self.underline_d(v)?;
        let mut current = v.clone();
        for _ in 0..d {
            current = self.derived_step(&current, rng)?;
        }
        Ok(current)
    }

    fn as_permutation(&self, _v: &Vertex) -> Option<Permutation> {
        None
    }

    fn as_colored(&self, _v: &Vertex) -> Option<ColoredPermutation> {
        None
    }
}

fn bfs_distance<G: ClassifiedGraph + ?Sized>(g: &G, v: &Vertex) -> Result<usize> {
    let target = g.target_class();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back((v.clone(), 0usize));
    while let Some((u, d)) = queue.pop_front() {
        if g.class_of(&u) == target {
            return Ok(d);
        }
        for w in g.neighbors(&u) {
            if seen.insert(w.clone()) {
                if seen.len() > ENUMERATION_LIMIT {
                    return Err(Error::CapExceeded { n: seen.len(), cap: ENUMERATION_LIMIT });
                }
                queue.push_back((w, d + 1));
            }
        }
    }
    Err(Error::Degenerate(format!("target class unreachable from {}", g.format_vertex(v))))
}

fn descending_neighbors<G: ClassifiedGraph + ?Sized>(g: &G, v: &Vertex, d: usize) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for w in g.neighbors(v) {
        if seen.insert(w.clone()) && g.underline_d(&w)? + 1 == d {
            out.push(w);
        }
    }
    Ok(out)
}

/// One derived step, as a free function.
pub fn derived_step(g: &dyn ClassifiedGraph, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
    g.derived_step(v, rng)
}

/// Runs the derived walk from `v` until the target class.
pub fn run_to_target(g: &dyn ClassifiedGraph, v: &Vertex, rng: &mut RandomSource) -> Result<Vertex> {
    g.run_to_target(v, rng)
}

pub fn underline_d(g: &dyn ClassifiedGraph, v: &Vertex) -> Result<usize> {
    g.underline_d(v)
}

fn enumerate(g: &dyn ClassifiedGraph, limit: usize) -> Result<Vec<Vertex>> {
    let count = g.vertex_count();
    let as_usize = count.to_usize().unwrap_or(usize::MAX);
    if as_usize > limit {
        return Err(Error::CapExceeded { n: as_usize, cap: limit });
    }
    g.vertices().ok_or(Error::CapExceeded { n: as_usize, cap: limit })
}

/// d̲ for every vertex, by multi-source breadth-first search from the target class.
pub fn distance_table(g: &dyn ClassifiedGraph) -> Result<HashMap<Vertex, usize>> {
    let vertices = enumerate(g, ENUMERATION_LIMIT)?;
    let target = g.target_class();
    let mut dist: HashMap<Vertex, usize> = HashMap::with_capacity(vertices.len());
    let mut queue = VecDeque::new();
    for v in vertices {
        if g.class_of(&v) == target {
            dist.insert(v.clone(), 0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for w in g.neighbors(&u) {
            if !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

fn derived_successors(g: &dyn ClassifiedGraph, dist: &HashMap<Vertex, usize>, v: &Vertex) -> Result<Vec<Vertex>> {
    let d = *dist.get(v).ok_or_else(|| Error::Degenerate("unreachable vertex".into()))?;
    if d == 0 {
        return Ok(vec![v.clone()]);
    }
    let set: BTreeSet<Vertex> = g.neighbors(v).into_iter().filter(|w| dist.get(w).is_some_and(|&e| e + 1 == d)).collect();
    if set.is_empty() {
        return Err(Error::NoDescendingNeighbor { distance: d });
    }
    Ok(set.into_iter().collect())
}

/// e_{i,j}: the number of neighbours in class `to` of any vertex of class `from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEdge {
    pub from: String,
    pub to: String,
    pub count: usize,
}

/// Two vertices of one class whose neighbour counts into `neighbor_class` differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityViolation {
    pub first: String,
    pub second: String,
    pub class: String,
    pub neighbor_class: String,
    pub first_count: usize,
    pub second_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub graph: String,
    pub pass: bool,
    pub vertices: usize,
    pub e: Vec<ClassEdge>,
    pub violation: Option<RegularityViolation>,
}

impl RegularityReport {
    /// e_{from,to}, zero when absent.
    pub fn e(&self, from: &str, to: &str) -> usize {
        self.e.iter().find(|c| c.from == from && c.to == to).map_or(0, |c| c.count)
    }
}

fn neighbor_profile(g: &dyn ClassifiedGraph, v: &Vertex) -> BTreeMap<ClassLabel, usize> {
    let mut profile = BTreeMap::new();
    let distinct: BTreeSet<Vertex> = g.neighbors(v).into_iter().collect();
    for w in distinct {
        *profile.entry(g.class_of(&w)).or_insert(0) += 1;
    }
    profile
}

/// Checks that the neighbour-class counts depend only on the class of the vertex.
pub fn verify_regularity(g: &dyn ClassifiedGraph) -> Result<RegularityReport> {
    let vertices = enumerate(g, ENUMERATION_LIMIT)?;
    let mut first: BTreeMap<ClassLabel, (Vertex, BTreeMap<ClassLabel, usize>)> = BTreeMap::new();
    let mut violation = None;
    for v in &vertices {
        let class = g.class_of(v);
        let profile = neighbor_profile(g, v);
        match first.get(&class) {
            None => {
                first.insert(class, (v.clone(), profile));
            }
            Some((w, reference)) => {
                if *reference != profile {
                    let keys: BTreeSet<&ClassLabel> = reference.keys().chain(profile.keys()).collect();
                    let key = keys
                        .into_iter()
                        .find(|k| reference.get(*k) != profile.get(*k))
                        .expect("profiles differ somewhere");
                    violation = Some(RegularityViolation {
                        first: g.format_vertex(w),
                        second: g.format_vertex(v),
                        class: g.format_class(&class),
                        neighbor_class: g.format_class(key),
                        first_count: reference.get(key).copied().unwrap_or(0),
                        second_count: profile.get(key).copied().unwrap_or(0),
                    });
                    break;
                }
            }
        }
    }
    let e = if violation.is_none() {
        first
            .iter()
            .flat_map(|(from, (_, profile))| {
                profile.iter().map(move |(to, &count)| ClassEdge {
                    from: g.format_class(from),
                    to: g.format_class(to),
                    count,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(RegularityReport { graph: g.descriptor(), pass: violation.is_none(), vertices: vertices.len(), e, violation })
}

/// Undirected edges of the classes graph, as pairs of distinct class labels.
pub fn class_graph_edges(g: &dyn ClassifiedGraph) -> Result<BTreeSet<(ClassLabel, ClassLabel)>> {
    let vertices = enumerate(g, ENUMERATION_LIMIT)?;
    let mut edges = BTreeSet::new();
    for v in &vertices {
        let a = g.class_of(v);
        for w in g.neighbors(v) {
            let b = g.class_of(&w);
            if a != b {
                edges.insert(if a < b { (a.clone(), b) } else { (b, a.clone()) });
            }
        }
    }
    Ok(edges)
}

/// Connectivity of the classes graph.
pub fn verify_connectivity(g: &dyn ClassifiedGraph) -> Result<bool> {
    let edges = class_graph_edges(g)?;
    let classes = g.classes();
    let mut adjacency: BTreeMap<&ClassLabel, Vec<&ClassLabel>> = BTreeMap::new();
    for (a, b) in &edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let target = g.target_class();
    let mut seen: BTreeSet<&ClassLabel> = BTreeSet::new();
    let mut stack = vec![&target];
    seen.insert(&target);
    while let Some(c) = stack.pop() {
        for &next in adjacency.get(c).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok(classes.iter().all(|c| seen.contains(c)))
}

/// Outcome of the path-count symmetry check, with the first vertex whose endpoints in
/// final(σ) are reached by unequal numbers of paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub graph: String,
    pub pass: bool,
    pub failing_vertices: usize,
    pub witness: Option<String>,
    /// Smallest and largest path counts at the witness.
    pub witness_counts: Option<(String, String)>,
}

/// For every vertex σ, whether the number of derived-graph paths of length d̲(σ) from σ is the
/// same for every endpoint in final(σ).
pub fn symmetry_report(g: &dyn ClassifiedGraph) -> Result<SymmetryReport> {
    let dist = distance_table(g)?;
    let vertices = enumerate(g, ENUMERATION_LIMIT)?;
    let mut successors: HashMap<Vertex, Vec<Vertex>> = HashMap::with_capacity(vertices.len());
    for v in &vertices {
        successors.insert(v.clone(), derived_successors(g, &dist, v)?);
    }
    let mut failing = 0;
    let mut witness = None;
    for v in &vertices {
        let mut counts: BTreeMap<&Vertex, BigUint> = BTreeMap::new();
        counts.insert(v, BigUint::one());
        for _ in 0..dist[v] {
            let mut next: BTreeMap<&Vertex, BigUint> = BTreeMap::new();
            for (u, c) in counts {
                for w in &successors[u] {
                    *next.entry(w).or_insert_with(BigUint::zero) += &c;
                }
            }
            counts = next;
        }
        let lo = counts.values().min().expect("non-empty");
        let hi = counts.values().max().expect("non-empty");
        if lo != hi {
            failing += 1;
            if witness.is_none() {
                witness = Some((g.format_vertex(v), (lo.to_string(), hi.to_string())));
            }
        }
    }
    let (witness, witness_counts) = match witness {
        Some((w, c)) => (Some(w), Some(c)),
        None => (None, None),
    };
    Ok(SymmetryReport { graph: g.descriptor(), pass: failing == 0, failing_vertices: failing, witness, witness_counts })
}

/// Flag form of [`symmetry_report`].
pub fn verify_symmetry(g: &dyn ClassifiedGraph) -> Result<bool> {
    Ok(symmetry_report(g)?.pass)
}

/// Whether one exact derived step maps every class-uniform law to a class-uniform law.
pub fn derived_step_preserves_invariance(g: &dyn ClassifiedGraph) -> Result<bool> {
    let vertices = enumerate(g, EXACT_LAW_LIMIT)?;
    let dist = distance_table(g)?;
    let index: HashMap<&Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let classes: Vec<ClassLabel> = vertices.iter().map(|v| g.class_of(v)).collect();
    let mut members: BTreeMap<&ClassLabel, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        members.entry(c).or_default().push(i);
    }
    let successors: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| Ok(derived_successors(g, &dist, v)?.iter().map(|w| index[w]).collect()))
        .collect::<Result<_>>()?;
    for start in members.values() {
        let mut mu = vec![Rational::zero(); vertices.len()];
        let p = Rational::new(BigInt::one(), BigInt::from(start.len()));
        for &i in start {
            let share = &p / Rational::from_integer(BigInt::from(successors[i].len()));
            for &j in &successors[i] {
                mu[j] += &share;
            }
        }
        for group in members.values() {
            if group.iter().any(|&i| mu[i] != mu[group[0]]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A law giving equal mass to the vertices of each class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GInvariantLaw {
    #[serde(serialize_with = "serialize_weights")]
    weights: Vec<(ClassLabel, Rational)>,
}

fn serialize_weights<S: serde::Serializer>(w: &[(ClassLabel, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for (c, p) in w {
        seq.serialize_element(&(c, p.to_string()))?;
    }
    seq.end()
}

impl GInvariantLaw {
    /// Class weights; must be nonnegative and sum to one.
    pub fn new(weights: Vec<(ClassLabel, Rational)>) -> Result<Self> {
        if weights.iter().any(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidParameter("negative class weight".into()));
        }
        let total: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
        if total != Rational::one() {
            return Err(Error::InvalidParameter(format!("class weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    /// Uniform on all vertices.
    pub fn uniform(g: &dyn ClassifiedGraph) -> Result<Self> {
        generalized_ewens(g, &Rational::one())
    }

    /// Uniform on one class.
    pub fn class_uniform(class: ClassLabel) -> Self {
        Self { weights: vec![(class, Rational::one())] }
    }

    pub fn weights(&self) -> &[(ClassLabel, Rational)] {
        &self.weights
    }

    pub fn class_weight(&self, class: &ClassLabel) -> Rational {
        self.weights.iter().filter(|(c, _)| c == class).map(|(_, w)| w.clone()).sum()
    }

    /// Mass of the single vertex `v`.
    pub fn probability(&self, g: &dyn ClassifiedGraph, v: &Vertex) -> Rational {
        let class = g.class_of(v);
        let size = BigInt::from(g.class_size(&class));
        self.class_weight(&class) / Rational::from_integer(size)
    }
}

/// Draws a class by weight, then a uniform vertex in it.
pub fn g_invariant_sample(g: &dyn ClassifiedGraph, law: &GInvariantLaw, rng: &mut RandomSource) -> Result<Vertex> {
    let u = rng.uniform();
    let mut acc = 0.0;
    let mut chosen = None;
    for (c, w) in &law.weights {
        if w.is_zero() {
            continue;
        }
        acc += to_f64(w);
        chosen = Some(c);
        if u < acc {
            break;
        }
    }
    let class = chosen.ok_or_else(|| Error::Degenerate("law has no mass".into()))?;
    g.sample_in_class(class, rng)
}

/// Class weights proportional to |class|·q^{d̲(class)}; q = 0 gives the uniform law on the target.
pub fn generalized_ewens(g: &dyn ClassifiedGraph, q: &Rational) -> Result<GInvariantLaw> {
    if q.is_negative() {
        return Err(Error::InvalidParameter(format!("q = {q} must be nonnegative")));
    }
    if q.is_zero() {
        return Ok(GInvariantLaw::class_uniform(g.target_class()));
    }
    let mut raw = Vec::new();
    for c in g.classes() {
        let d = g.class_distance(&c)?;
        let size = Rational::from_integer(BigInt::from(g.class_size(&c)));
        let qd = if d == 0 { Rational::one() } else { q.pow(d as i32) };
        raw.push((c, size * qd));
    }
    let total: Rational = raw.iter().map(|(_, w)| w.clone()).sum();
    if total.is_zero() {
        return Err(Error::Degenerate("all generalized Ewens weights vanish".into()));
    }
    GInvariantLaw::new(raw.into_iter().map(|(c, w)| (c, w / &total)).filter(|(_, w)| !w.is_zero()).collect())
}

/// Statistic evaluated on graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphStatistic {
    /// A permutation statistic, for instances whose vertices are (colored) permutations.
    Perm(StatisticSpec),
    /// d̲ itself.
    Distance,
    /// Sum of the vertex word (the Hamming weight on the hypercube).
    Weight,
}

impl GraphStatistic {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "dist" => Ok(Self::Distance),
            "weight" => Ok(Self::Weight),
            other => Ok(Self::Perm(StatisticSpec::parse(other)?)),
        }
    }

    pub fn eval(&self, g: &dyn ClassifiedGraph, v: &Vertex) -> Result<f64> {
        match self {
            Self::Distance => Ok(g.underline_d(v)? as f64),
            Self::Weight => Ok(v.iter().map(|&x| x as f64).sum()),
            Self::Perm(spec) => {
                if let Some(pi) = g.as_colored(v) {
                    spec.eval_colored(&pi)
                } else if let Some(p) = g.as_permutation(v) {
                    spec.eval(&p)
                } else {
                    Err(Error::InvalidParameter(format!("statistic `{spec}` is undefined on {}", g.descriptor())))
                }
            }
        }
    }
}

impl fmt::Display for GraphStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Perm(s) => write!(f, "{s}"),
            Self::Distance => write!(f, "dist"),
            Self::Weight => write!(f, "weight"),
        }
    }
}

/// Before/after statistic laws for one starting law.
#[derive(Debug, Clone, Serialize)]
pub struct TransferArm {
    pub before: EmpiricalDistribution,
    pub after: EmpiricalDistribution,
    /// |f(after) − f(before)| per trial.
    pub deltas: EmpiricalDistribution,
    pub mean_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub graph: String,
    pub statistic: String,
    pub trials: usize,
    pub a: TransferArm,
    pub b: TransferArm,
    /// Two-sample KS distance between the two after-laws.
    pub ks_after: f64,
}

fn transfer_arm(
    g: &dyn ClassifiedGraph,
    law: &GInvariantLaw,
    statistic: &GraphStatistic,
    trials: usize,
    seed: u64,
    key: u64,
) -> Result<TransferArm> {
    let rows = run_trials(seed, key, trials, |rng| -> Result<(f64, f64, usize)> {
        let v = g_invariant_sample(g, law, rng)?;
        let d = g.underline_d(&v)?;
        let before = statistic.eval(g, &v)?;
        let w = g.run_to_target(&v, rng)?;
        Ok((before, statistic.eval(g, &w)?, d))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mean_distance = rows.iter().map(|r| r.2 as f64).sum::<f64>() / rows.len().max(1) as f64;
    Ok(TransferArm {
        before: EmpiricalDistribution::new(rows.iter().map(|r| r.0).collect())?,
        after: EmpiricalDistribution::new(rows.iter().map(|r| r.1).collect())?,
        deltas: EmpiricalDistribution::new(rows.iter().map(|r| (r.1 - r.0).abs()).collect())?,
        mean_distance,
    })
}

/// Runs both laws to the target class and compares the statistic after the walk.
pub fn transfer_experiment(
    g: &dyn ClassifiedGraph,
    law_a: &GInvariantLaw,
    law_b: &GInvariantLaw,
    statistic: &GraphStatistic,
    trials: usize,
    seed: u64,
) -> Result<TransferReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let a = transfer_arm(g, law_a, statistic, trials, seed, 0)?;
    let b = transfer_arm(g, law_b, statistic, trials, seed, 1)?;
    let ks_after = two_sample_ks(&a.after, &b.after);
    Ok(TransferReport { graph: g.descriptor(), statistic: statistic.to_string(), trials, a, b, ks_after })
}

/// Harness descriptor of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSpec {
    SymTransp(usize),
    SymAdj(usize),
    Even3(usize),
    Hypercube(usize),
    Dihedral { n: usize, conjugacy: bool },
    Colored { n: usize, m: usize },
}

impl GraphSpec {
    /// Parses `sym-transp:n`, `sym-adj:n`, `even3:N`, `hypercube:d`, `dihedral:n[:conj]`,
    /// `colored:n:m`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad graph descriptor `{s}`"));
        let fields: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<usize> { fields.get(i).and_then(|t| t.trim().parse().ok()).ok_or_else(bad) };
        let spec = match (fields[0], fields.len()) {
            ("sym-transp", 2) => Self::SymTransp(num(1)?),
            ("sym-adj", 2) => Self::SymAdj(num(1)?),
            ("even3", 2) => Self::Even3(num(1)?),
            ("hypercube", 2) => Self::Hypercube(num(1)?),
            ("dihedral", 2) => Self::Dihedral { n: num(1)?, conjugacy: false },
            ("dihedral", 3) if fields[2] == "conj" => Self::Dihedral { n: num(1)?, conjugacy: true },
            ("colored", 3) => Self::Colored { n: num(1)?, m: num(2)? },
            _ => return Err(bad()),
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<Box<dyn ClassifiedGraph>> {
        Ok(match *self {
            Self::SymTransp(n) => Box::new(symmetric_transpositions(n)?),
            Self::SymAdj(n) => Box::new(symmetric_adjacent(n)?),
            Self::Even3(n) => Box::new(even_3cycles(n)?),
            Self::Hypercube(d) => Box::new(hypercube(d)?),
            Self::Dihedral { n, conjugacy } => Box::new(dihedral(n, conjugacy)?),
            Self::Colored { n, m } => Box::new(colored_graph(n, m)?),
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SymTransp(n) => write!(f, "sym-transp:{n}"),
            Self::SymAdj(n) => write!(f, "sym-adj:{n}"),
            Self::Even3(n) => write!(f, "even3:{n}"),
            Self::Hypercube(d) => write!(f, "hypercube:{d}"),
            Self::Dihedral { n, conjugacy: false } => write!(f, "dihedral:{n}"),
            Self::Dihedral { n, conjugacy: true } => write!(f, "dihedral:{n}:conj"),
            Self::Colored { n, m } => write!(f, "colored:{n}:{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::rational::rat;
    use crate::sampling::ewens_probability;

    #[test]
    fn symmetric_transpositions_class_graph_of_four() {
        let g = symmetric_transpositions(4).unwrap();
        let r = verify_regularity(&g).unwrap();
        assert!(r.pass);
        assert_eq!(class_graph_edges(&g).unwrap().len(), 5);
        assert_eq!(g.classes().len(), 5);
        assert_eq!(r.e("(1,1,1,1)", "(2,1,1)"), 6);
        assert_eq!(r.e("(2,1,1)", "(1,1,1,1)"), 1);
        assert_eq!(r.e("(2,1,1)", "(3,1)"), 4);
        assert_eq!(r.e("(2,1,1)", "(2,2)"), 1);
        assert_eq!(r.e("(2,1,1)", "(2,1,1)"), 0);
        assert_eq!(r.e("(4)", "(3,1)"), 4);
        assert_eq!(r.e("(4)", "(2,2)"), 2);
        assert!(verify_connectivity(&g).unwrap());
        let sym = symmetry_report(&g).unwrap();
        assert!(!sym.pass);
        assert_eq!(sym.failing_vertices, 6);
        assert_eq!(sym.witness.as_deref(), Some("1,2,4,3"));
        assert_eq!(sym.witness_counts, Some(("2".into(), "3".into())));
        assert!(verify_symmetry(&symmetric_transpositions(3).unwrap()).unwrap());
    }

    #[test]
    fn adjacent_transpositions_are_not_regular() {
        let g = symmetric_adjacent(4).unwrap();
        let r = verify_regularity(&g).unwrap();
        assert!(!r.pass);
        let v = r.violation.unwrap();
        assert_eq!((v.first.as_str(), v.second.as_str()), ("1,3,4,2", "2,1,4,3"));
        assert_eq!(v.neighbor_class, "(1)");
        assert_eq!((v.first_count, v.second_count), (1, 2));
    }

    #[test]
    fn hypercube_counts() {
        let g = hypercube(6).unwrap();
        let r = verify_regularity(&g).unwrap();
        assert!(r.pass);
        for k in 1..=6 {
            assert_eq!(r.e(&format!("({k})"), &format!("({})", k - 1)), k);
            assert_eq!(r.e(&format!("({})", k - 1), &format!("({k})")), 7 - k);
        }
        let v: Vertex = vec![1, 1, 1, 1, 1, 0];
        assert_eq!(g.underline_d(&v).unwrap(), 2);
        assert!(verify_symmetry(&g).unwrap());
        assert!(derived_step_preserves_invariance(&g).unwrap());
    }

    #[test]
    fn closed_form_distances_match_bfs() {
        let graphs: Vec<Box<dyn ClassifiedGraph>> = vec![
            Box::new(symmetric_transpositions(5).unwrap()),
            Box::new(symmetric_adjacent(5).unwrap()),
            Box::new(even_3cycles(5).unwrap()),
            Box::new(even_3cycles(7).unwrap()),
            Box::new(hypercube(8).unwrap()),
            Box::new(dihedral(5, false).unwrap()),
            Box::new(dihedral(6, true).unwrap()),
            Box::new(colored_graph(3, 2).unwrap()),
        ];
        for g in &graphs {
            let table = distance_table(g.as_ref()).unwrap();
            assert_eq!(table.len(), g.vertex_count().to_usize().unwrap(), "{}", g.descriptor());
            for (v, d) in &table {
                assert_eq!(g.underline_d(v).unwrap(), *d, "{} at {}", g.descriptor(), g.format_vertex(v));
            }
        }
    }

    #[test]
    fn regular_instances_pass_all_checks() {
        for desc in ["sym-transp:5", "even3:5", "hypercube:4", "dihedral:4", "dihedral:5:conj", "colored:3:2"] {
            let g = GraphSpec::parse(desc).unwrap().build().unwrap();
            assert_eq!(g.descriptor(), desc);
            assert!(verify_regularity(g.as_ref()).unwrap().pass, "{desc}");
            assert!(verify_connectivity(g.as_ref()).unwrap(), "{desc}");
            assert!(derived_step_preserves_invariance(g.as_ref()).unwrap(), "{desc}");
        }
    }

    #[test]
    fn path_count_symmetry_by_instance() {
        for (desc, expected) in [("hypercube:6", true), ("dihedral:5", true), ("dihedral:6:conj", true), ("sym-transp:5", false)] {
            let g = GraphSpec::parse(desc).unwrap().build().unwrap();
            assert_eq!(verify_symmetry(g.as_ref()).unwrap(), expected, "{desc}");
        }
    }

    #[test]
    fn derived_graph_is_the_merge_graph() {
        for n in 2..=5 {
            let g = symmetric_transpositions(n).unwrap();
            let dist = distance_table(&g).unwrap();
            for v in g.vertices().unwrap() {
                let sigma = Permutation::from_zero_based(v.clone()).unwrap();
                let mut expected: Vec<Vertex> = sigma
                    .admissible_merge_pairs()
                    .into_iter()
                    .map(|(i, j)| {
                        let mut t = sigma.clone();
                        t.swap_positions(i - 1, j - 1);
                        t.into_zero_based()
                    })
                    .collect();
                if expected.is_empty() {
                    expected.push(v.clone());
                }
                expected.sort();
                expected.dedup();
                assert_eq!(derived_successors(&g, &dist, &v).unwrap(), expected);
            }
        }
    }

    #[test]
    fn generalized_ewens_is_ewens() {
        for n in 1..=6 {
            let g = symmetric_transpositions(n).unwrap();
            for q in [rat(1, 2), rat(1, 1), rat(2, 1)] {
                let law = generalized_ewens(&g, &q).unwrap();
                for v in g.vertices().unwrap() {
                    let sigma = Permutation::from_zero_based(v.clone()).unwrap();
                    assert_eq!(law.probability(&g, &v), ewens_probability(&sigma, &q));
                }
            }
            let law = generalized_ewens(&g, &rat(0, 1)).unwrap();
            assert_eq!(law.weights().len(), 1);
            assert_eq!(law.weights()[0].0, vec![n]);
        }
    }

    #[test]
    fn generalized_ewens_on_hypercube() {
        let g = hypercube(4).unwrap();
        let law = generalized_ewens(&g, &rat(0, 1)).unwrap();
        assert_eq!(law.weights(), &[(vec![2], rat(1, 1))]);
        let mut rng = RandomSource::new(3);
        for _ in 0..20 {
            let v = g_invariant_sample(&g, &law, &mut rng).unwrap();
            assert_eq!(v.iter().sum::<u32>(), 2);
        }
        let uniform = generalized_ewens(&g, &rat(1, 1)).unwrap();
        assert_eq!(uniform.class_weight(&vec![1]), rat(4, 16));
        assert_eq!(uniform.probability(&g, &vec![0, 0, 0, 1]), rat(1, 16));
    }

    #[test]
    fn walks_reach_the_target_one_level_at_a_time() {
        let mut rng = RandomSource::new(11);
        for desc in ["sym-transp:7", "sym-adj:6", "even3:7", "hypercube:10", "dihedral:6:conj", "colored:6:3"] {
            let g = GraphSpec::parse(desc).unwrap().build().unwrap();
            let law = GInvariantLaw::uniform(g.as_ref()).unwrap();
            for _ in 0..30 {
                let mut v = g_invariant_sample(g.as_ref(), &law, &mut rng).unwrap();
                let mut d = g.underline_d(&v).unwrap();
                while d > 0 {
                    v = g.derived_step(&v, &mut rng).unwrap();
                    let e = g.underline_d(&v).unwrap();
                    assert_eq!(e + 1, d, "{desc}");
                    d = e;
                }
                assert_eq!(g.class_of(&v), g.target_class());
                assert_eq!(g.run_to_target(&v, &mut rng).unwrap(), v);
            }
        }
    }

    #[test]
    fn uniform_class_sampling() {
        let g = symmetric_adjacent(5).unwrap();
        let mut rng = RandomSource::new(5);
        let mut counts: BTreeMap<Vertex, usize> = BTreeMap::new();
        for _ in 0..9000 {
            let v = g.sample_in_class(&vec![3], &mut rng).unwrap();
            assert_eq!(g.class_of(&v), vec![3]);
            *counts.entry(v).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 15);
        assert!(counts.values().all(|&c| (450..750).contains(&c)));
        assert_eq!(g.class_size(&vec![3]), BigUint::from(15u32));
    }

    #[test]
    fn transfer_between_ewens_zero_and_uniform() {
        let g = symmetric_transpositions(200).unwrap();
        let a = generalized_ewens(&g, &rat(0, 1)).unwrap();
        let b = GInvariantLaw::class_uniform(Partition::single_column(200).parts().to_vec());
        let stat = GraphStatistic::parse("lis").unwrap();
        let r = transfer_experiment(&g, &a, &b, &stat, 300, 9).unwrap();
        assert_eq!(r.a.mean_distance, 0.0);
        assert_eq!(r.b.mean_distance, 199.0);
        assert!(r.ks_after < 0.15, "{}", r.ks_after);
        assert_eq!(r.a.deltas.max(), 0.0);
    }

    #[test]
    fn statistic_mismatch_is_reported() {
        let g = hypercube(4).unwrap();
        assert!(GraphStatistic::parse("lis").unwrap().eval(&g, &vec![0, 1, 0, 1]).is_err());
        assert_eq!(GraphStatistic::Weight.eval(&g, &vec![0, 1, 1, 1]).unwrap(), 3.0);
        assert!(GraphSpec::parse("cube:3").is_err());
        assert!(GraphSpec::parse("hypercube:3").unwrap().build().is_err());
        assert!(GraphSpec::parse("even3:4").unwrap().build().is_err());
    }
}
