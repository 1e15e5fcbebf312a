//! Exhaustive verification of the stability and counting inequalities on small symmetric groups.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::stats::{las, lds, ldcs, lics, lis, rsk_shape, StatisticSpec};

use super::enumerate::{enumerate_sn, ENUMERATION_CAP, FINAL_SET_CAP};
use super::walk_matrix::{class_uniform_law, exact_merge_law};

const STABILITY: &[(&str, i64)] = &[
    ("lis-bound", 2),
    ("lds-bound", 2),
    ("lics-bound", 2),
    ("ldcs-bound", 2),
    ("rsk-prefix-bound", 2),
    ("lambda-i-bound", 4),
    ("las-bound", 6),
];

const LOCAL_DEFAULTS: &[&str] = &[
    "fix", "exc:1", "exc:2", "desc", "desc:2", "peaks", "clicks:2", "clicks:3", "cyc:2", "cyc:3", "trace:2",
    "deg:1", "descset:1,3",
];

/// Every registered lemma id.
pub fn lemma_ids() -> Vec<String> {
    let mut ids: Vec<String> = STABILITY.iter().map(|(id, _)| id.to_string()).collect();
    ids.extend(LOCAL_DEFAULTS.iter().map(|s| format!("local-bound:{s}")));
    ids.push("square-fixed-points".into());
    ids.push("window-change".into());
    ids
}

/// A worst case: the permutation, the transposition applied (1-based, if any) and the
/// values compared. `index` names the coordinate for vector-valued quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub sigma: Permutation,
    pub transposition: Option<(usize, usize)>,
    pub index: Option<usize>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaCase {
    pub n: usize,
    pub max_attained: String,
    pub bound: String,
    pub pass: bool,
    pub tight: bool,
}

/// Outcome of an exhaustive check. `max_attained` and `bound` come from the size whose
/// ratio attained/bound is largest.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub n_min: usize,
    pub n_max: usize,
    pub max_attained: String,
    pub bound: String,
    pub pass: bool,
    pub tight: bool,
    pub witness: Option<Witness>,
    pub per_n: Vec<LemmaCase>,
}

struct Worst {
    value: Rational,
    witness: Option<Witness>,
}

/// Runs the lemma `id` for every n in `n_min..=n_max`.
pub fn verify_lemma(id: &str, n_min: usize, n_max: usize) -> Result<LemmaReport> {
    let id = id.trim();
    let canonical = if id.starts_with("local-bound:") || id.ends_with("-bound") || !is_stability(&format!("{id}-bound"))
    {
        id.to_string()
    } else {
        format!("{id}-bound")
    };
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidParameter(format!("bad range {n_min}..={n_max}")));
    }
    let check: Box<dyn Fn(usize) -> Result<(Worst, Rational)> + Sync> = if let Some((_, b)) =
        STABILITY.iter().find(|(s, _)| *s == canonical)
    {
        let f = stability_functional(&canonical);
        let bound = Rational::from_integer(BigInt::from(*b));
        Box::new(move |n| Ok((transposition_max(n, f)?, bound.clone())))
    } else if let Some(stat) = canonical.strip_prefix("local-bound:") {
        let spec = StatisticSpec::parse(stat)?;
        let (k, m) = spec
            .local_type()
            .ok_or_else(|| Error::InvalidParameter(format!("`{stat}` is not a local statistic")))?;
        Box::new(move |n| {
            let bound = Rational::from_integer(BigInt::from(2 * k * m) * BigInt::from(n).pow(k as u32 - 1));
            let spec = spec.clone();
            let worst = transposition_max(n, move |s: &Permutation| Ok(vec![spec.eval_int(s)?]))?;
            Ok((worst, bound))
        })
    } else if canonical == "square-fixed-points" {
        Box::new(|n| Ok((square_fixed_points(n)?, Rational::zero())))
    } else if canonical == "window-change" {
        Box::new(|n| Ok((window_change(n)?, Rational::one())))
    } else {
        return Err(Error::UnknownLemma(id.to_string()));
    };

    let mut per_n = Vec::new();
    let mut top: Option<(Rational, Rational, Option<Witness>)> = None;
    for n in n_min..=n_max {
        let (worst, bound) = check(n)?;
        let pass = worst.value <= bound;
        let tight = worst.value == bound;
        per_n.push(LemmaCase {
            n,
            max_attained: worst.value.to_string(),
            bound: bound.to_string(),
            pass,
            tight,
        });
        let better = match &top {
            None => true,
            Some((v, b, _)) => exceeds(&worst.value, &bound, v, b),
        };
        if better {
            top = Some((worst.value, bound, worst.witness));
        }
    }
    let (max_attained, bound, witness) = top.expect("non-empty range");
    Ok(LemmaReport {
        lemma: canonical,
        n_min,
        n_max,
        max_attained: max_attained.to_string(),
        bound: bound.to_string(),
        pass: per_n.iter().all(|c| c.pass),
        tight: per_n.iter().any(|c| c.tight),
        witness,
        per_n,
    })
}

fn is_stability(id: &str) -> bool {
    STABILITY.iter().any(|(s, _)| *s == id)
}

/// Compares (v, b) with (v0, b0) by the margin v − b, scaled by |b| when the bound is nonzero.
fn exceeds(v: &Rational, b: &Rational, v0: &Rational, b0: &Rational) -> bool {
    let key = |v: &Rational, b: &Rational| if b.is_zero() { v.clone() } else { (v - b) / b.abs() };
    key(v, b) > key(v0, b0)
}

type Functional = fn(&Permutation) -> Result<Vec<i64>>;

fn stability_functional(id: &str) -> Functional {
    match id {
        "lis-bound" => |s| Ok(vec![lis(s) as i64]),
        "lds-bound" => |s| Ok(vec![lds(s) as i64]),
        "lics-bound" => |s| Ok(vec![lics(s) as i64]),
        "ldcs-bound" => |s| Ok(vec![ldcs(s) as i64]),
        "rsk-prefix-bound" => |s| {
            let shape = rsk_shape(s);
            Ok((1..=s.len()).map(|i| shape.prefix_sum(i) as i64).collect())
        },
        "lambda-i-bound" => |s| {
            let shape = rsk_shape(s);
            Ok((1..=s.len()).map(|i| shape.part(i) as i64).collect())
        },
        _ => |s| Ok(vec![las(s) as i64]),
    }
}

/// max over σ ∈ 𝔖_n, i < j and coordinates of |f(σ∘(i,j)) − f(σ)|, with the lexicographically
/// first worst case as witness.
fn transposition_max<F>(n: usize, f: F) -> Result<Worst>
where
    F: Fn(&Permutation) -> Result<Vec<i64>> + Sync,
{
    let states: Vec<Permutation> = enumerate_sn(n)?.collect();
    let per_state: Vec<(i64, Option<Witness>)> = states
        .par_iter()
        .map(|s| -> Result<(i64, Option<Witness>)> {
            let base = f(s)?;
            let mut best = (0i64, None);
            for i in 1..=n {
                for j in i + 1..=n {
                    let mut t = s.clone();
                    t.swap_positions(i - 1, j - 1);
                    let moved = f(&t)?;
                    for (c, (a, b)) in base.iter().zip(&moved).enumerate() {
                        let d = (a - b).abs();
                        if best.1.is_none() || d > best.0 {
                            best = (
                                d,
                                Some(Witness {
                                    sigma: s.clone(),
                                    transposition: Some((i, j)),
                                    index: (base.len() > 1).then_some(c + 1),
                                    values: vec![a.to_string(), b.to_string()],
                                }),
                            );
                        }
                    }
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let mut worst = Worst { value: Rational::zero(), witness: None };
    let mut top = -1i64;
    for (d, w) in per_state {
        if w.is_some() && d > top {
            top = d;
            worst.witness = w;
        }
    }
    worst.value = Rational::from_integer(BigInt::from(top.max(0)));
    Ok(worst)
}

/// Largest value of (6#(σ) − 3#₁(σ) − 2n) − #₁(σ²); the inequality asks for ≤ 0.
fn square_fixed_points(n: usize) -> Result<Worst> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    let mut best: Option<(i64, Witness)> = None;
    for s in enumerate_sn(n)? {
        let sq = s.compose(&s)?.fixed_point_count() as i64;
        let rhs = 6 * s.num_cycles() as i64 - 3 * s.fixed_point_count() as i64 - 2 * n as i64;
        let defect = rhs - sq;
        if best.as_ref().is_none_or(|(b, _)| defect > *b) {
            best = Some((
                defect,
                Witness { sigma: s, transposition: None, index: None, values: vec![sq.to_string(), rhs.to_string()] },
            ));
        }
    }
    let (defect, witness) = best.expect("𝔖_n is non-empty");
    Ok(Worst { value: Rational::from_integer(defect.into()), witness: Some(witness) })
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// For a class-uniform start of type λ, the probability that the single cycle reached by the
/// merge walk differs from the start somewhere on a window of `w = min(n, a·m)` positions,
/// divided by 2·ℓ(λ)·a·m/n. Windows are {i₁ − i₂ : i₁ ∈ A, 0 ≤ i₂ ≤ m − 1} with card(A) = a;
/// by exchangeability of the disagreement set only the window size matters, and the largest
/// window is the worst case.
fn window_change(n: usize) -> Result<Worst> {
    if n > FINAL_SET_CAP + 1 {
        return Err(Error::CapExceeded { n, cap: FINAL_SET_CAP + 1 });
    }
    let mut best: Option<(Rational, Witness)> = None;
    for lambda in Partition::all(n) {
        let start = class_uniform_law(&lambda)?;
        let rep = start.support().next().expect("class is non-empty").clone();
        let final_law = exact_merge_law(&super::law::ExactLaw::uniform([rep.clone()])?, n - 1)?;
        let mut d_law = vec![Rational::zero(); n + 1];
        for (t, w) in final_law.iter() {
            let d = (1..=n).filter(|&i| t.apply(i) != rep.apply(i)).count();
            d_law[d] += w;
        }
        for a in 1..=n {
            for m in 1..=n {
                let w = (a * m).min(n);
                let total = binomial(n, w);
                let prob: Rational = d_law
                    .iter()
                    .enumerate()
                    .map(|(d, p)| p * (Rational::one() - Rational::new(binomial(n - d, w), total.clone())))
                    .sum();
                let bound = Rational::new(BigInt::from(2 * lambda.len() * a * m), BigInt::from(n));
                let ratio = prob.clone() / bound.clone();
                if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
                    best = Some((
                        ratio,
                        Witness {
                            sigma: rep.clone(),
                            transposition: None,
                            index: Some(a * 100 + m),
                            values: vec![lambda.to_string(), format!("a={a}"), format!("m={m}"), prob.to_string(), bound.to_string()],
                        },
                    ));
                }
            }
        }
    }
    let (value, witness) = best.expect("at least one partition");
    Ok(Worst { value, witness: Some(witness) })
}
