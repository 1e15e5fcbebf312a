//! Coupling experiments: two starting laws pushed through the merge walk (or a class-graph walk).

use std::path::PathBuf;

use permlab_core::class_graphs::{
    generalized_ewens, transfer_experiment, ClassifiedGraph, GInvariantLaw, GraphSpec, GraphStatistic, TransferArm,
};
use permlab_core::limits::two_sample_ks;
use permlab_core::montecarlo::run_trials;
use permlab_core::rational::parse_rational;
use permlab_core::sampling::LawSpec;
use permlab_core::stats::StatisticSpec;
use permlab_core::EmpiricalDistribution;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::experiment::write_json;
use crate::sample::Draw;
use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub var: f64,
    pub min: f64,
    pub max: f64,
}

impl From<&EmpiricalDistribution> for Moments {
    fn from(d: &EmpiricalDistribution) -> Self {
        Self { mean: d.mean(), var: d.variance(), min: d.min(), max: d.max() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmSummary {
    pub law: String,
    pub before: Moments,
    pub after: Moments,
    /// Mean of |f(after) − f(before)|.
    pub mean_abs_delta: f64,
    pub max_abs_delta: f64,
    /// Mean number of walk steps (the distance to the target class).
    pub mean_steps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferSummary {
    pub stat: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub a: ArmSummary,
    pub b: ArmSummary,
    pub ks_before: f64,
    pub ks_after: f64,
}

struct Arm {
    before: EmpiricalDistribution,
    after: EmpiricalDistribution,
    deltas: EmpiricalDistribution,
    mean_steps: f64,
}

fn run_arm(law: &LawSpec, stat: &StatisticSpec, n: usize, trials: usize, seed: u64, key: u64) -> Result<Arm> {
    let rows = run_trials(seed, key, trials, |rng| -> Result<(f64, f64, usize)> {
        let d = Draw::sample(law, n, rng)?;
        let before = d.eval(stat)?;
        let (end, steps) = d.merge_to_cycle(rng)?;
        Ok((before, end.eval(stat)?, steps))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Arm {
        before: EmpiricalDistribution::new(rows.iter().map(|r| r.0).collect())?,
        after: EmpiricalDistribution::new(rows.iter().map(|r| r.1).collect())?,
        deltas: EmpiricalDistribution::new(rows.iter().map(|r| (r.1 - r.0).abs()).collect())?,
        mean_steps: rows.iter().map(|r| r.2 as f64).sum::<f64>() / rows.len() as f64,
    })
}

fn arm_summary(law: String, before: &EmpiricalDistribution, after: &EmpiricalDistribution, deltas: &EmpiricalDistribution, mean_steps: f64) -> ArmSummary {
    ArmSummary {
        law,
        before: before.into(),
        after: after.into(),
        mean_abs_delta: deltas.mean(),
        max_abs_delta: deltas.max(),
        mean_steps,
    }
}

/// Runs `law_a` and `law_b` at size `n` through the merge walk to a single cycle.
pub fn transfer(law_a: &str, law_b: &str, stat: &str, n: usize, trials: usize, seed: u64) -> Result<TransferSummary> {
    if trials == 0 {
        return Err(HarnessError::Invalid("trials must be at least 1".into()));
    }
    let (la, lb) = (LawSpec::parse(law_a)?, LawSpec::parse(law_b)?);
    if la.colors() != lb.colors() {
        return Err(HarnessError::Invalid(format!("laws `{law_a}` and `{law_b}` live on different spaces")));
    }
    let stat_spec = StatisticSpec::parse(stat)?;
    let key = 2 * n as u64;
    let a = run_arm(&la, &stat_spec, n, trials, seed, key)?;
    let b = run_arm(&lb, &stat_spec, n, trials, seed, key + 1)?;
    Ok(TransferSummary {
        stat: stat.to_string(),
        graph: None,
        n: Some(n),
        trials,
        seed,
        ks_before: two_sample_ks(&a.before, &b.before),
        ks_after: two_sample_ks(&a.after, &b.after),
        a: arm_summary(law_a.to_string(), &a.before, &a.after, &a.deltas, a.mean_steps),
        b: arm_summary(law_b.to_string(), &b.before, &b.after, &b.deltas, b.mean_steps),
    })
}

/// Parses a law on a class graph: `uniform`, `gewens:q` (alias `ewens:q`) or `class:<label>`,
/// where the label is the comma list printed by the instance, e.g. `class:2,1,1`.
pub fn parse_graph_law(g: &dyn ClassifiedGraph, s: &str) -> Result<GInvariantLaw> {
    let s = s.trim();
    let (head, rest) = s.split_once(':').unwrap_or((s, ""));
    match head {
        "uniform" if rest.is_empty() => Ok(GInvariantLaw::uniform(g)?),
        "gewens" | "ewens" => Ok(generalized_ewens(g, &parse_rational(rest)?)?),
        "class" => {
            let label = rest
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| HarnessError::Invalid(format!("bad class label in `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            if !g.classes().contains(&label) {
                return Err(HarnessError::Invalid(format!("`{s}` is not a class of {}", g.descriptor())));
            }
            Ok(GInvariantLaw::class_uniform(label))
        }
        _ => Err(HarnessError::Invalid(format!("unknown graph law `{s}`"))),
    }
}

fn graph_arm(law: String, arm: &TransferArm) -> ArmSummary {
    arm_summary(law, &arm.before, &arm.after, &arm.deltas, arm.mean_distance)
}

/// Runs two graph laws to the target class of `graph`.
pub fn graph_transfer(graph: &str, law_a: &str, law_b: &str, stat: &str, trials: usize, seed: u64) -> Result<TransferSummary> {
    let g = GraphSpec::parse(graph)?.build()?;
    let a = parse_graph_law(g.as_ref(), law_a)?;
    let b = parse_graph_law(g.as_ref(), law_b)?;
    let statistic = GraphStatistic::parse(stat)?;
    let r = transfer_experiment(g.as_ref(), &a, &b, &statistic, trials, seed)?;
    Ok(TransferSummary {
        stat: stat.to_string(),
        graph: Some(g.descriptor()),
        n: None,
        trials,
        seed,
        ks_before: two_sample_ks(&r.a.before, &r.b.before),
        ks_after: r.ks_after,
        a: graph_arm(law_a.to_string(), &r.a),
        b: graph_arm(law_b.to_string(), &r.b),
    })
}

/// Transfer mode of [`crate::run_experiment`]: one `transfer_n{n}.json` per size, or a single
/// `transfer_graph.json` when a graph is given.
pub(crate) fn write_transfer(spec: &ExperimentSpec) -> Result<Vec<PathBuf>> {
    let reference = spec
        .reference
        .as_deref()
        .ok_or_else(|| HarnessError::Invalid("transfer mode needs a reference law".into()))?;
    let mut files = Vec::new();
    if let Some(graph) = &spec.graph {
        let summary = graph_transfer(graph, &spec.law, reference, &spec.stat, spec.trials, spec.seed)?;
        let path = spec.out.join("transfer_graph.json");
        write_json(&path, &summary)?;
        files.push(path);
        return Ok(files);
    }
    for &n in &spec.sizes {
        let summary = transfer(&spec.law, reference, &spec.stat, n, spec.trials, spec.seed)?;
        let path = spec.out.join(format!("transfer_n{n}.json"));
        write_json(&path, &summary)?;
        files.push(path);
    }
    Ok(files)
}
