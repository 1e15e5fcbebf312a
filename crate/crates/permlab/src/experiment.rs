//! Monte Carlo and exact experiments: one CSV of raw values and one JSON summary per size.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use permlab_core::limits::two_sample_ks;
use permlab_core::montecarlo::run_trials;
use permlab_core::oracle::{exact_law, exact_pushforward, ExactLaw};
use permlab_core::rational::{rat, to_f64};
use permlab_core::sampling::LawSpec;
use permlab_core::stats::StatisticSpec;
use permlab_core::{EmpiricalDistribution, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::sample::Draw;
use crate::spec::{ExperimentSpec, Mode};

/// Quantile levels reported in every summary.
pub const QUANTILES: [(&str, f64); 9] = [
    ("q01", 0.01),
    ("q05", 0.05),
    ("q10", 0.10),
    ("q25", 0.25),
    ("q50", 0.50),
    ("q75", 0.75),
    ("q90", 0.90),
    ("q95", 0.95),
    ("q99", 0.99),
];

/// Substream key offset separating reference draws from the primary ones.
const REFERENCE_KEY: u64 = 1 << 63;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub q01: f64,
    pub q05: f64,
    pub q10: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q90: f64,
    pub q95: f64,
    pub q99: f64,
}

impl Quantiles {
    fn from_fn(f: impl Fn(f64) -> f64) -> Self {
        let q: Vec<f64> = QUANTILES.iter().map(|&(_, p)| f(p)).collect();
        Self { q01: q[0], q05: q[1], q10: q[2], q25: q[3], q50: q[4], q75: q[5], q90: q[6], q95: q[7], q99: q[8] }
    }
}

/// Monte Carlo summary for one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub law: String,
    pub stat: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    pub var: f64,
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    #[serde(flatten)]
    pub quantiles: Quantiles,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ks_vs_reference: Option<f64>,
}

impl Summary {
    /// Summarizes raw values; `values` must be in trial order.
    pub fn from_values(spec: &ExperimentSpec, n: usize, values: &[f64]) -> Result<Self> {
        let dist = EmpiricalDistribution::new(values.to_vec())?;
        Ok(Self {
            law: spec.law.clone(),
            stat: spec.stat.clone(),
            n,
            trials: values.len(),
            seed: spec.seed,
            mean: dist.mean(),
            var: dist.variance(),
            std_error: dist.std_error(),
            min: dist.min(),
            max: dist.max(),
            quantiles: Quantiles::from_fn(|p| dist.quantile(p)),
            reference: None,
            ks_vs_reference: None,
        })
    }
}

/// Exact summary for one size; moments are exact rationals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub law: String,
    pub stat: String,
    pub n: usize,
    pub support: usize,
    pub mean: String,
    pub var: String,
    pub mean_f64: f64,
    pub var_f64: f64,
    pub min: i64,
    pub max: i64,
    #[serde(flatten)]
    pub quantiles: Quantiles,
}

/// Files written by an experiment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutput {
    pub files: Vec<PathBuf>,
}

/// Prints a statistic value: integers without a fractional part, otherwise 17 significant digits.
pub fn format_value(v: f64, integer: bool) -> String {
    if integer && v.fract() == 0.0 && v.abs() < 9.0e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

pub fn values_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("values_n{n}.csv"))
}

pub fn summary_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("summary_n{n}.json"))
}

/// Writes pretty-printed JSON followed by a newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut f = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Draws `trials` values of the statistic at size `n`, ordered by trial.
pub fn draw_values(law: &LawSpec, stat: &StatisticSpec, n: usize, trials: usize, seed: u64, key: u64) -> Result<Vec<f64>> {
    run_trials(seed, key, trials, |rng| Draw::sample(law, n, rng)?.eval(stat))
        .into_iter()
        .collect()
}

/// Executes the experiment and writes its result files under `spec.out`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    spec.validate()?;
    fs::create_dir_all(&spec.out)?;
    let mut out = ExperimentOutput::default();
    match spec.mode {
        Mode::Mc => {
            for &n in &spec.sizes {
                out.files.extend(run_mc(spec, n)?);
            }
        }
        Mode::Exact => {
            for &n in &spec.sizes {
                out.files.extend(run_exact(spec, n)?);
            }
        }
        Mode::Verify => {
            let report = crate::verify::verify_all(&crate::verify::VerifyOptions::default())?;
            let path = spec.out.join("verify.json");
            write_json(&path, &report)?;
            out.files.push(path);
        }
        Mode::Transfer => {
            out.files.extend(crate::transfer::write_transfer(spec)?);
        }
    }
    Ok(out)
}

fn run_mc(spec: &ExperimentSpec, n: usize) -> Result<Vec<PathBuf>> {
    let law = spec.law_spec()?;
    let stat = spec.stat_spec()?;
    let values = draw_values(&law, &stat, n, spec.trials, spec.seed, n as u64)?;

    let csv_path = values_path(&spec.out, n);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["n", "trial", "value"])?;
    let integer = stat.is_integer();
    for (t, v) in values.iter().enumerate() {
        w.write_record([n.to_string(), t.to_string(), format_value(*v, integer)])?;
    }
    w.flush()?;

    let mut summary = Summary::from_values(spec, n, &values)?;
    if let Some(r) = &spec.reference {
        let reference = LawSpec::parse(r)?;
        let ref_values = draw_values(&reference, &stat, n, spec.trials, spec.seed, REFERENCE_KEY | n as u64)?;
        let ks = two_sample_ks(&EmpiricalDistribution::new(values)?, &EmpiricalDistribution::new(ref_values)?);
        summary.reference = Some(r.clone());
        summary.ks_vs_reference = Some(ks);
    }
    let json_path = summary_path(&spec.out, n);
    write_json(&json_path, &summary)?;
    Ok(vec![csv_path, json_path])
}

/// Exact law of an integer statistic under a law at size `n`.
pub fn exact_statistic_law(law: &LawSpec, stat: &StatisticSpec, n: usize) -> Result<ExactLaw<i64>> {
    if !stat.is_integer() {
        return Err(HarnessError::Invalid(format!("statistic `{stat}` is not integer-valued")));
    }
    let perms = exact_law(law, n)?;
    Ok(exact_pushforward(&perms, |s| stat.eval_int(s))?)
}

fn exact_quantile(law: &ExactLaw<i64>, p: f64) -> i64 {
    let target = rat((p * 100.0).round() as i64, 100);
    let mut acc = Rational::zero();
    let mut last = 0;
    for (x, w) in law.iter() {
        acc += w;
        last = *x;
        if acc >= target {
            return *x;
        }
    }
    last
}

fn run_exact(spec: &ExperimentSpec, n: usize) -> Result<Vec<PathBuf>> {
    let law = spec.law_spec()?;
    let stat = spec.stat_spec()?;
    let dist = exact_statistic_law(&law, &stat, n)?;

    let csv_path = values_path(&spec.out, n);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["n", "value", "probability"])?;
    for (x, p) in dist.iter() {
        w.write_record([n.to_string(), x.to_string(), p.to_string()])?;
    }
    w.flush()?;

    let mean = dist.mean();
    let var = dist.variance();
    let summary = ExactSummary {
        law: spec.law.clone(),
        stat: spec.stat.clone(),
        n,
        support: dist.len(),
        mean_f64: to_f64(&mean),
        var_f64: to_f64(&var),
        mean: mean.to_string(),
        var: var.to_string(),
        min: dist.support().next().copied().unwrap_or(0),
        max: dist.support().last().copied().unwrap_or(0),
        quantiles: Quantiles::from_fn(|p| exact_quantile(&dist, p) as f64),
    };
    let json_path = summary_path(&spec.out, n);
    write_json(&json_path, &summary)?;
    Ok(vec![csv_path, json_path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(3.0, true), "3");
        assert_eq!(format_value(0.1, false), "1.0000000000000001e-1");
        assert_eq!(format_value(0.1, false).parse::<f64>().unwrap(), 0.1);
        assert_eq!(format_value(2.5, true), "2.5000000000000000e0");
    }

    #[test]
    fn exact_las_mean() {
        let law = exact_statistic_law(&LawSpec::Uniform, &StatisticSpec::parse("las").unwrap(), 4).unwrap();
        assert_eq!(law.mean().to_string(), "17/6");
        assert_eq!(exact_quantile(&law, 0.01), 1);
        assert_eq!(exact_quantile(&law, 0.99), 4);
    }
}
