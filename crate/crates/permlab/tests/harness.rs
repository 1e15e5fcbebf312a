use std::fs;
use std::path::Path;

use num_traits::One;
use permlab::experiment::{summary_path, values_path, ExactSummary, Summary};
use permlab::verify::{verify_all, Status, VerifyOptions};
use permlab::{run_experiment, transfer, ExperimentSpec, Mode};
use permlab_core::limits::k0;
use permlab_core::Rational;

fn spec(json: &str, out: &Path) -> ExperimentSpec {
    let mut s = ExperimentSpec::from_json(json).unwrap();
    s.out = out.to_path_buf();
    s
}

fn run_with_threads(spec: &ExperimentSpec, threads: usize) -> Vec<(String, Vec<u8>)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let files = pool.install(|| run_experiment(spec)).unwrap().files;
    files
        .into_iter()
        .map(|f| (f.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&f).unwrap()))
        .collect()
}

#[test]
fn outputs_do_not_depend_on_worker_count() {
    let cases = [
        ("ewens:1/2", "lis", "uniform"),
        ("uniform", "height-dist", "class:n"),
        ("colored:2:uniform", "colored-lis", "colored:2:ewens:1"),
    ];
    for (law, stat, reference) in cases {
        let (d1, d4) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let json = format!(r#"{{"law": "{law}", "stat": "{stat}", "sizes": [40, 90], "trials": 300, "seed": 11, "reference": "{reference}"}}"#);
        let one = run_with_threads(&spec(&json, d1.path()), 1);
        let four = run_with_threads(&spec(&json, d4.path()), 4);
        assert_eq!(one.len(), 4);
        assert_eq!(one, four, "{law} {stat}");
        let again = run_with_threads(&spec(&json, d1.path()), 3);
        assert_eq!(one, again);
    }
}

#[test]
fn summary_matches_the_raw_csv() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(r#"{"law": "uniform", "stat": "height-dist", "sizes": [30], "trials": 257, "seed": 5}"#, dir.path());
    run_experiment(&s).unwrap();
    let mut reader = csv::Reader::from_path(values_path(dir.path(), 30)).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["n", "trial", "value"]);
    let mut values = Vec::new();
    for (t, row) in reader.records().enumerate() {
        let row = row.unwrap();
        assert_eq!(row[0].parse::<usize>().unwrap(), 30);
        assert_eq!(row[1].parse::<usize>().unwrap(), t);
        values.push(row[2].parse::<f64>().unwrap());
    }
    let written: Summary = serde_json::from_str(&fs::read_to_string(summary_path(dir.path(), 30)).unwrap()).unwrap();
    let recomputed = Summary::from_values(&s, 30, &values).unwrap();
    assert_eq!(written, recomputed);
    assert!(written.quantiles.q01 <= written.quantiles.q50 && written.quantiles.q50 <= written.quantiles.q99);
}

#[test]
fn integer_values_are_written_as_integers() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(r#"{"law": "class:3,n", "stat": "fix", "sizes": [7], "trials": 20, "seed": 1}"#, dir.path());
    run_experiment(&s).unwrap();
    let text = fs::read_to_string(values_path(dir.path(), 7)).unwrap();
    assert!(text.lines().skip(1).all(|l| l == format!("7,{},0", l.split(',').nth(1).unwrap())));
}

#[test]
fn validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let zero = spec(r#"{"sizes": [10], "trials": 0}"#, dir.path());
    assert!(run_experiment(&zero).is_err());
    let too_big = spec(r#"{"sizes": [9], "mode": "exact", "stat": "las"}"#, dir.path());
    assert!(run_experiment(&too_big).is_err());
    let bad_law = spec(r#"{"law": "mallows:2", "sizes": [5], "trials": 3}"#, dir.path());
    assert!(run_experiment(&bad_law).is_err());
}

#[test]
fn exact_las_mean_at_four() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(r#"{"law": "uniform", "stat": "las", "sizes": [4], "mode": "exact"}"#, dir.path());
    assert_eq!(s.mode, Mode::Exact);
    run_experiment(&s).unwrap();
    let summary: ExactSummary = serde_json::from_str(&fs::read_to_string(summary_path(dir.path(), 4)).unwrap()).unwrap();
    assert_eq!(summary.mean, "17/6");
    let csv = fs::read_to_string(values_path(dir.path(), 4)).unwrap();
    assert!(csv.starts_with("n,value,probability\n4,1,1/24\n"));
}

#[test]
fn ewens_zero_lis_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(r#"{"law": "ewens:0", "stat": "lis", "sizes": [10000], "trials": 2000, "seed": 7}"#, dir.path());
    run_experiment(&s).unwrap();
    let summary: Summary = serde_json::from_str(&fs::read_to_string(summary_path(dir.path(), 10000)).unwrap()).unwrap();
    let scaled = summary.mean / 100.0;
    assert!((1.90..=2.00).contains(&scaled), "{scaled}");
}

#[test]
fn transfer_after_laws_agree() {
    let r = transfer("uniform", "ewens:0", "lis", 10_000, 2000, 3).unwrap();
    assert!(r.ks_after < 0.06, "{}", r.ks_after);
    assert_eq!(r.b.mean_steps, 0.0);
    assert!(r.a.mean_steps > 5.0);
    let same = transfer("class:n", "ewens:0", "lis", 2000, 1000, 4).unwrap();
    assert!(same.ks_before < 0.06, "{}", same.ks_before);
    assert!(transfer("uniform", "colored:2:uniform", "lis", 10, 5, 0).is_err());
}

#[test]
fn transfer_mode_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(
        r#"{"law": "uniform", "reference": "ewens:1", "stat": "lis", "sizes": [50], "trials": 100, "mode": "transfer"}"#,
        dir.path(),
    );
    let files = run_experiment(&s).unwrap().files;
    assert_eq!(files, vec![dir.path().join("transfer_n50.json")]);
    let g = spec(
        r#"{"law": "uniform", "reference": "gewens:0", "stat": "dist", "graph": "hypercube:10", "trials": 200, "mode": "transfer"}"#,
        dir.path(),
    );
    let files = run_experiment(&g).unwrap().files;
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(v["ks_after"], 0.0);
    assert_eq!(v["b"]["mean_steps"], 0.0);
}

#[test]
fn verify_all_passes_with_known_warnings() {
    let report = verify_all(&VerifyOptions::default()).unwrap();
    let failures: Vec<_> = report.failures().map(|e| e.check.clone()).collect();
    assert!(report.ok(), "{failures:?}");
    let adj = report.entries.iter().find(|e| e.check == "regularity:sym-adj:4").unwrap();
    assert_eq!(adj.status, Status::Warn);
    assert!(report.entries.iter().any(|e| e.check == "lemma:lis-bound" && e.status == Status::Pass));
    let again = verify_all(&VerifyOptions::default()).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), serde_json::to_string(&again).unwrap());
}

fn mutated(i: i64) -> Rational {
    if i == -1 {
        k0(i) + Rational::one()
    } else {
        k0(i)
    }
}

#[test]
fn broken_kernel_fails_naming_the_window() {
    let options = VerifyOptions { kernel: mutated, lemmas: false, ..VerifyOptions::default() };
    let report = verify_all(&options).unwrap();
    assert!(!report.ok());
    let failed: Vec<_> = report.failures().collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].check, "kernel:descent-window");
    assert!(failed[0].detail.contains("A = {1,2}"), "{}", failed[0].detail);
}
