//! Chi-square goodness of fit of every sampler against its exact law on a small group.

use std::collections::BTreeMap;

use permlab_core::montecarlo::run_trials;
use permlab_core::oracle::exact_law;
use permlab_core::rational::to_f64;
use permlab_core::sampling::{sample_colored, sample_uniform_cycle, LawSpec};
use permlab_core::walks::{inverse_step, run_to_single_cycle, threshold_merge, CycleTypeLaw};
use permlab_core::{Permutation, RandomSource};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// p-value of Pearson's statistic for observed counts against expected probabilities.
fn chi_square_p(observed: &BTreeMap<Permutation, usize>, expected: &BTreeMap<Permutation, f64>, trials: usize) -> f64 {
    assert!(observed.keys().all(|k| expected.contains_key(k)), "sample outside the support");
    let stat: f64 = expected
        .iter()
        .map(|(k, p)| {
            let e = p * trials as f64;
            let o = *observed.get(k).unwrap_or(&0) as f64;
            (o - e).powi(2) / e
        })
        .sum();
    let dof = (expected.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

fn tally(samples: Vec<Permutation>) -> BTreeMap<Permutation, usize> {
    let mut counts = BTreeMap::new();
    for s in samples {
        *counts.entry(s).or_insert(0) += 1;
    }
    counts
}

fn check_law(descriptor: &str, n: usize, seed: u64) {
    let law = LawSpec::parse(descriptor).unwrap();
    let exact = exact_law(&law, n).unwrap();
    let expected: BTreeMap<Permutation, f64> = exact.iter().map(|(s, p)| (s.clone(), to_f64(p))).collect();
    let trials = 40_000;
    let observed = tally(run_trials(seed, n as u64, trials, |rng| law.sample(n, rng).unwrap()));
    let p = chi_square_p(&observed, &expected, trials);
    assert!(p > 1e-4, "{descriptor} at n = {n}: p = {p}");
}

#[test]
fn uniform_sampler() {
    check_law("uniform", 4, 1);
}

#[test]
fn ewens_samplers() {
    check_law("ewens:2", 4, 2);
    check_law("ewens:1/2", 4, 3);
    check_law("ewens:0", 5, 4);
}

#[test]
fn class_samplers() {
    check_law("class:2,2", 4, 5);
    check_law("class:3,1,1", 5, 6);
    check_law("class:n,1", 5, 7);
}

#[test]
fn sattolo_is_uniform_on_cycles() {
    let exact = exact_law(&LawSpec::parse("ewens:0").unwrap(), 5).unwrap();
    let expected: BTreeMap<Permutation, f64> = exact.iter().map(|(s, p)| (s.clone(), to_f64(p))).collect();
    let observed = tally(run_trials(8, 5, 40_000, |rng| sample_uniform_cycle(5, rng).unwrap()));
    assert!(chi_square_p(&observed, &expected, 40_000) > 1e-4);
}

#[test]
fn merge_walk_from_any_class_ends_uniform_on_cycles() {
    let exact = exact_law(&LawSpec::parse("ewens:0").unwrap(), 5).unwrap();
    let expected: BTreeMap<Permutation, f64> = exact.iter().map(|(s, p)| (s.clone(), to_f64(p))).collect();
    for (k, start) in ["class:2,2,1", "class:1,1,1,1,1", "uniform"].iter().enumerate() {
        let law = LawSpec::parse(start).unwrap();
        let observed = tally(run_trials(20 + k as u64, 5, 40_000, |rng| {
            let s = law.sample(5, rng).unwrap();
            run_to_single_cycle(&s, rng, false).0
        }));
        assert!(chi_square_p(&observed, &expected, 40_000) > 1e-4, "{start}");
    }
}

#[test]
fn inverse_step_from_uniform_cycles_reproduces_the_law() {
    let n = 4;
    for (k, target) in ["uniform", "ewens:3"].iter().enumerate() {
        let law = LawSpec::parse(target).unwrap();
        let exact = exact_law(&law, n).unwrap();
        let expected: BTreeMap<Permutation, f64> = exact.iter().map(|(s, p)| (s.clone(), to_f64(p))).collect();
        let cycle_law = CycleTypeLaw::exact_of(&law, n).unwrap();
        let observed = tally(run_trials(30 + k as u64, n as u64, 40_000, |rng| {
            let c = sample_uniform_cycle(n, rng).unwrap();
            inverse_step(&c, &cycle_law, rng).unwrap()
        }));
        assert!(chi_square_p(&observed, &expected, 40_000) > 1e-4, "{target}");
    }
}

#[test]
fn threshold_merge_matches_its_exact_law() {
    let sigma = Permutation::parse("(1 2)(3)(4 5 6)").unwrap();
    let exact = permlab_core::oracle::threshold_merge_law(&sigma, 3).unwrap();
    let expected: BTreeMap<Permutation, f64> = exact.iter().map(|(s, p)| (s.clone(), to_f64(p))).collect();
    let mut rng = RandomSource::new(40);
    let samples: Vec<Permutation> = (0..20_000).map(|_| threshold_merge(&sigma, 3, &mut rng).unwrap()).collect();
    let observed = tally(samples);
    assert!(chi_square_p(&observed, &expected, 20_000) > 1e-4);
}

#[test]
fn colored_sampler_has_independent_uniform_colors() {
    let trials = 40_000;
    let rows = run_trials(50, 3, trials, |rng| {
        let pi = sample_colored(3, 2, &LawSpec::Uniform, rng).unwrap();
        (pi.sigma().clone(), pi.colors().to_vec())
    });
    let mut counts: BTreeMap<(Permutation, Vec<u32>), usize> = BTreeMap::new();
    for r in rows {
        *counts.entry(r).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), 48);
    let e = trials as f64 / 48.0;
    let stat: f64 = counts.values().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let p = 1.0 - ChiSquared::new(47.0).unwrap().cdf(stat);
    assert!(p > 1e-4, "p = {p}");
}
