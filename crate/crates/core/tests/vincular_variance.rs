//! Diagnostic for the growth exponent of the variance of vincular pattern counts: for a
//! pattern of size p with q adjacency constraints, Var grows like n^{2(p−q)−1}.

use permlab_core::montecarlo::run_trials;
use permlab_core::sampling::LawSpec;
use permlab_core::stats::{vincular_count, VincularPattern};
use permlab_core::EmpiricalDistribution;

fn variance(pattern: &VincularPattern, n: usize, seed: u64) -> f64 {
    let values = run_trials(seed, n as u64, 3000, |rng| {
        vincular_count(&LawSpec::Uniform.sample(n, rng).unwrap(), pattern).unwrap() as f64
    });
    EmpiricalDistribution::new(values).unwrap().variance()
}

#[test]
fn variance_exponents() {
    for (tau, x, lo, hi) in [("21", "1", 50, 400), ("132", "1", 40, 160), ("132", "1,2", 50, 400)] {
        let pattern = VincularPattern::parse(tau, x).unwrap();
        let expected = 2.0 * (pattern.size() - pattern.adjacency_count()) as f64 - 1.0;
        let slope = (variance(&pattern, hi, 2).ln() - variance(&pattern, lo, 1).ln()) / ((hi as f64).ln() - (lo as f64).ln());
        assert!((slope - expected).abs() < 0.3, "{pattern}: slope {slope:.3}, expected {expected}");
    }
}
