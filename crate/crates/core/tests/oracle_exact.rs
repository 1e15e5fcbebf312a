//! Exact rational checks of the walk, the pushforwards and the lemma registry.

use permlab_core::oracle::{
    class_uniform_law, exact_epsilon, exact_law, exact_pushforward, exact_walk_matrix, verify_lemma, ExactLaw, Scaling,
};
use permlab_core::partition::Partition;
use permlab_core::rational::rat;
use permlab_core::sampling::LawSpec;
use permlab_core::stats::{descent_count, lis, StatisticSpec};

#[test]
fn pushforward_examples() {
    let uniform = exact_law(&LawSpec::Uniform, 3).unwrap();
    let lis_law = exact_pushforward(&uniform, |s| Ok(lis(s) as i64)).unwrap();
    assert_eq!(lis_law.probability(&1), rat(1, 6));
    assert_eq!(lis_law.probability(&2), rat(4, 6));
    assert_eq!(lis_law.probability(&3), rat(1, 6));
    let desc = exact_pushforward(&uniform, |s| Ok(descent_count(s) as i64)).unwrap();
    assert_eq!(desc.probability(&1), rat(2, 3));
    let ewens = exact_law(&LawSpec::parse("ewens:1").unwrap(), 3).unwrap();
    let fix = exact_pushforward(&ewens, |s| Ok(s.fixed_point_count() as i64)).unwrap();
    assert_eq!(fix.mean(), rat(1, 1));
}

#[test]
fn walk_matrix_preserves_class_uniformity() {
    for n in 2..=5 {
        let m = exact_walk_matrix(n).unwrap();
        assert!(m.rows_sum_to_one());
        for lambda in Partition::all(n) {
            let v = m.vector_of(&class_uniform_law(&lambda).unwrap());
            assert!(m.is_class_uniform(&m.apply(&v)), "n = {n}, λ = {lambda}");
        }
    }
}

#[test]
fn law_after_the_walk_is_independent_of_the_start() {
    for n in 3..=5 {
        let m = exact_walk_matrix(n).unwrap();
        let after = |law: &ExactLaw<_>| -> ExactLaw<i64> {
            let v = m.apply_steps(&m.vector_of(law), n - 1);
            let end = m.law_of(&v).unwrap();
            exact_pushforward(&end, |s| StatisticSpec::Lis.eval_int(s)).unwrap()
        };
        let reference = after(&exact_law(&LawSpec::Uniform, n).unwrap());
        for spec in ["ewens:0", "ewens:3", "class:2,n"] {
            let law = exact_law(&LawSpec::parse(spec).unwrap(), n).unwrap();
            assert_eq!(after(&law), reference, "{spec} at n = {n}");
        }
    }
}

#[test]
fn lemma_registry_holds_on_the_stated_ranges() {
    for id in ["lis", "lds", "lics", "ldcs", "las"] {
        assert!(verify_lemma(id, 3, 7).unwrap().pass, "{id}");
    }
    for id in ["rsk-prefix", "lambda-i", "local-bound:clicks:2", "local-bound:peaks", "local-bound:desc"] {
        assert!(verify_lemma(id, 3, 6).unwrap().pass, "{id}");
    }
    let w = verify_lemma("window-change", 2, 6).unwrap();
    assert!(w.pass, "{w:?}");
}

#[test]
fn epsilon_chain_for_every_integer_statistic() {
    for s in ["lis", "lds", "lics", "ldcs", "rsk:2", "rsk-prefix:2", "las", "desc", "exc:1", "peaks", "fix", "cyc:2", "inv", "clicks:3"] {
        let spec = StatisticSpec::parse(s).unwrap();
        let t = exact_epsilon(6, &spec, Scaling::One).unwrap();
        assert!(t.chain_holds, "{s}");
        assert_eq!(t.eps_prime_raw[0], 0);
    }
    let lis4 = exact_epsilon(4, &StatisticSpec::Lis, Scaling::SqrtN).unwrap();
    assert_eq!(lis4.eps_n, 1.0);
}
