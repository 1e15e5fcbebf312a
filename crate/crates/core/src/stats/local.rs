//! Local statistics: descents, exceedances, peaks, fixed points, cycle counts, clicks of the
//! permutation graph, vertex degrees and the longest alternating subsequence.

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::perm::Permutation;

/// Number of `i` with σ(i+1) + j ≤ σ(i).
pub fn j_descent_count(sigma: &Permutation, j: usize) -> usize {
    let w = sigma.as_zero_based();
    w.windows(2).filter(|x| x[1] as usize + j <= x[0] as usize).count()
}

pub fn descent_count(sigma: &Permutation) -> usize {
    j_descent_count(sigma, 1)
}

/// D(σ) = {i : σ(i+1) < σ(i)}, 1-based.
pub fn descent_set(sigma: &Permutation) -> Vec<usize> {
    let w = sigma.as_zero_based();
    (0..w.len().saturating_sub(1)).filter(|&k| w[k + 1] < w[k]).map(|k| k + 1).collect()
}

/// Whether A ⊆ D(σ). Elements of A beyond n−1 are never descents.
pub fn descent_indicator(sigma: &Permutation, a: &[usize]) -> Result<bool> {
    if a.contains(&0) {
        return Err(Error::OutOfRange { value: 0, n: sigma.len() });
    }
    let w = sigma.as_zero_based();
    Ok(a.iter().all(|&i| i < w.len() && w[i] < w[i - 1]))
}

/// Number of `i` with σ(i) ≥ i + j.
pub fn exceedance_count(sigma: &Permutation, j: usize) -> usize {
    sigma.as_zero_based().iter().enumerate().filter(|(k, &v)| v as usize >= k + j).count()
}

/// Number of `1 < i < n` with σ(i−1) < σ(i) > σ(i+1).
pub fn peak_count(sigma: &Permutation) -> usize {
    sigma.as_zero_based().windows(3).filter(|x| x[0] < x[1] && x[1] > x[2]).count()
}

pub fn fixed_point_count(sigma: &Permutation) -> usize {
    sigma.fixed_point_count()
}

/// #_j(σ).
pub fn cycles_of_length(sigma: &Permutation, j: usize) -> usize {
    sigma.count_cycles_of_length(j)
}

/// tr(σ^k), the number of fixed points of σ^k.
pub fn trace_power(sigma: &Permutation, k: u64) -> usize {
    let (_, lengths) = sigma.cycle_index();
    lengths.iter().filter(|&&l| k.is_multiple_of(l as u64)).sum()
}

/// K_j(σ): decreasing subsequences of length `j`, i.e. `j`-cliques of the permutation graph.
/// Dynamic programming over lengths with a Fenwick tree, O(j·n log n).
pub fn clicks(sigma: &Permutation, j: usize) -> Result<u128> {
    if j == 0 {
        return Err(Error::InvalidParameter("clicks need j ≥ 1".into()));
    }
    let w = sigma.as_zero_based();
    let n = w.len();
    if j > n {
        return Ok(0);
    }
    let mut ends: Vec<u128> = vec![1; n];
    for _ in 1..j {
        let mut f = Fenwick::new(n);
        let mut next = vec![0u128; n];
        for (k, &v) in w.iter().enumerate() {
            next[k] = f.suffix(v as usize + 1);
            f.add(v as usize, ends[k]);
        }
        ends = next;
    }
    Ok(ends.iter().sum())
}

pub fn inversion_count(sigma: &Permutation) -> u64 {
    crate::fenwick::inversions(sigma.as_zero_based())
}

/// Degree of vertex `k` (1-based position) in the permutation graph.
pub fn degree(sigma: &Permutation, k: usize) -> Result<usize> {
    let w = sigma.as_zero_based();
    if k == 0 || k > w.len() {
        return Err(Error::OutOfRange { value: k, n: w.len() });
    }
    let v = w[k - 1];
    let before = w[..k - 1].iter().filter(|&&x| x > v).count();
    let after = w[k..].iter().filter(|&&x| x < v).count();
    Ok(before + after)
}

/// LAS(σ) = 1 + M₁ + #{turning points}, for alternating sequences starting with a descent.
pub fn las(sigma: &Permutation) -> usize {
    let w = sigma.as_zero_based();
    if w.len() < 2 {
        return 1;
    }
    let m1 = usize::from(w[0] > w[1]);
    let turns = w
        .windows(3)
        .filter(|x| (x[0] > x[1] && x[1] < x[2]) || (x[0] < x[1] && x[1] > x[2]))
        .count();
    1 + m1 + turns
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_sn;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let s = p("5,3,2,1,4");
        assert_eq!(descent_set(&s), vec![1, 2, 3]);
        assert_eq!(descent_count(&s), 3);
        let r = p("3,2,1");
        assert_eq!(clicks(&r, 2).unwrap(), 3);
        assert_eq!(clicks(&r, 3).unwrap(), 1);
        assert_eq!(clicks(&r, 4).unwrap(), 0);
        for k in 1..=3 {
            assert_eq!(degree(&r, k).unwrap(), 2);
        }
        assert_eq!(peak_count(&p("1,3,2")), 1);
        assert_eq!(las(&p("2,1")), 2);
        assert_eq!(las(&p("1,2")), 1);
        assert_eq!(las(&s), 3);
        assert_eq!(las(&Permutation::identity(1)), 1);
        assert!(descent_indicator(&s, &[1, 3]).unwrap());
        assert!(!descent_indicator(&s, &[4]).unwrap());
    }

    fn brute_las(w: &[usize]) -> usize {
        let n = w.len();
        (1u32..1 << n)
            .filter(|mask| {
                let vals: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| w[k]).collect();
                vals.windows(2).enumerate().all(|(k, x)| if k % 2 == 0 { x[0] > x[1] } else { x[0] < x[1] })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn evaluators_match_definitions_exhaustively() {
        for n in 1..=6 {
            for s in enumerate_sn(n).unwrap() {
                let w = s.one_line();
                for j in 1..=3 {
                    let brute = (0..n - 1).filter(|&i| w[i + 1] + j <= w[i]).count();
                    assert_eq!(j_descent_count(&s, j), brute);
                    let brute = (0..n).filter(|&i| w[i] >= i + 1 + j).count();
                    assert_eq!(exceedance_count(&s, j), brute);
                }
                let brute = (1..n.saturating_sub(1)).filter(|&i| w[i - 1] < w[i] && w[i] > w[i + 1]).count();
                assert_eq!(peak_count(&s), brute);
                assert_eq!(fixed_point_count(&s), (0..n).filter(|&i| w[i] == i + 1).count());
                for k in 1..=4u64 {
                    assert_eq!(trace_power(&s, k), s.power(k).fixed_point_count());
                }
                for j in 1..=4 {
                    let mut brute = 0u128;
                    let positions: Vec<usize> = (0..n).collect();
                    for mask in 0u32..1 << n {
                        if mask.count_ones() as usize != j {
                            continue;
                        }
                        let vals: Vec<usize> = positions.iter().filter(|&&k| mask >> k & 1 == 1).map(|&k| w[k]).collect();
                        if vals.windows(2).all(|x| x[0] > x[1]) {
                            brute += 1;
                        }
                    }
                    assert_eq!(clicks(&s, j).unwrap(), brute);
                }
                assert_eq!(clicks(&s, 2).unwrap(), inversion_count(&s) as u128);
                for k in 1..=n {
                    let brute = (0..n).filter(|&i| (w[i] as i64 - w[k - 1] as i64) * (i as i64 - (k as i64 - 1)) < 0).count();
                    assert_eq!(degree(&s, k).unwrap(), brute);
                }
                if n <= 7 {
                    assert_eq!(las(&s), brute_las(&w));
                }
            }
        }
    }
}
