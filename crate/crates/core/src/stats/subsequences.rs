//! Longest increasing/decreasing subsequences, their circular variants, and the colored LIS.

use crate::perm::Permutation;
use crate::sampling::ColoredPermutation;

/// Patience sorting on an arbitrary sequence of distinct keys.
pub fn lis_of<T: Ord + Copy>(values: impl IntoIterator<Item = T>) -> usize {
    let mut tails: Vec<T> = Vec::new();
    for v in values {
        let k = tails.partition_point(|&t| t < v);
        if k == tails.len() {
            tails.push(v);
        } else {
            tails[k] = v;
        }
    }
    tails.len()
}

pub fn lis(sigma: &Permutation) -> usize {
    lis_of(sigma.as_zero_based().iter().copied())
}

pub fn lds(sigma: &Permutation) -> usize {
    lis_of(sigma.as_zero_based().iter().map(|&v| std::cmp::Reverse(v)))
}

/// Longest subsequence that is increasing after some cyclic rotation of the positions.
pub fn lics(sigma: &Permutation) -> usize {
    let w = sigma.as_zero_based();
    let n = w.len();
    (0..n)
        .map(|r| lis_of(w[r..].iter().chain(&w[..r]).copied()))
        .max()
        .unwrap_or(0)
}

/// Decreasing counterpart of [`lics`].
pub fn ldcs(sigma: &Permutation) -> usize {
    let w = sigma.as_zero_based();
    let n = w.len();
    (0..n)
        .map(|r| lis_of(w[r..].iter().chain(&w[..r]).map(|&v| std::cmp::Reverse(v))))
        .max()
        .unwrap_or(0)
}

/// max over colors `p` present of `m·(LIS of the color-p subword − 1) + p`.
pub fn colored_lis(pi: &ColoredPermutation) -> usize {
    let m = pi.m();
    let w = pi.sigma().as_zero_based();
    let mut subwords: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (k, &c) in pi.colors().iter().enumerate() {
        subwords[c as usize - 1].push(w[k]);
    }
    subwords
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(p, s)| m * (lis_of(s.iter().copied()) - 1) + p + 1)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn brute_lis(w: &[usize], decreasing: bool) -> usize {
        let n = w.len();
        (0u32..1 << n)
            .filter(|mask| {
                let vals: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| w[k]).collect();
                vals.windows(2).all(|x| if decreasing { x[0] > x[1] } else { x[0] < x[1] })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn lis_lds_examples() {
        let s = p("5,3,2,1,4");
        assert_eq!((lis(&s), lds(&s)), (2, 4));
        let id = Permutation::identity(7);
        assert_eq!((lis(&id), lds(&id)), (7, 1));
    }

    #[test]
    fn lis_matches_brute_force_on_s6() {
        for s in crate::oracle::enumerate_sn(6).unwrap() {
            let w = s.one_line();
            assert_eq!(lis(&s), brute_lis(&w, false));
            assert_eq!(lds(&s), brute_lis(&w, true));
        }
    }

    #[test]
    fn circular_matches_brute_force_on_s5() {
        for s in crate::oracle::enumerate_sn(5).unwrap() {
            let w = s.one_line();
            let n = w.len();
            let best = |decreasing: bool| {
                (0u32..1 << n)
                    .filter(|mask| {
                        let pos: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                        (0..n).any(|r| {
                            let mut rot: Vec<usize> = pos.iter().map(|&k| (k + n - r) % n).collect();
                            rot.sort_unstable();
                            let vals: Vec<usize> = rot.iter().map(|&k| w[(k + r) % n]).collect();
                            vals.windows(2).all(|x| if decreasing { x[0] > x[1] } else { x[0] < x[1] })
                        })
                    })
                    .map(|m| m.count_ones() as usize)
                    .max()
                    .unwrap()
            };
            assert_eq!(lics(&s), best(false), "{s}");
            assert_eq!(ldcs(&s), best(true), "{s}");
        }
    }

    #[test]
    fn circular_examples() {
        assert_eq!(lics(&Permutation::identity(5)), 5);
        assert_eq!(lics(&p("2,3,1")), 3);
        assert_eq!(ldcs(&p("2,1,3")), 3);
        assert_eq!(lics(&p("3,2,1")), 2);
    }

    #[test]
    fn colored_examples() {
        let id = Permutation::identity(2);
        let same = ColoredPermutation::new(id.clone(), vec![1, 1], 2).unwrap();
        assert_eq!(colored_lis(&same), 3);
        let split = ColoredPermutation::new(id, vec![1, 2], 2).unwrap();
        assert_eq!(colored_lis(&split), 2);
        let s = p("4,1,3,5,2");
        let mono = ColoredPermutation::new(s.clone(), vec![1; 5], 1).unwrap();
        assert_eq!(colored_lis(&mono), lis(&s));
    }
}
