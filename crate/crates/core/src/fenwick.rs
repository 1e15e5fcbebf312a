//! Binary indexed tree over `u128` counts with prefix sums and order statistics.

#[derive(Debug, Clone)]
pub struct Fenwick {
    tree: Vec<u128>,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Self { tree: vec![0; n + 1] }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds `delta` at 0-based index `i`.
    pub fn add(&mut self, i: usize, delta: u128) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] = self.tree[k].wrapping_add(delta);
            k += k & k.wrapping_neg();
        }
    }

    /// Sum over indices `0..i`.
    pub fn prefix(&self, i: usize) -> u128 {
        let mut k = i.min(self.len());
        let mut s = 0u128;
        while k > 0 {
            s = s.wrapping_add(self.tree[k]);
            k -= k & k.wrapping_neg();
        }
        s
    }

    /// Sum over indices `i..len`.
    pub fn suffix(&self, i: usize) -> u128 {
        self.prefix(self.len()).wrapping_sub(self.prefix(i))
    }

    /// Smallest index `i` with `prefix(i+1) > k`, i.e. the element of rank `k` (0-based)
    /// when the tree stores 0/1 occupancy.
    pub fn select(&self, mut k: u128) -> Option<usize> {
        let n = self.len();
        let mut pos = 0usize;
        let mut step = n.checked_next_power_of_two().unwrap_or(0);
        if step > n {
            step >>= 1;
        }
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= k {
                k -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        (pos < n).then_some(pos)
    }
}

/// Number of inversions of a word of distinct values below `word.len()`.
pub fn inversions(word: &[u32]) -> u64 {
    let mut f = Fenwick::new(word.len());
    let mut inv = 0u64;
    for (k, &v) in word.iter().enumerate() {
        inv += k as u64 - f.prefix(v as usize) as u64;
        f.add(v as usize, 1);
    }
    inv
}
