//! Dense adjacency bitsets for clique and chordality work.

use alloc::vec;
use alloc::vec::Vec;

pub struct AdjBits {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjBits {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut a = AdjBits { n, words, bits: Vec::new() };
        for &(u, v) in edges {
            debug_assert!(u < n && v < n && u != v);
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        a.bits = bits;
        a
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        iter_bits(self.row(v)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Indices of set bits, ascending.
pub fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + b)
        })
    })
}

/// a & b into a fresh buffer.
pub fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn adjacency_and_iteration() {
        let a = AdjBits::new(70, &[(0, 69), (0, 3), (3, 69)]);
        assert!(a.contains(0, 69) && a.contains(69, 0));
        assert!(!a.contains(1, 2));
        assert_eq!(a.neighbors(0), alloc::vec![3, 69]);
        assert_eq!(a.neighbors(69), alloc::vec![0, 3]);
        let common: Vec<usize> = iter_bits(&and(a.row(0), a.row(3))).collect();
        assert_eq!(common, alloc::vec![69]);
    }
}
