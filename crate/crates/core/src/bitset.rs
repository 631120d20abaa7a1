use alloc::vec;
use alloc::vec::Vec;

/// Fixed-width bitset over `0..width`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    width: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(width: usize) -> Self {
        BitSet { width, words: vec![0; width.div_ceil(64)] }
    }

    pub fn from_indices(width: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(width);
        for i in idx {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "bit {i} out of width {}", self.width);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    /// Projection onto the ordered element list `ys`: bit `k` of the result
    /// is set iff `ys[k]` is in the set. `ys.len()` must be at most 64.
    #[inline]
    pub fn trace(&self, ys: &[usize]) -> u64 {
        debug_assert!(ys.len() <= 64);
        ys.iter()
            .enumerate()
            .fold(0, |acc, (k, &y)| acc | (u64::from(self.contains(y)) << k))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Inverse of [`Self::words`]; `None` if the word count is wrong or bits
    /// beyond `width` are set.
    pub fn from_words(width: usize, words: Vec<u64>) -> Option<Self> {
        if words.len() != width.div_ceil(64) {
            return None;
        }
        if width % 64 != 0 && words.last().is_some_and(|&w| w >> (width % 64) != 0) {
            return None;
        }
        Some(BitSet { width, words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(s.contains(129) && !s.contains(128) && !s.contains(500));
        assert_eq!(s.trace(&[129, 1, 0]), 0b101);
        let t = BitSet::from_indices(130, [0, 64, 129, 5]);
        assert!(s.is_subset(&t) && !t.is_subset(&s));
        assert!(BitSet::new(0).is_empty());
    }
}
