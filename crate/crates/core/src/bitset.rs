//! Fixed-capacity bitsets used as adjacency rows.

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitSet {
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet { words: vec![0; words_for(capacity)] }
    }

    /// All of `0..n` set.
    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(n);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    /// Indices strictly greater than `v`, below `n`.
    pub fn above(n: usize, v: usize) -> Self {
        let mut s = BitSet::full(n);
        for i in 0..=v.min(n.saturating_sub(1)) {
            if i < n {
                s.remove(i);
            }
        }
        s
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i >> 6).is_some_and(|w| w >> (i & 63) & 1 == 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }
}

/// `|a ∩ b ∩ c \ d|`
#[inline]
pub(crate) fn count_and3_not(a: &BitSet, b: &BitSet, c: &BitSet, d: &BitSet) -> u64 {
    let mut t = 0u64;
    for i in 0..a.words.len() {
        t += (a.words[i] & b.words[i] & c.words[i] & !d.words[i]).count_ones() as u64;
    }
    t
}

/// `a ∩ b ∩ c \ d ≠ ∅`
#[inline]
pub(crate) fn any_and3_not(a: &BitSet, b: &BitSet, c: &BitSet, d: &BitSet) -> bool {
    (0..a.words.len()).any(|i| a.words[i] & b.words[i] & c.words[i] & !d.words[i] != 0)
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl FromIterator<usize> for BitSet {
    /// Capacity is taken from the largest element.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let cap = items.iter().max().map_or(0, |m| m + 1);
        let mut s = BitSet::new(cap);
        for i in items {
            s.insert(i);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        for i in [0, 63, 64, 129] {
            s.insert(i);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(s.len(), 4);
        s.remove(63);
        assert!(!s.contains(63));
        assert!(s.contains(64));
        assert_eq!(BitSet::full(130).len(), 130);
        assert_eq!(BitSet::above(130, 64).iter().next(), Some(65));
        assert_eq!(BitSet::above(130, 64).len(), 65);
        assert_eq!(BitSet::full(64).len(), 64);
    }
}
