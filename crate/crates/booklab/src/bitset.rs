//! Vertex subsets of `[0, n)` backed by word-level bitsets.

use crate::error::{Error, Result};

/// A subset of the vertex set `[0, n)`.
///
/// Words beyond bit `n` are kept zero at all times, so popcounts and
/// word-wise intersections need no masking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl VertexSet {
    /// The empty subset of `[0, n)`.
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    /// The full vertex set `[0, n)`.
    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.words[v >> 6] |= 1u64 << (v & 63);
        }
        s
    }

    /// Builds a set from explicit members.
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for &v in members {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        VertexSet { n, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.words[v >> 6] |= 1u64 << (v & 63);
        Ok(())
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v >> 6] &= !(1u64 << (v & 63));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "sets over different vertex ranges");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "sets over different vertex ranges");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, words }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi << 6;
            BitIter { word: w }.map(move |b| base + b)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = VertexSet::empty(100);
        assert!(s.is_empty());
        s.insert(0).unwrap();
        s.insert(63).unwrap();
        s.insert(64).unwrap();
        s.insert(99).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(63) && s.contains(64));
        assert!(!s.contains(1));
        assert!(s.insert(100).is_err());
    }

    #[test]
    fn iter_is_sorted_and_complete() {
        let members = [3usize, 17, 64, 65, 90];
        let s = VertexSet::from_members(91, &members).unwrap();
        assert_eq!(s.to_vec(), members);
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_members(10, &[1, 2, 3]).unwrap();
        let b = VertexSet::from_members(10, &[3, 4]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.intersection_len(&b), 1);
        assert!(!a.is_disjoint(&b));
        let c = VertexSet::from_members(10, &[7]).unwrap();
        assert!(a.is_disjoint(&c));
    }

    #[test]
    fn full_set_has_n_members() {
        for n in [1usize, 63, 64, 65, 130] {
            assert_eq!(VertexSet::full(n).len(), n);
        }
    }
}
