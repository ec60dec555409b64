use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A set of edge indices of one host graph.
///
/// Ordering treats the set as a binary number with edge `i` as bit `i`, so
/// sorting subsets of a small graph lists them as `0, 1, 2, ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    universe: usize,
    words: Vec<u64>,
}

impl EdgeSubset {
    pub fn empty(universe: usize) -> Self {
        EdgeSubset {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a subset of a universe of at most 64 edges from a bit mask.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask form needs at most 64 edges");
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// All `2^universe` subsets in increasing order.
    pub fn all(universe: usize) -> impl Iterator<Item = EdgeSubset> {
        assert!(universe < 64, "cannot enumerate subsets of {universe} edges");
        (0..1u64 << universe).map(move |m| EdgeSubset::from_mask(universe, m))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "edge {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty() || self.is_full()
    }

    pub fn complement(&self) -> Self {
        let mut c = Self::full(self.universe);
        for (w, x) in c.words.iter_mut().zip(&self.words) {
            *w &= !x;
        }
        c
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.universe, other.universe, "subsets of different graphs");
        EdgeSubset {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }
}

impl Ord for EdgeSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for EdgeSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as the sorted list of member indices.
impl Serialize for EdgeSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_symmetric_difference() {
        let a = EdgeSubset::from_indices(5, [0, 3]);
        let b = EdgeSubset::from_indices(5, [3, 4]);
        assert_eq!(a.complement(), EdgeSubset::from_indices(5, [1, 2, 4]));
        assert_eq!(a.symmetric_difference(&b), EdgeSubset::from_indices(5, [0, 4]));
        assert!(a.complement().complement() == a);
    }

    #[test]
    fn ordering_matches_mask_value() {
        let subsets: Vec<_> = EdgeSubset::all(3).collect();
        let mut sorted = subsets.clone();
        sorted.sort();
        assert_eq!(subsets, sorted);
        assert_eq!(subsets[5], EdgeSubset::from_indices(3, [0, 2]));
    }

    #[test]
    fn wide_universe() {
        let mut s = EdgeSubset::empty(130);
        s.insert(129);
        s.insert(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(s.complement().len(), 128);
        assert!(s.mask().is_none());
        assert!(EdgeSubset::from_indices(130, [129]) > EdgeSubset::from_indices(130, [0, 1, 2]));
    }

    #[test]
    fn empty_universe() {
        let s = EdgeSubset::empty(0);
        assert!(s.is_empty() && s.is_full() && s.is_trivial());
        assert_eq!(EdgeSubset::all(0).count(), 1);
    }
}
