use std::fmt;

use super::FluentId;

const WORD: usize = 64;

/// Fixed-width bit set over a fluent universe.
///
/// Two sets compare equal only if they were built for the same universe
/// size; all binary operations assume matching universes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FluentSet {
    words: Vec<u64>,
    len: usize,
}

/// A state is the set of fluents that currently hold.
pub type State = FluentSet;

impl FluentSet {
    pub fn empty(universe: usize) -> FluentSet {
        FluentSet { words: vec![0; universe.div_ceil(WORD)], len: universe }
    }

    pub fn full(universe: usize) -> FluentSet {
        let mut s = FluentSet::empty(universe);
        for f in 0..universe {
            s.insert(FluentId(f));
        }
        s
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = FluentId>) -> FluentSet {
        let mut s = FluentSet::empty(universe);
        for f in ids {
            s.insert(f);
        }
        s
    }

    /// Number of fluents in the universe this set ranges over.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, f: FluentId) {
        assert!(f.0 < self.len, "fluent {} outside universe of {}", f.0, self.len);
        self.words[f.0 / WORD] |= 1 << (f.0 % WORD);
    }

    pub fn remove(&mut self, f: FluentId) {
        assert!(f.0 < self.len, "fluent {} outside universe of {}", f.0, self.len);
        self.words[f.0 / WORD] &= !(1 << (f.0 % WORD));
    }

    pub fn contains(&self, f: FluentId) -> bool {
        f.0 < self.len && self.words[f.0 / WORD] & (1 << (f.0 % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &FluentSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FluentSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &FluentSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &FluentSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &FluentSet) -> FluentSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &FluentSet) -> FluentSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        s
    }

    pub fn difference(&self, other: &FluentSet) -> FluentSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn symmetric_difference(&self, other: &FluentSet) -> FluentSet {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        s
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = FluentId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(FluentId(wi * WORD + tz))
            })
        })
    }

    /// Returns a copy over a larger universe with the same members.
    pub fn widened(&self, universe: usize) -> FluentSet {
        assert!(universe >= self.len);
        let mut words = self.words.clone();
        words.resize(universe.div_ceil(WORD), 0);
        FluentSet { words, len: universe }
    }
}

impl fmt::Debug for FluentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|id| id.0)).finish()
    }
}
