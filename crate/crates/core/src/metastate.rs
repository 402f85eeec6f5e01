//! Sets of NFA states.
//!
//! A [`Metastate`] is stored as a bitset over state identifiers with trailing
//! zero words stripped, so two metastates compare (and hash) equal exactly when
//! they contain the same states, independent of how they were built.

use std::fmt;

const WORD_BITS: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Metastate {
    words: Vec<u64>,
}

impl Metastate {
    pub fn empty() -> Self {
        Self { words: Vec::new() }
    }

    pub fn singleton(state: usize) -> Self {
        let mut m = Self::empty();
        m.insert(state);
        m
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Self {
        let mut m = Self::empty();
        for s in states {
            m.insert(s);
        }
        m
    }

    /// Builds a metastate from raw words, normalizing trailing zeros.
    pub(crate) fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn insert(&mut self, state: usize) {
        let (w, b) = (state / WORD_BITS, state % WORD_BITS);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, state: usize) {
        let (w, b) = (state / WORD_BITS, state % WORD_BITS);
        if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
            while self.words.last() == Some(&0) {
                self.words.pop();
            }
        }
    }

    pub fn contains(&self, state: usize) -> bool {
        let (w, b) = (state / WORD_BITS, state % WORD_BITS);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Largest member plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * WORD_BITS + (WORD_BITS - w.leading_zeros() as usize),
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn is_subset(&self, other: &Metastate) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Metastate) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(&self, other: &Metastate) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Metastate) -> Metastate {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Metastate { words }
    }

    pub fn union_with(&mut self, other: &Metastate) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &Metastate) -> Metastate {
        Metastate::from_words(self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect())
    }

    pub fn difference(&self, other: &Metastate) -> Metastate {
        Metastate::from_words(
            self.words
                .iter()
                .enumerate()
                .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Metastate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Metastate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for Metastate {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Metastate::from_states(iter)
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a Metastate {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
