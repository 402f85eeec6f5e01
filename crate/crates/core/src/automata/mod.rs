//! Automaton representations and exact language oracles.

mod dfa;
mod nfa;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

pub use dfa::Dfa;
pub use nfa::Nfa;

use crate::metastate::Metastate;
use crate::{Error, Result};

/// A finite word over integer symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Decides `L(left) = L(right)` by exploring the synchronized product, where
/// an undefined transition stands for an implicit rejecting sink.
pub fn language_equivalent(left: &Dfa, right: &Dfa) -> Result<bool> {
    if left.alphabet_size() != right.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: left.alphabet_size(),
            right: right.alphabet_size(),
        });
    }
    let root = |d: &Dfa| (d.num_states() > 0).then(|| d.initial());
    let accepts = |d: &Dfa, s: Option<usize>| s.is_some_and(|s| d.is_accepting(s));

    let start = (root(left), root(right));
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((l, r)) = queue.pop_front() {
        if accepts(left, l) != accepts(right, r) {
            return Ok(false);
        }
        for a in 0..left.alphabet_size() {
            let next = (
                l.and_then(|s| left.successor(s, a)),
                r.and_then(|s| right.successor(s, a)),
            );
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// Every accepted word of length at most `max_len`.
pub fn enumerate_language(nfa: &Nfa, max_len: usize) -> BTreeSet<Word> {
    let mut words = BTreeSet::new();
    let mut layer = vec![(Vec::new(), nfa.initial().clone())];
    for len in 0..=max_len {
        let mut next_layer = Vec::new();
        for (word, q) in layer {
            if nfa.is_accepting_set(&q) {
                words.insert(Word(word.clone()));
            }
            if len == max_len {
                continue;
            }
            for a in 0..nfa.alphabet_size() {
                let next = nfa.step(&q, a);
                if !next.is_empty() {
                    let mut w = word.clone();
                    w.push(a);
                    next_layer.push((w, next));
                }
            }
        }
        layer = next_layer;
    }
    words
}

/// Decides whether two total DFAs are isomorphic by a parallel breadth-first
/// walk from both initial states, symbols in ascending order.
pub fn isomorphic(left: &Dfa, right: &Dfa) -> Result<bool> {
    for d in [left, right] {
        if let Some((state, symbol)) = d.first_missing() {
            return Err(Error::NotTotal { state, symbol });
        }
    }
    if left.alphabet_size() != right.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: left.alphabet_size(),
            right: right.alphabet_size(),
        });
    }
    if left.num_states() != right.num_states() {
        return Ok(false);
    }
    if left.num_states() == 0 {
        return Ok(true);
    }
    let n = left.num_states();
    let mut to_right = vec![usize::MAX; n];
    let mut to_left = vec![usize::MAX; n];
    let mut queue = VecDeque::from([(left.initial(), right.initial())]);
    to_right[left.initial()] = right.initial();
    to_left[right.initial()] = left.initial();
    let mut mapped = 1;
    while let Some((l, r)) = queue.pop_front() {
        if left.is_accepting(l) != right.is_accepting(r) {
            return Ok(false);
        }
        for a in 0..left.alphabet_size() {
            let lt = left.successor(l, a).expect("total");
            let rt = right.successor(r, a).expect("total");
            match (to_right[lt], to_left[rt]) {
                (usize::MAX, usize::MAX) => {
                    to_right[lt] = rt;
                    to_left[rt] = lt;
                    mapped += 1;
                    queue.push_back((lt, rt));
                }
                (x, y) if x == rt && y == lt => {}
                _ => return Ok(false),
            }
        }
    }
    // unreachable states on either side are not part of the bijection
    Ok(mapped == n)
}

/// Textbook breadth-first subset construction. The empty metastate becomes an
/// ordinary rejecting state, so the result is total.
pub fn determinize(nfa: &Nfa) -> Dfa {
    let mut dfa = Dfa::new(nfa.alphabet_size());
    let mut index: HashMap<Metastate, usize> = HashMap::new();
    let start = nfa.initial().clone();
    let s0 = dfa.add_state(nfa.is_accepting_set(&start));
    index.insert(start.clone(), s0);
    let mut queue = VecDeque::from([(start, s0)]);
    while let Some((q, s)) = queue.pop_front() {
        for a in 0..nfa.alphabet_size() {
            let next = nfa.step(&q, a);
            let t = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = dfa.add_state(nfa.is_accepting_set(&next));
                    index.insert(next.clone(), t);
                    queue.push_back((next, t));
                    t
                }
            };
            dfa.set_transition(s, a, t);
        }
        dfa.mark_explored(s);
    }
    dfa
}
