use std::collections::VecDeque;

use crate::automata::{Nfa, Word};
use crate::{Error, Result};

const NONE: usize = usize::MAX;

/// A possibly partial deterministic automaton with dense integer states.
///
/// `explored` marks states whose outgoing transitions are final; the
/// determinization loop relies on it to seed intermediate minimizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    delta: Vec<usize>,
    initial: usize,
    accepting: Vec<bool>,
    explored: Vec<bool>,
}

impl Dfa {
    /// A DFA without states. The first added state is the initial one unless
    /// [`Dfa::set_initial`] says otherwise.
    pub fn new(alphabet_size: usize) -> Self {
        Self {
            alphabet_size,
            delta: Vec::new(),
            initial: 0,
            accepting: Vec::new(),
            explored: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn set_initial(&mut self, state: usize) {
        assert!(state < self.num_states(), "initial state out of range");
        self.initial = state;
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        let id = self.accepting.len();
        self.accepting.push(accepting);
        self.explored.push(false);
        self.delta.resize(self.delta.len() + self.alphabet_size, NONE);
        id
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn successor(&self, state: usize, symbol: usize) -> Option<usize> {
        match self.delta[state * self.alphabet_size + symbol] {
            NONE => None,
            t => Some(t),
        }
    }

    /// # Panics
    /// If either state or the symbol is out of range.
    pub fn set_transition(&mut self, source: usize, symbol: usize, target: usize) {
        assert!(target < self.num_states() && symbol < self.alphabet_size);
        self.delta[source * self.alphabet_size + symbol] = target;
    }

    pub fn is_explored(&self, state: usize) -> bool {
        self.explored[state]
    }

    pub fn mark_explored(&mut self, state: usize) {
        self.explored[state] = true;
    }

    pub fn mark_all_explored(&mut self) {
        self.explored.iter_mut().for_each(|e| *e = true);
    }

    pub fn num_explored(&self) -> usize {
        self.explored.iter().filter(|&&e| e).count()
    }

    /// Defined transitions `(source, symbol, target)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(move |(idx, &t)| (idx / self.alphabet_size, idx % self.alphabet_size, t))
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().all(|&t| t != NONE)
    }

    pub(crate) fn first_missing(&self) -> Option<(usize, usize)> {
        self.delta
            .iter()
            .position(|&t| t == NONE)
            .map(|idx| (idx / self.alphabet_size, idx % self.alphabet_size))
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        if self.num_states() == 0 {
            return Ok(false);
        }
        let mut state = self.initial;
        for &a in word.symbols() {
            if a >= self.alphabet_size {
                return Err(Error::SymbolOutOfRange {
                    symbol: a,
                    alphabet_size: self.alphabet_size,
                });
            }
            match self.successor(state, a) {
                Some(t) => state = t,
                None => return Ok(false),
            }
        }
        Ok(self.accepting[state])
    }

    /// Routes every undefined transition to a fresh rejecting sink. Total
    /// automata are returned unchanged.
    pub fn complete(&self) -> Dfa {
        let mut out = self.clone();
        if self.num_states() > 0 && self.is_total() {
            return out;
        }
        let sink = out.add_state(false);
        for t in out.delta.iter_mut() {
            if *t == NONE {
                *t = sink;
            }
        }
        out.explored[sink] = true;
        out
    }

    /// The same automaton with `state` as its initial state.
    pub fn rooted_at(&self, state: usize) -> Dfa {
        let mut out = self.clone();
        out.set_initial(state);
        out
    }

    /// Restricts the automaton to the flagged states, renumbered in order.
    /// Transitions into dropped states become undefined.
    pub(crate) fn restrict(&self, keep: &[bool]) -> (Dfa, Vec<usize>) {
        let mut index = vec![NONE; self.num_states()];
        let mut out = Dfa::new(self.alphabet_size);
        for s in 0..self.num_states() {
            if keep[s] {
                index[s] = out.add_state(self.accepting[s]);
                out.explored[index[s]] = self.explored[s];
            }
        }
        for (s, a, t) in self.transitions() {
            if keep[s] && keep[t] {
                out.set_transition(index[s], a, index[t]);
            }
        }
        if keep.get(self.initial).copied().unwrap_or(false) {
            out.initial = index[self.initial];
        }
        (out, index)
    }

    /// Keeps the states reachable from the initial state, renumbered in
    /// breadth-first order with symbols visited in ascending order.
    pub fn accessible(&self) -> Dfa {
        if self.num_states() == 0 {
            return self.clone();
        }
        let mut order = vec![NONE; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        let mut visited = vec![self.initial];
        order[self.initial] = 0;
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.successor(s, a) {
                    if order[t] == NONE {
                        order[t] = visited.len();
                        visited.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut out = Dfa::new(self.alphabet_size);
        for &s in &visited {
            let id = out.add_state(self.accepting[s]);
            out.explored[id] = self.explored[s];
        }
        for &s in &visited {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.successor(s, a) {
                    out.set_transition(order[s], a, order[t]);
                }
            }
        }
        out
    }

    /// Drops states from which no accepting state is reachable, leaving a
    /// partial automaton. An empty language yields a single rejecting state
    /// without transitions.
    pub fn without_dead_states(&self) -> Dfa {
        let n = self.num_states();
        let mut backward = vec![Vec::new(); n];
        for (s, _, t) in self.transitions() {
            backward[t].push(s);
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = stack.pop() {
            for &s in &backward[t] {
                if !live[s] {
                    live[s] = true;
                    stack.push(s);
                }
            }
        }
        if n == 0 || !live[self.initial] {
            let mut out = Dfa::new(self.alphabet_size);
            out.add_state(false);
            out.mark_all_explored();
            return out;
        }
        self.restrict(&live).0
    }

    /// Views the DFA as an NFA with a single initial state.
    pub fn to_nfa(&self) -> Nfa {
        let mut nfa =
            Nfa::new(self.num_states().max(1), self.alphabet_size.max(1)).expect("sizes clamped to at least one");
        for (s, a, t) in self.transitions() {
            nfa.add_transition(s, a, t).expect("in range");
        }
        if self.num_states() > 0 {
            nfa.add_initial(self.initial).expect("in range");
        }
        for s in 0..self.num_states() {
            if self.accepting[s] {
                nfa.add_accepting(s).expect("in range");
            }
        }
        nfa
    }
}
