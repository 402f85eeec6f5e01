use std::collections::VecDeque;

use crate::automata::Word;
use crate::metastate::Metastate;
use crate::{Error, Result};

/// A nondeterministic finite automaton over the alphabet `0..alphabet_size`.
///
/// Successor lists are kept sorted and duplicate-free, so two automata built
/// from the same transition set compare equal regardless of insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    num_states: usize,
    alphabet_size: usize,
    delta: Vec<Vec<usize>>,
    initial: Metastate,
    accepting: Metastate,
}

impl Nfa {
    pub fn new(num_states: usize, alphabet_size: usize) -> Result<Self> {
        if num_states == 0 || alphabet_size == 0 {
            return Err(Error::EmptyAutomaton);
        }
        Ok(Self {
            num_states,
            alphabet_size,
            delta: vec![Vec::new(); num_states * alphabet_size],
            initial: Metastate::empty(),
            accepting: Metastate::empty(),
        })
    }

    /// The one-state automaton without accepting states or transitions.
    pub fn empty_language(alphabet_size: usize) -> Result<Self> {
        let mut nfa = Nfa::new(1, alphabet_size)?;
        nfa.initial.insert(0);
        Ok(nfa)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> &Metastate {
        &self.initial
    }

    pub fn accepting(&self) -> &Metastate {
        &self.accepting
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting.contains(state)
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.num_states {
            return Err(Error::StateOutOfRange {
                state,
                num_states: self.num_states,
            });
        }
        Ok(())
    }

    fn check_symbol(&self, symbol: usize) -> Result<()> {
        if symbol >= self.alphabet_size {
            return Err(Error::SymbolOutOfRange {
                symbol,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(())
    }

    pub fn add_transition(&mut self, source: usize, symbol: usize, target: usize) -> Result<()> {
        self.check_state(source)?;
        self.check_state(target)?;
        self.check_symbol(symbol)?;
        let row = &mut self.delta[source * self.alphabet_size + symbol];
        if let Err(pos) = row.binary_search(&target) {
            row.insert(pos, target);
        }
        Ok(())
    }

    pub fn add_initial(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.initial.insert(state);
        Ok(())
    }

    pub fn add_accepting(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.accepting.insert(state);
        Ok(())
    }

    /// Replaces the initial states, e.g. to root the automaton at a metastate.
    pub fn with_initial(&self, initial: Metastate) -> Result<Nfa> {
        if let Some(bad) = initial.iter().find(|&s| s >= self.num_states) {
            return Err(Error::StateOutOfRange {
                state: bad,
                num_states: self.num_states,
            });
        }
        let mut nfa = self.clone();
        nfa.initial = initial;
        Ok(nfa)
    }

    /// Sorted successors of a single state.
    pub fn targets(&self, state: usize, symbol: usize) -> &[usize] {
        &self.delta[state * self.alphabet_size + symbol]
    }

    /// All transitions `(source, symbol, target)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(move |(idx, row)| {
            let (s, a) = (idx / self.alphabet_size, idx % self.alphabet_size);
            row.iter().map(move |&t| (s, a, t))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// Union of the successor sets of every member of `q` on `symbol`.
    pub fn successors(&self, q: &Metastate, symbol: usize) -> Result<Metastate> {
        self.check_symbol(symbol)?;
        if let Some(bad) = q.iter().find(|&s| s >= self.num_states) {
            return Err(Error::StateOutOfRange {
                state: bad,
                num_states: self.num_states,
            });
        }
        Ok(self.step(q, symbol))
    }

    /// Unchecked variant of [`Nfa::successors`] for validated inputs.
    pub(crate) fn step(&self, q: &Metastate, symbol: usize) -> Metastate {
        let mut next = Metastate::empty();
        for s in q {
            for &t in self.targets(s, symbol) {
                next.insert(t);
            }
        }
        next
    }

    pub fn is_accepting_set(&self, q: &Metastate) -> bool {
        q.intersects(&self.accepting)
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let mut current = self.initial.clone();
        for &a in word.symbols() {
            self.check_symbol(a)?;
            current = self.step(&current, a);
        }
        Ok(self.is_accepting_set(&current))
    }

    /// Flips every transition and swaps initial and accepting states.
    pub fn reverse(&self) -> Nfa {
        let mut rev = Nfa {
            num_states: self.num_states,
            alphabet_size: self.alphabet_size,
            delta: vec![Vec::new(); self.delta.len()],
            initial: self.accepting.clone(),
            accepting: self.initial.clone(),
        };
        // Sources are visited in ascending order, so every row stays sorted.
        for (s, a, t) in self.transitions() {
            rev.delta[t * self.alphabet_size + a].push(s);
        }
        rev
    }

    fn reachable_from(&self, start: &Metastate, edges: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.num_states];
        let mut queue: VecDeque<usize> = start.iter().collect();
        for s in start {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &t in &edges[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Removes states that are not reachable from an initial state or cannot
    /// reach an accepting state. Survivors keep their relative order.
    pub fn trim(&self) -> Nfa {
        let mut forward = vec![Vec::new(); self.num_states];
        let mut backward = vec![Vec::new(); self.num_states];
        for (s, _, t) in self.transitions() {
            forward[s].push(t);
            backward[t].push(s);
        }
        let accessible = self.reachable_from(&self.initial, &forward);
        let coaccessible = self.reachable_from(&self.accepting, &backward);
        let keep: Vec<bool> = (0..self.num_states).map(|s| accessible[s] && coaccessible[s]).collect();
        if !keep.iter().any(|&k| k) {
            return Nfa::empty_language(self.alphabet_size).expect("alphabet is non-empty");
        }
        if keep.iter().all(|&k| k) {
            return self.clone();
        }
        self.restrict(&keep)
    }

    /// Keeps only the flagged states, renumbered densely.
    fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut index = vec![usize::MAX; self.num_states];
        let mut next = 0;
        for s in 0..self.num_states {
            if keep[s] {
                index[s] = next;
                next += 1;
            }
        }
        let mut out = Nfa::new(next, self.alphabet_size).expect("at least one state kept");
        for (s, a, t) in self.transitions() {
            if keep[s] && keep[t] {
                out.delta[index[s] * self.alphabet_size + a].push(index[t]);
            }
        }
        out.initial = self.initial.iter().filter(|&s| keep[s]).map(|s| index[s]).collect();
        out.accepting = self.accepting.iter().filter(|&s| keep[s]).map(|s| index[s]).collect();
        out
    }

    /// Collapses states according to `class_of`, which must map every state to
    /// a class id below `num_classes`.
    pub(crate) fn quotient(&self, class_of: &[usize], num_classes: usize) -> Nfa {
        let mut out = Nfa::new(num_classes, self.alphabet_size).expect("non-empty quotient");
        for (s, a, t) in self.transitions() {
            let row = &mut out.delta[class_of[s] * self.alphabet_size + a];
            if let Err(pos) = row.binary_search(&class_of[t]) {
                row.insert(pos, class_of[t]);
            }
        }
        out.initial = self.initial.iter().map(|s| class_of[s]).collect();
        out.accepting = self.accepting.iter().map(|s| class_of[s]).collect();
        out
    }
}
