//! Partition refinement: DFA minimization from a caller-supplied initial
//! partition, and bisimulation quotients of NFAs.

use std::collections::HashMap;

use crate::automata::{Dfa, Nfa};
use crate::{Error, Result};

/// Initial-partition tag of a single DFA state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    AcceptingExplored,
    RejectingExplored,
    /// A state whose behavior is not yet fully known. It always starts in a
    /// block of its own, whatever the id says.
    Unique(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature(Vec<Tag>);

impl Signature {
    pub fn new(tags: Vec<Tag>) -> Self {
        Self(tags)
    }

    /// Boolean tags for explored states, unique tags for the rest.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        Self(
            (0..dfa.num_states())
                .map(|s| match (dfa.is_explored(s), dfa.is_accepting(s)) {
                    (true, true) => Tag::AcceptingExplored,
                    (true, false) => Tag::RejectingExplored,
                    (false, _) => Tag::Unique(s),
                })
                .collect(),
        )
    }

    /// Boolean tags for every state, ignoring the explored flags.
    pub fn all_explored(dfa: &Dfa) -> Self {
        Self(
            (0..dfa.num_states())
                .map(|s| {
                    if dfa.is_accepting(s) {
                        Tag::AcceptingExplored
                    } else {
                        Tag::RejectingExplored
                    }
                })
                .collect(),
        )
    }

    pub fn tags(&self) -> &[Tag] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `(survivor, absorbed)` pairs; each absorbed state appears once.
pub type MergeList = Vec<(usize, usize)>;

/// Result of [`minimize_with_map`].
#[derive(Clone, Debug)]
pub struct Minimization {
    pub dfa: Dfa,
    pub merges: MergeList,
    /// New state of every input state.
    pub state_map: Vec<usize>,
}

/// Quotient of `dfa` under the coarsest transition-stable partition that
/// refines `sig`. Undefined transitions lead to an implicit rejecting sink
/// during refinement; the sink never appears in the result.
pub fn minimize(dfa: &Dfa, sig: &Signature) -> Result<(Dfa, MergeList)> {
    let m = minimize_with_map(dfa, sig)?;
    Ok((m.dfa, m.merges))
}

pub fn minimize_with_map(dfa: &Dfa, sig: &Signature) -> Result<Minimization> {
    let n = dfa.num_states();
    if sig.len() != n {
        return Err(Error::SignatureLength {
            expected: n,
            found: sig.len(),
        });
    }
    let k = dfa.alphabet_size();
    let needs_sink = !dfa.is_total();
    let total = n + usize::from(needs_sink);
    let sink = n;
    let target = |s: usize, a: usize| -> usize {
        if s == sink {
            sink
        } else {
            dfa.successor(s, a).unwrap_or(sink)
        }
    };

    // initial blocks: one per Boolean tag, one per unique state
    let mut initial_block = vec![0usize; total];
    let mut num_blocks = 0;
    let mut accepting_block = None;
    let mut rejecting_block = None;
    for (s, tag) in sig.tags().iter().enumerate() {
        let slot = match tag {
            Tag::AcceptingExplored => &mut accepting_block,
            Tag::RejectingExplored => &mut rejecting_block,
            Tag::Unique(_) => {
                initial_block[s] = num_blocks;
                num_blocks += 1;
                continue;
            }
        };
        initial_block[s] = *slot.get_or_insert_with(|| {
            num_blocks += 1;
            num_blocks - 1
        });
    }
    if needs_sink {
        initial_block[sink] = *rejecting_block.get_or_insert_with(|| {
            num_blocks += 1;
            num_blocks - 1
        });
    }

    // predecessor lists in CSR layout, indexed by target * k + symbol
    let mut pred_start = vec![0usize; total * k + 1];
    for s in 0..total {
        for a in 0..k {
            pred_start[target(s, a) * k + a + 1] += 1;
        }
    }
    for i in 0..total * k {
        pred_start[i + 1] += pred_start[i];
    }
    let mut fill = pred_start.clone();
    let mut preds = vec![0usize; total * k];
    for s in 0..total {
        for a in 0..k {
            let slot = target(s, a) * k + a;
            preds[fill[slot]] = s;
            fill[slot] += 1;
        }
    }

    let mut partition = RefinablePartition::new(&initial_block, num_blocks);
    let mut pending = vec![false; partition.num_blocks() * k];
    let mut worklist = Vec::new();
    let largest = (0..partition.num_blocks())
        .max_by_key(|&b| partition.size(b))
        .unwrap_or(0);
    for b in 0..partition.num_blocks() {
        if b != largest {
            for a in 0..k {
                pending[b * k + a] = true;
                worklist.push((b, a));
            }
        }
    }

    let mut splitter = Vec::new();
    while let Some((b, a)) = worklist.pop() {
        pending[b * k + a] = false;
        splitter.clear();
        splitter.extend_from_slice(partition.members(b));
        for &t in &splitter {
            for &s in &preds[pred_start[t * k + a]..pred_start[t * k + a + 1]] {
                partition.mark(s);
            }
        }
        for (old, new) in partition.split_marked() {
            pending.resize(partition.num_blocks() * k, false);
            for c in 0..k {
                let pick = if pending[old * k + c] || partition.size(new) <= partition.size(old) {
                    new
                } else {
                    old
                };
                if !pending[pick * k + c] {
                    pending[pick * k + c] = true;
                    worklist.push((pick, c));
                }
            }
        }
    }

    // Blocks holding real states are numbered by their smallest member.
    let mut survivor_of_block = vec![usize::MAX; partition.num_blocks()];
    for s in 0..n {
        let b = partition.block_of(s);
        if survivor_of_block[b] == usize::MAX {
            survivor_of_block[b] = s;
        }
    }
    let mut new_id_of_block = vec![usize::MAX; partition.num_blocks()];
    let mut out = Dfa::new(k);
    let mut merges = MergeList::new();
    let mut state_map = vec![0usize; n];
    for (s, image) in state_map.iter_mut().enumerate() {
        let b = partition.block_of(s);
        let survivor = survivor_of_block[b];
        if survivor == s {
            new_id_of_block[b] = out.add_state(dfa.is_accepting(s));
            if dfa.is_explored(s) {
                out.mark_explored(new_id_of_block[b]);
            }
        } else {
            merges.push((survivor, s));
        }
        *image = new_id_of_block[b];
    }
    for (s, a, t) in dfa.transitions() {
        let src = state_map[s];
        if out.successor(src, a).is_none() {
            out.set_transition(src, a, state_map[t]);
        }
    }
    if n > 0 {
        out.set_initial(state_map[dfa.initial()]);
    }
    Ok(Minimization {
        dfa: out,
        merges,
        state_map,
    })
}

/// Blocks are contiguous ranges of a permutation of the elements; marked
/// elements are moved to the front of their block.
struct RefinablePartition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    mid: Vec<usize>,
    touched: Vec<usize>,
}

impl RefinablePartition {
    fn new(initial_block: &[usize], num_blocks: usize) -> Self {
        let mut counts = vec![0usize; num_blocks + 1];
        for &b in initial_block {
            counts[b + 1] += 1;
        }
        for i in 0..num_blocks {
            counts[i + 1] += counts[i];
        }
        let start = counts[..num_blocks].to_vec();
        let end = counts[1..].to_vec();
        let mut fill = start.clone();
        let mut elems = vec![0; initial_block.len()];
        let mut loc = vec![0; initial_block.len()];
        for (s, &b) in initial_block.iter().enumerate() {
            elems[fill[b]] = s;
            loc[s] = fill[b];
            fill[b] += 1;
        }
        Self {
            elems,
            loc,
            block: initial_block.to_vec(),
            mid: start.clone(),
            start,
            end,
            touched: Vec::new(),
        }
    }

    fn num_blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    fn block_of(&self, s: usize) -> usize {
        self.block[s]
    }

    fn mark(&mut self, s: usize) {
        let b = self.block[s];
        let pos = self.loc[s];
        let mid = self.mid[b];
        if pos < mid {
            return;
        }
        if mid == self.start[b] {
            self.touched.push(b);
        }
        let other = self.elems[mid];
        self.elems.swap(pos, mid);
        self.loc[other] = pos;
        self.loc[s] = mid;
        self.mid[b] += 1;
    }

    /// Splits every touched block into its marked and unmarked parts. Returns
    /// `(old, new)` pairs where `new` holds the marked elements.
    fn split_marked(&mut self) -> Vec<(usize, usize)> {
        let mut splits = Vec::new();
        for b in std::mem::take(&mut self.touched) {
            if self.mid[b] == self.end[b] {
                self.mid[b] = self.start[b];
                continue;
            }
            let nb = self.start.len();
            self.start.push(self.start[b]);
            self.end.push(self.mid[b]);
            self.mid.push(self.start[b]);
            // unmarked remainder keeps `b`; its mark region is empty again
            self.start[b] = self.mid[b];
            for i in self.start[nb]..self.end[nb] {
                self.block[self.elems[i]] = nb;
            }
            splits.push((b, nb));
        }
        splits
    }
}

/// Quotient of `nfa` by its coarsest bisimulation.
pub fn bisimulation_quotient(nfa: &Nfa) -> Nfa {
    let (class_of, num_classes) = bisimulation_classes(nfa);
    if num_classes == nfa.num_states() {
        return nfa.clone();
    }
    nfa.quotient(&class_of, num_classes)
}

/// Signature refinement: start from the accepting/rejecting split and refine
/// by the set of `(symbol, successor class)` pairs until the class count is
/// stable. Class ids are assigned in order of first occurrence.
pub fn bisimulation_classes(nfa: &Nfa) -> (Vec<usize>, usize) {
    let n = nfa.num_states();
    let mut class_of: Vec<usize> = (0..n).map(|s| usize::from(nfa.is_accepting(s))).collect();
    let mut num_classes = renumber(&mut class_of);
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for s in 0..n {
            let mut moves: Vec<(usize, usize)> = (0..nfa.alphabet_size())
                .flat_map(|a| nfa.targets(s, a).iter().map(move |&t| (a, t)))
                .map(|(a, t)| (a, class_of[t]))
                .collect();
            moves.sort_unstable();
            moves.dedup();
            let fresh = ids.len();
            next[s] = *ids.entry((class_of[s], moves)).or_insert(fresh);
        }
        let count = ids.len();
        class_of = next;
        if count == num_classes {
            return (class_of, count);
        }
        num_classes = count;
    }
}

/// Renumbers class ids densely by first occurrence; returns the class count.
fn renumber(class_of: &mut [usize]) -> usize {
    let mut ids = HashMap::new();
    for c in class_of.iter_mut() {
        let fresh = ids.len();
        *c = *ids.entry(*c).or_insert(fresh);
    }
    ids.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{enumerate_language, language_equivalent};

    fn ends_in_a_redundant() -> Dfa {
        let mut d = Dfa::new(2);
        d.add_state(false);
        d.add_state(true);
        d.add_state(false);
        d.set_transition(0, 0, 1);
        d.set_transition(0, 1, 2);
        d.set_transition(1, 0, 1);
        d.set_transition(1, 1, 2);
        d.set_transition(2, 0, 1);
        d.set_transition(2, 1, 0);
        d.mark_all_explored();
        d
    }

    fn twin_accepting() -> Dfa {
        // 0 -a-> 1, 0 -b-> 2, and 1, 2 loop to themselves on a and b
        let mut d = Dfa::new(2);
        d.add_state(false);
        d.add_state(true);
        d.add_state(true);
        d.set_transition(0, 0, 1);
        d.set_transition(0, 1, 2);
        for s in [1, 2] {
            d.set_transition(s, 0, s);
            d.set_transition(s, 1, s);
        }
        d.mark_all_explored();
        d
    }

    #[test]
    fn merges_identical_explored_states() {
        let d = twin_accepting();
        let (min, merges) = minimize(&d, &Signature::from_dfa(&d)).unwrap();
        assert_eq!(min.num_states(), 2);
        assert_eq!(merges, vec![(1, 2)]);
        assert!(language_equivalent(&min, &d).unwrap());
    }

    #[test]
    fn unique_states_stay_apart() {
        let d = twin_accepting();
        let mut sig = Signature::from_dfa(&d);
        sig.0[2] = Tag::Unique(2);
        let (min, merges) = minimize(&d, &sig).unwrap();
        assert_eq!(min.num_states(), 3);
        assert!(merges.is_empty());
    }

    #[test]
    fn redundant_ends_in_a() {
        let d = ends_in_a_redundant();
        let (min, merges) = minimize(&d, &Signature::from_dfa(&d)).unwrap();
        assert_eq!(min.num_states(), 2);
        assert_eq!(merges, vec![(0, 2)]);
        assert!(language_equivalent(&min, &d).unwrap());
        let (again, merges) = minimize(&min, &Signature::from_dfa(&min)).unwrap();
        assert!(merges.is_empty());
        assert_eq!(again, min);
    }

    #[test]
    fn partial_dfa_uses_implicit_sink() {
        // 0 -a-> 1 (accepting, no transitions) and a dead state 2 that
        // loops; 2 is equivalent to the implicit sink but must survive.
        let mut d = Dfa::new(1);
        d.add_state(false);
        d.add_state(true);
        d.add_state(false);
        d.set_transition(0, 0, 1);
        d.set_transition(2, 0, 2);
        let (min, merges) = minimize(&d, &Signature::all_explored(&d)).unwrap();
        assert!(merges.is_empty());
        assert_eq!(min.num_states(), 3);
        assert!(language_equivalent(&min, &d).unwrap());
    }

    #[test]
    fn signature_length_checked() {
        let d = twin_accepting();
        assert_eq!(
            minimize(&d, &Signature::new(vec![])).unwrap_err(),
            Error::SignatureLength { expected: 3, found: 0 }
        );
    }

    #[test]
    fn bisimulation_merges_parallel_branches() {
        // 0 -a-> 1 -b-> 2 (accepting), 0 -a-> 3 -b-> 4 (accepting)
        let mut nfa = Nfa::new(5, 2).unwrap();
        nfa.add_transition(0, 0, 1).unwrap();
        nfa.add_transition(1, 1, 2).unwrap();
        nfa.add_transition(0, 0, 3).unwrap();
        nfa.add_transition(3, 1, 4).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.add_accepting(2).unwrap();
        nfa.add_accepting(4).unwrap();
        let q = bisimulation_quotient(&nfa);
        assert_eq!(q.num_states(), 3);
        assert_eq!(enumerate_language(&q, 6), enumerate_language(&nfa, 6));
    }

    #[test]
    fn bisimulation_on_dfa_matches_minimize() {
        let d = ends_in_a_redundant();
        let q = bisimulation_quotient(&d.to_nfa());
        let (min, _) = minimize(&d, &Signature::from_dfa(&d)).unwrap();
        assert_eq!(q.num_states(), min.num_states());
    }

    #[test]
    fn bisimulation_without_equivalent_states() {
        let mut nfa = Nfa::new(2, 2).unwrap();
        nfa.add_transition(0, 0, 0).unwrap();
        nfa.add_transition(0, 0, 1).unwrap();
        nfa.add_transition(0, 1, 0).unwrap();
        nfa.add_initial(0).unwrap();
        nfa.add_accepting(1).unwrap();
        assert_eq!(bisimulation_quotient(&nfa), nfa);
    }
}
