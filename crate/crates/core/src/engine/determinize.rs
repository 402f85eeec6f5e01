use std::time::Instant;

use super::threshold::Threshold;
use crate::automata::{Dfa, Nfa};
use crate::metastate::Metastate;
use crate::partition::{minimize_with_map, MergeList, Signature};
use crate::registry::{EquivalenceRegistry, Lookup};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Hooks into the determinization loop, used for instrumentation.
pub trait Observer {
    /// `q` is about to be explored as DFA state `state`.
    fn on_explore(&mut self, _q: &Metastate, _state: usize) {}

    fn on_lookup(&mut self, _q: &Metastate, _result: Lookup) {}

    /// An intermediate minimization merged `merges` (in engine state ids).
    fn on_minimize(&mut self, _live_states: usize, _merges: &MergeList) {}
}

impl Observer for () {}

/// Records explored metastates and lookup results in order.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub explored: Vec<Metastate>,
    pub lookups: Vec<(Metastate, Lookup)>,
    pub merges: MergeList,
}

impl Observer for Trace {
    fn on_explore(&mut self, q: &Metastate, _state: usize) {
        self.explored.push(q.clone());
    }

    fn on_lookup(&mut self, q: &Metastate, result: Lookup) {
        self.lookups.push((q.clone(), result));
    }

    fn on_minimize(&mut self, _live_states: usize, merges: &MergeList) {
        self.merges.extend_from_slice(merges);
    }
}

/// Output of [`otf_determinize`].
#[derive(Clone, Debug)]
pub struct Determinization {
    /// Total DFA over the surviving states, renumbered densely. It is not
    /// minimized beyond what intermediate minimizations did.
    pub dfa: Dfa,
    /// Engine state id (as handed to the registry) to state of `dfa`.
    pub state_map: Vec<usize>,
    /// Largest number of live states at any point of the run.
    pub peak_states: usize,
    pub minimizations: usize,
    pub explored: usize,
}

/// On-the-fly subset construction.
///
/// Metastates are explored depth-first from a stack. Every lookup goes
/// through `registry`, so a metastate known to be equivalent to an existing
/// state is never explored. After each explored state `threshold` decides
/// whether the partial DFA is minimized; explored states are seeded by
/// acceptance and unexplored ones in singleton blocks, and every merge is
/// reported to the registry through `unify`.
pub fn otf_determinize<R, T>(nfa: &Nfa, registry: &mut R, threshold: &mut T) -> Result<Determinization>
where
    R: EquivalenceRegistry + ?Sized,
    T: Threshold + ?Sized,
{
    otf_determinize_with(nfa, registry, threshold, None, &mut ())
}

pub fn otf_determinize_with<R, T, O>(
    nfa: &Nfa,
    registry: &mut R,
    threshold: &mut T,
    deadline: Option<Instant>,
    observer: &mut O,
) -> Result<Determinization>
where
    R: EquivalenceRegistry + ?Sized,
    T: Threshold + ?Sized,
    O: Observer + ?Sized,
{
    let k = nfa.alphabet_size();
    let mut dfa = Dfa::new(k);
    let mut merged = UnionFind::new();

    let start = nfa.initial().clone();
    let root = dfa.add_state(nfa.is_accepting_set(&start));
    merged.ensure(1);
    registry.put(start.clone(), root)?;
    let mut stack = vec![(start, root)];
    let mut live = 1;
    let mut peak = 1;
    let mut minimizations = 0;
    let mut explored = 0;

    while let Some((current, state)) = stack.pop() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        let source = merged.find(state);
        if dfa.is_explored(source) {
            continue;
        }
        observer.on_explore(&current, source);
        explored += 1;
        for a in 0..k {
            let next = nfa.step(&current, a);
            let lookup = registry.lookup(&next);
            observer.on_lookup(&next, lookup);
            let target = match lookup.state() {
                Some(s) => merged.find(s),
                None => {
                    let t = dfa.add_state(nfa.is_accepting_set(&next));
                    merged.ensure(t + 1);
                    registry.put(next.clone(), t)?;
                    stack.push((next, t));
                    live += 1;
                    peak = peak.max(live);
                    t
                }
            };
            dfa.set_transition(source, a, target);
        }
        dfa.mark_explored(source);

        if threshold.should_minimize(live) {
            let merges = minimize_live(&mut dfa, &mut merged, registry)?;
            live -= merges.len();
            minimizations += 1;
            threshold.minimized(live);
            observer.on_minimize(live, &merges);
        }
    }

    let keep = live_mask(&dfa, &mut merged);
    let (mut compact, index) = dfa.restrict(&keep);
    compact.set_initial(index[merged.find(root)]);
    let state_map = (0..dfa.num_states()).map(|s| index[merged.find(s)]).collect();
    Ok(Determinization {
        dfa: compact,
        state_map,
        peak_states: peak,
        minimizations,
        explored,
    })
}

fn live_mask(dfa: &Dfa, merged: &mut UnionFind) -> Vec<bool> {
    (0..dfa.num_states()).map(|s| merged.find(s) == s).collect()
}

/// Minimizes the live part of `dfa` in place: absorbed states are folded into
/// their survivors and transitions are redirected. Returns the merges in
/// engine state ids.
fn minimize_live<R>(dfa: &mut Dfa, merged: &mut UnionFind, registry: &mut R) -> Result<MergeList>
where
    R: EquivalenceRegistry + ?Sized,
{
    let keep = live_mask(dfa, merged);
    let live_ids: Vec<usize> = (0..dfa.num_states()).filter(|&s| keep[s]).collect();
    let (compact, _) = dfa.restrict(&keep);
    let result = minimize_with_map(&compact, &Signature::from_dfa(&compact))?;
    let merges: MergeList = result.merges.iter().map(|&(s, t)| (live_ids[s], live_ids[t])).collect();
    for &(survivor, absorbed) in &merges {
        merged.union_into(survivor, absorbed);
        registry.unify(survivor, absorbed);
    }
    if !merges.is_empty() {
        for &s in &live_ids {
            if merged.find(s) != s {
                continue;
            }
            for a in 0..dfa.alphabet_size() {
                if let Some(t) = dfa.successor(s, a) {
                    let r = merged.find(t);
                    if r != t {
                        dfa.set_transition(s, a, r);
                    }
                }
            }
        }
    }
    Ok(merges)
}
