#![allow(dead_code)]

use otfcanon::automata::{determinize, Dfa};
use otfcanon::partition::{minimize, Signature};
use otfcanon::Nfa;
use proptest::prelude::*;

/// Arbitrary NFA with up to `max_states` states over up to `max_symbols`
/// symbols.
pub fn arb_nfa(max_states: usize, max_symbols: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_states, 1..=max_symbols).prop_flat_map(|(n, k)| {
        (
            Just(n),
            Just(k),
            proptest::collection::vec((0..n, 0..k, 0..n), 0..=3 * n * k),
            proptest::collection::vec(0..n, 1..=n.min(3)),
            proptest::collection::vec(0..n, 0..=n.min(3)),
        )
            .prop_map(|(n, k, edges, initial, accepting)| {
                let mut nfa = Nfa::new(n, k).unwrap();
                for (s, a, t) in edges {
                    nfa.add_transition(s, a, t).unwrap();
                }
                for q in initial {
                    nfa.add_initial(q).unwrap();
                }
                for q in accepting {
                    nfa.add_accepting(q).unwrap();
                }
                nfa
            })
    })
}

/// Textbook canonical form: subset construction, then minimization with
/// every state explored.
pub fn oracle(nfa: &Nfa) -> Dfa {
    let d = determinize(nfa);
    minimize(&d, &Signature::all_explored(&d)).unwrap().0.complete()
}
