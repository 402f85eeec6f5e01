//! Similarity preorders on NFA states and the metastate normalizations they
//! enable.
//!
//! `x ⪯ y` means `y` simulates `x`, hence `L(x) ⊆ L(y)`. A metastate may drop
//! any member that another member simulates (pruning) or add any state
//! simulated by a member (saturation) without changing its language.

use crate::automata::Nfa;
use crate::metastate::Metastate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    /// `above[x] = { y | x ⪯ y }`
    above: Vec<Metastate>,
    /// `below[y] = { x | x ⪯ y }`
    below: Vec<Metastate>,
    /// `dominators[x] = { y | x ⪯ y, and not y ⪯ x or y < x }`. This order is
    /// strict, so pruning keeps exactly its maximal elements.
    dominators: Vec<Metastate>,
}

impl Preorder {
    pub fn identity(num_states: usize) -> Self {
        Self::from_above((0..num_states).map(Metastate::singleton).collect())
    }

    /// Reflexive-transitive closure of the given `(x, y)` pairs, each read as
    /// `x ⪯ y`.
    pub fn from_pairs(num_states: usize, pairs: &[(usize, usize)]) -> Self {
        let mut above: Vec<Metastate> = (0..num_states).map(Metastate::singleton).collect();
        for &(x, y) in pairs {
            above[x].insert(y);
        }
        loop {
            let mut changed = false;
            for x in 0..num_states {
                let mut closure = above[x].clone();
                for y in above[x].iter() {
                    closure.union_with(&above[y]);
                }
                if closure != above[x] {
                    above[x] = closure;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::from_above(above)
    }

    fn from_above(above: Vec<Metastate>) -> Self {
        let n = above.len();
        let mut below = vec![Metastate::empty(); n];
        for (x, ups) in above.iter().enumerate() {
            for y in ups {
                below[y].insert(x);
            }
        }
        let dominators = (0..n)
            .map(|x| {
                above[x]
                    .iter()
                    .filter(|&y| y != x && (!above[y].contains(x) || y < x))
                    .collect()
            })
            .collect();
        Self {
            above,
            below,
            dominators,
        }
    }

    pub fn num_states(&self) -> usize {
        self.above.len()
    }

    /// `x ⪯ y`
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn above(&self, x: usize) -> &Metastate {
        &self.above[x]
    }

    pub fn is_identity(&self) -> bool {
        self.above.iter().all(|a| a.len() == 1)
    }

    /// All related pairs `(x, y)` with `x ⪯ y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(x, ups)| ups.iter().map(move |y| (x, y)))
    }
}

/// The coarsest simulation preorder, computed as a greatest fixpoint: start
/// from every acceptance-respecting pair and drop pairs that violate the step
/// condition until nothing changes.
pub fn compute_similarity(nfa: &Nfa) -> Preorder {
    let n = nfa.num_states();
    let k = nfa.alphabet_size();
    let all: Metastate = (0..n).collect();
    let succ: Vec<Metastate> = (0..n * k)
        .map(|idx| nfa.targets(idx / k, idx % k).iter().copied().collect())
        .collect();

    let mut above: Vec<Metastate> = (0..n)
        .map(|x| {
            if nfa.is_accepting(x) {
                nfa.accepting().clone()
            } else {
                all.clone()
            }
        })
        .collect();

    loop {
        let mut changed = false;
        for x in 0..n {
            let mut kept = above[x].clone();
            for y in above[x].iter() {
                if y == x {
                    continue;
                }
                let matched = (0..k).all(|a| {
                    let ys = &succ[y * k + a];
                    nfa.targets(x, a).iter().all(|&x2| ys.intersects(&above[x2]))
                });
                if !matched {
                    kept.remove(y);
                    changed = true;
                }
            }
            above[x] = kept;
        }
        if !changed {
            break;
        }
    }
    Preorder::from_above(above)
}

/// Removes every member simulated by another member. Among mutually similar
/// members the smallest id is kept.
pub fn prune(q: &Metastate, order: &Preorder) -> Metastate {
    q.iter()
        .filter(|&x| x >= order.num_states() || !order.dominators[x].intersects(q))
        .collect()
}

/// Adds every state simulated by some member.
pub fn saturate(q: &Metastate, order: &Preorder) -> Metastate {
    let mut out = q.clone();
    for y in q {
        if let Some(below) = order.below.get(y) {
            out.union_with(below);
        }
    }
    out
}

/// Merges mutually similar states.
pub fn simulation_quotient(nfa: &Nfa, order: &Preorder) -> Nfa {
    let n = nfa.num_states();
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        // smallest mutually similar state, which is x itself or already seen
        let rep = order.above[x].intersection(&order.below[x]).iter().next().unwrap_or(x);
        if rep == x {
            class_of[x] = count;
            count += 1;
        } else {
            class_of[x] = class_of[rep];
        }
    }
    if count == n {
        return nfa.clone();
    }
    nfa.quotient(&class_of, count)
}

/// Normalization of initial and final states run before similarity is
/// computed. Currently the identity.
pub fn preprocess_initial_final(nfa: &Nfa) -> Nfa {
    nfa.clone()
}
