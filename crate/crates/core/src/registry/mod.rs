//! Equivalence registries map metastates to DFA states modulo language
//! equivalence.
//!
//! * `get(Q)` returns a state whose language equals `L(Q)`, if one is known.
//! * `put(Q, q)` links `Q` to `q`; the caller guarantees `L(Q) = L(q)`.
//! * `unify(q1, q2)` reports that `q1` and `q2` accept the same language.

mod ccl;
mod lattice;
mod one_to_one;

pub use ccl::{Ccl, Ccls};
pub use lattice::Lattice;
pub use one_to_one::OneToOne;

use crate::metastate::Metastate;
use crate::Result;

/// Outcome of a registry lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    /// `Q` itself was stored.
    Exact(usize),
    /// `Q` lies inside a stored equivalence region without being stored.
    Covered(usize),
    Miss,
}

impl Lookup {
    pub fn state(self) -> Option<usize> {
        match self {
            Lookup::Exact(s) | Lookup::Covered(s) => Some(s),
            Lookup::Miss => None,
        }
    }
}

pub trait EquivalenceRegistry {
    fn lookup(&mut self, q: &Metastate) -> Lookup;

    fn get(&mut self, q: &Metastate) -> Option<usize> {
        self.lookup(q).state()
    }

    fn put(&mut self, q: Metastate, state: usize) -> Result<()>;

    /// `survivor` remains the representative of the merged class.
    fn unify(&mut self, survivor: usize, absorbed: usize);
}

impl<R: EquivalenceRegistry + ?Sized> EquivalenceRegistry for Box<R> {
    fn lookup(&mut self, q: &Metastate) -> Lookup {
        (**self).lookup(q)
    }

    fn put(&mut self, q: Metastate, state: usize) -> Result<()> {
        (**self).put(q, state)
    }

    fn unify(&mut self, survivor: usize, absorbed: usize) {
        (**self).unify(survivor, absorbed)
    }
}
