use crate::metastate::Metastate;

/// A convexity-closed region of language-equivalent metastates: every `Q`
/// with `m ⊆ Q ⊆ greatest` for some minimal element `m` is a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    representative: usize,
    greatest: Metastate,
    minimals: Vec<Metastate>,
}

impl Lattice {
    pub fn singleton(q: Metastate, representative: usize) -> Self {
        Self {
            representative,
            minimals: vec![q.clone()],
            greatest: q,
        }
    }

    /// A lattice spanning from `bottom` up to `top`; `bottom ⊆ top` is required.
    pub fn interval(bottom: Metastate, top: Metastate, representative: usize) -> Self {
        debug_assert!(bottom.is_subset(&top));
        Self {
            representative,
            greatest: top,
            minimals: vec![bottom],
        }
    }

    pub fn representative(&self) -> usize {
        self.representative
    }

    pub(crate) fn set_representative(&mut self, state: usize) {
        self.representative = state;
    }

    pub fn greatest(&self) -> &Metastate {
        &self.greatest
    }

    pub fn minimals(&self) -> &[Metastate] {
        &self.minimals
    }

    /// Whether the lattice holds exactly one metastate.
    pub fn is_singleton(&self) -> bool {
        self.minimals.len() == 1 && self.minimals[0] == self.greatest
    }

    /// Membership: covered from above by the greatest element and from below
    /// by some minimal element.
    pub fn covers(&self, q: &Metastate) -> bool {
        q.is_subset(&self.greatest) && self.minimals.iter().any(|m| m.is_subset(q))
    }

    /// Joins two lattices of equal language. The greatest elements are
    /// united and minimal elements that are no longer minimal are dropped.
    pub fn join(self, other: Lattice, representative: usize) -> Lattice {
        let mut minimals: Vec<Metastate> = self
            .minimals
            .iter()
            .filter(|m| !other.minimals.iter().any(|o| o.is_strict_subset(m)))
            .cloned()
            .collect();
        // `⊆` here also drops duplicates of elements kept from `self`
        minimals.extend(
            other
                .minimals
                .into_iter()
                .filter(|o| !self.minimals.iter().any(|m| m.is_subset(o))),
        );
        Lattice {
            representative,
            greatest: self.greatest.union(&other.greatest),
            minimals,
        }
    }

    /// Minimal elements are pairwise incomparable and below the greatest one.
    pub fn is_well_formed(&self) -> bool {
        !self.minimals.is_empty()
            && self.minimals.iter().all(|m| m.is_subset(&self.greatest))
            && self
                .minimals
                .iter()
                .enumerate()
                .all(|(i, a)| self.minimals.iter().enumerate().all(|(j, b)| i == j || !a.is_subset(b)))
    }
}
