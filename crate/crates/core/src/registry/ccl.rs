use std::collections::HashMap;

use super::{EquivalenceRegistry, Lattice, Lookup};
use crate::metastate::Metastate;
use crate::simulation::{prune, saturate, Preorder};
use crate::union_find::UnionFind;
use crate::{Error, Result};

const NO_SLOT: usize = usize::MAX;

/// Storage shared by the lattice-based registries.
///
/// Lattices live in insertion-ordered slots. A union-find over DFA states
/// tracks which state currently owns each lattice, so chained merges resolve
/// to the surviving representative. Singleton lattices are only reachable
/// through the exact index; `scan` lists the remaining slots in order.
#[derive(Clone, Debug, Default)]
struct LatticeStore {
    exact: HashMap<Metastate, usize>,
    slots: Vec<Option<Lattice>>,
    slot_of: Vec<usize>,
    scan: Vec<usize>,
    classes: UnionFind,
}

impl LatticeStore {
    fn track(&mut self, state: usize) {
        self.classes.ensure(state + 1);
        if self.slot_of.len() <= state {
            self.slot_of.resize(state + 1, NO_SLOT);
        }
    }

    fn insert(&mut self, key: Metastate, lattice: Lattice) -> Result<()> {
        let state = lattice.representative();
        if let Some(&existing) = self.exact.get(&key) {
            return Err(Error::RegistryContract(format!(
                "metastate {key} already mapped to state {existing}"
            )));
        }
        self.track(state);
        let root = self.classes.find(state);
        self.exact.insert(key, state);
        let slot = self.slots.len();
        let singleton = lattice.is_singleton();
        match self.slot_of[root] {
            NO_SLOT => {
                self.slots.push(Some(lattice));
                self.slot_of[root] = slot;
                if !singleton {
                    self.scan.push(slot);
                }
            }
            // a second metastate for a state that already owns a lattice
            existing => {
                let current = self.slots[existing].take().expect("live slot");
                self.slots[existing] = Some(current.join(lattice, root));
                self.mark_scannable(existing);
            }
        }
        Ok(())
    }

    fn mark_scannable(&mut self, slot: usize) {
        let scannable = self.slots[slot].as_ref().is_some_and(|l| !l.is_singleton());
        match (self.scan.binary_search(&slot), scannable) {
            (Err(pos), true) => self.scan.insert(pos, slot),
            (Ok(pos), false) => {
                self.scan.remove(pos);
            }
            _ => {}
        }
    }

    fn exact(&mut self, q: &Metastate) -> Option<usize> {
        let state = *self.exact.get(q)?;
        Some(self.classes.find(state))
    }

    fn covering(&mut self, q: &Metastate) -> Option<usize> {
        let rep = self.scan.iter().find_map(|&slot| {
            let lattice = self.slots[slot].as_ref().expect("scanned slots are live");
            lattice.covers(q).then(|| lattice.representative())
        })?;
        Some(self.classes.find(rep))
    }

    fn lookup(&mut self, q: &Metastate) -> Lookup {
        if let Some(s) = self.exact(q) {
            return Lookup::Exact(s);
        }
        match self.covering(q) {
            Some(s) => Lookup::Covered(s),
            None => Lookup::Miss,
        }
    }

    fn unify(&mut self, survivor: usize, absorbed: usize) {
        self.track(survivor.max(absorbed));
        let s = self.classes.find(survivor);
        let a = self.classes.find(absorbed);
        if s == a {
            return;
        }
        let root = self.classes.union_into(s, a);
        let (ls, la) = (self.slot_of[s], self.slot_of[a]);
        self.slot_of[a] = NO_SLOT;
        let slot = match (ls, la) {
            (NO_SLOT, NO_SLOT) => return,
            (slot, NO_SLOT) | (NO_SLOT, slot) => slot,
            (ls, la) => {
                let (keep, drop) = (ls.min(la), ls.max(la));
                let dropped = self.slots[drop].take().expect("live slot");
                let kept = self.slots[keep].take().expect("live slot");
                self.slots[keep] = Some(kept.join(dropped, root));
                if let Ok(pos) = self.scan.binary_search(&drop) {
                    self.scan.remove(pos);
                }
                keep
            }
        };
        self.slot_of[root] = slot;
        if let Some(lattice) = self.slots[slot].as_mut() {
            lattice.set_representative(root);
        }
        self.mark_scannable(slot);
    }

    fn lattice(&mut self, state: usize) -> Option<&Lattice> {
        if state >= self.slot_of.len() {
            return None;
        }
        let root = self.classes.find(state);
        match self.slot_of[root] {
            NO_SLOT => None,
            slot => self.slots[slot].as_ref(),
        }
    }

    fn lattices(&self) -> impl Iterator<Item = &Lattice> {
        self.slots.iter().flatten()
    }
}

/// Convexity-closure lattice registry: equivalences reported through
/// `unify` grow lattices whose closures answer later lookups.
#[derive(Clone, Debug, Default)]
pub struct Ccl {
    store: LatticeStore,
}

impl Ccl {
    pub fn new() -> Self {
        Self::default()
    }

    /// The lattice currently owned by `state`'s class.
    pub fn lattice(&mut self, state: usize) -> Option<&Lattice> {
        self.store.lattice(state)
    }

    pub fn lattices(&self) -> impl Iterator<Item = &Lattice> {
        self.store.lattices()
    }
}

impl EquivalenceRegistry for Ccl {
    fn lookup(&mut self, q: &Metastate) -> Lookup {
        self.store.lookup(q)
    }

    fn put(&mut self, q: Metastate, state: usize) -> Result<()> {
        self.store.insert(q.clone(), Lattice::singleton(q, state))
    }

    fn unify(&mut self, survivor: usize, absorbed: usize) {
        self.store.unify(survivor, absorbed)
    }
}

/// CCL with similarity: metastates are pruned before lookup, and every
/// stored metastate spans the interval from its pruned to its saturated form.
#[derive(Clone, Debug)]
pub struct Ccls {
    store: LatticeStore,
    order: Preorder,
}

impl Ccls {
    pub fn new(order: Preorder) -> Self {
        Self {
            store: LatticeStore::default(),
            order,
        }
    }

    pub fn preorder(&self) -> &Preorder {
        &self.order
    }

    pub fn lattice(&mut self, state: usize) -> Option<&Lattice> {
        self.store.lattice(state)
    }

    pub fn lattices(&self) -> impl Iterator<Item = &Lattice> {
        self.store.lattices()
    }
}

impl EquivalenceRegistry for Ccls {
    fn lookup(&mut self, q: &Metastate) -> Lookup {
        if let Some(s) = self.store.exact(q) {
            return Lookup::Exact(s);
        }
        let pruned = prune(q, &self.order);
        if pruned != *q {
            if let Some(s) = self.store.exact(&pruned) {
                return Lookup::Covered(s);
            }
        }
        match self.store.covering(&pruned) {
            Some(s) => Lookup::Covered(s),
            None => Lookup::Miss,
        }
    }

    fn put(&mut self, q: Metastate, state: usize) -> Result<()> {
        let bottom = prune(&q, &self.order);
        let top = saturate(&q, &self.order);
        self.store.insert(q, Lattice::interval(bottom, top, state))
    }

    fn unify(&mut self, survivor: usize, absorbed: usize) {
        self.store.unify(survivor, absorbed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(states: &[usize]) -> Metastate {
        states.iter().copied().collect()
    }

    #[test]
    fn put_stores_singleton() {
        let mut r = Ccl::new();
        r.put(ms(&[1, 2]), 7).unwrap();
        let l = r.lattice(7).unwrap();
        assert_eq!(l.greatest(), &ms(&[1, 2]));
        assert_eq!(l.minimals(), &[ms(&[1, 2])]);
        assert_eq!(l.representative(), 7);
        assert_eq!(r.get(&ms(&[1, 2])), Some(7));
    }

    #[test]
    fn disjoint_puts_stay_independent() {
        let mut r = Ccl::new();
        r.put(ms(&[1]), 0).unwrap();
        r.put(ms(&[2]), 1).unwrap();
        assert_eq!(r.lattices().count(), 2);
        assert_eq!(r.get(&ms(&[1, 2])), None);
    }

    #[test]
    fn empty_metastate_is_a_key() {
        let mut r = Ccl::new();
        r.put(Metastate::empty(), 3).unwrap();
        assert_eq!(r.get(&Metastate::empty()), Some(3));
    }

    #[test]
    fn duplicate_put_is_rejected() {
        let mut r = Ccl::new();
        r.put(ms(&[1]), 0).unwrap();
        assert!(matches!(r.put(ms(&[1]), 1), Err(Error::RegistryContract(_))));
    }

    #[test]
    fn unify_builds_closure() {
        let mut r = Ccl::new();
        r.put(ms(&[1, 2]), 0).unwrap();
        r.put(ms(&[3, 4]), 1).unwrap();
        r.unify(0, 1);
        let l = r.lattice(1).unwrap().clone();
        assert_eq!(l.greatest(), &ms(&[1, 2, 3, 4]));
        assert_eq!(l.minimals(), &[ms(&[1, 2]), ms(&[3, 4])]);
        assert_eq!(l.representative(), 0);
        assert_eq!(r.lookup(&ms(&[1, 2, 3])), Lookup::Covered(0));
        assert_eq!(r.lookup(&ms(&[3, 4])), Lookup::Exact(0));
        assert_eq!(r.get(&ms(&[1, 5])), None);
        assert_eq!(r.get(&ms(&[2, 4])), None);

        r.unify(0, 0);
        r.unify(1, 0);
        assert_eq!(r.lattice(0).unwrap(), &l);
    }

    #[test]
    fn unify_filters_antichain() {
        let mut r = Ccl::new();
        r.put(ms(&[1, 2]), 0).unwrap();
        r.put(ms(&[1]), 1).unwrap();
        r.unify(0, 1);
        assert_eq!(r.lattice(0).unwrap().minimals(), &[ms(&[1])]);
    }

    #[test]
    fn chained_unify_follows_survivor() {
        let mut r = Ccl::new();
        for (i, q) in [ms(&[1]), ms(&[2]), ms(&[3])].into_iter().enumerate() {
            r.put(q, i).unwrap();
        }
        r.unify(1, 2);
        r.unify(0, 1);
        assert_eq!(r.get(&ms(&[3])), Some(0));
        assert_eq!(r.get(&ms(&[1, 2, 3])), Some(0));
        assert_eq!(r.lattices().count(), 1);
        assert!(r.lattices().all(Lattice::is_well_formed));
    }

    #[test]
    fn ccls_with_identity_matches_ccl() {
        let mut a = Ccl::new();
        let mut b = Ccls::new(Preorder::identity(6));
        for (i, q) in [ms(&[1, 2]), ms(&[3, 4]), ms(&[5])].into_iter().enumerate() {
            a.put(q.clone(), i).unwrap();
            b.put(q, i).unwrap();
        }
        a.unify(0, 1);
        b.unify(0, 1);
        for bits in 0u32..64 {
            let q: Metastate = (0..6).filter(|i| bits & (1 << i) != 0).collect();
            assert_eq!(a.lookup(&q), b.lookup(&q), "{q}");
        }
    }

    #[test]
    fn ccls_put_covers_saturation() {
        // a = 0, b = 1, c = 2 with b ⪯ a
        let order = Preorder::from_pairs(3, &[(1, 0)]);
        let mut r = Ccls::new(order);
        r.put(ms(&[0]), 4).unwrap();
        let l = r.lattice(4).unwrap();
        assert_eq!(l.greatest(), &ms(&[0, 1]));
        assert_eq!(l.minimals(), &[ms(&[0])]);
        assert_eq!(r.lookup(&ms(&[0, 1])), Lookup::Covered(4));
    }

    #[test]
    fn ccls_get_prunes_query() {
        let order = Preorder::from_pairs(3, &[(1, 0)]);
        let mut r = Ccls::new(order);
        r.put(ms(&[0, 2]), 9).unwrap();
        assert_eq!(r.get(&ms(&[0, 1, 2])), Some(9));
        assert_eq!(r.get(&ms(&[1, 2])), None);
    }
}
