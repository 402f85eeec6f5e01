use std::collections::HashMap;

use super::{EquivalenceRegistry, Lookup};
use crate::metastate::Metastate;
use crate::{Error, Result};

/// Exact hash lookup; equivalences are ignored. Driving the determinization
/// loop with this registry and a threshold that never fires is classic
/// subset construction.
#[derive(Clone, Debug, Default)]
pub struct OneToOne {
    map: HashMap<Metastate, usize>,
}

impl OneToOne {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl EquivalenceRegistry for OneToOne {
    fn lookup(&mut self, q: &Metastate) -> Lookup {
        match self.map.get(q) {
            Some(&s) => Lookup::Exact(s),
            None => Lookup::Miss,
        }
    }

    fn put(&mut self, q: Metastate, state: usize) -> Result<()> {
        match self.map.get(&q) {
            Some(&existing) if existing != state => Err(Error::RegistryContract(format!(
                "metastate {q} already mapped to state {existing}, cannot map to {state}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.map.insert(q, state);
                Ok(())
            }
        }
    }

    fn unify(&mut self, _survivor: usize, _absorbed: usize) {}
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_unify() {
        let mut r = OneToOne::new();
        r.put(Metastate::singleton(0), 0).unwrap();
        assert_eq!(r.get(&Metastate::singleton(0)), Some(0));
        assert_eq!(r.get(&Metastate::singleton(1)), None);
        r.put(Metastate::singleton(1), 1).unwrap();
        r.put(Metastate::singleton(2), 2).unwrap();
        r.unify(1, 2);
        assert_eq!(r.get(&Metastate::singleton(2)), Some(2));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn conflicting_put_is_rejected() {
        let mut r = OneToOne::new();
        r.put(Metastate::singleton(0), 0).unwrap();
        assert!(r.put(Metastate::singleton(0), 0).is_ok());
        assert!(matches!(
            r.put(Metastate::singleton(0), 3),
            Err(Error::RegistryContract(_))
        ));
    }
}
