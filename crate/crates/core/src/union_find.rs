/// Disjoint sets over dense integer ids where the caller decides which root
/// survives a union.
#[derive(Clone, Debug, Default)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new() -> Self {
        Self::default()
    }

    /// Grows the structure so that every id below `n` is a member.
    pub fn ensure(&mut self, n: usize) {
        while self.parent.len() < n {
            let id = self.parent.len();
            self.parent.push(id);
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `survivor` and `absorbed`; the root of
    /// `survivor`'s class becomes the root of the merged class.
    pub fn union_into(&mut self, survivor: usize, absorbed: usize) -> usize {
        let s = self.find(survivor);
        let a = self.find(absorbed);
        if s != a {
            self.parent[a] = s;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survivor_stays_root() {
        let mut uf = UnionFind::new();
        uf.ensure(5);
        assert_eq!(uf.union_into(3, 1), 3);
        assert_eq!(uf.union_into(0, 3), 0);
        assert_eq!(uf.find(1), 0);
        assert_eq!(uf.find(4), 4);
    }
}
