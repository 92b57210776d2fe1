//! Disjoint sets with a parity bit on every element relative to its root.
//!
//! Plain connectivity ignores the parity; the orientability check uses it to
//! detect odd cycles in the gluing graph.

#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    // parity of the path from an element to its parent
    parity: Vec<bool>,
}

/// Returned by [`ParityUnionFind::union`] when the requested relation
/// contradicts the parities already recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConflict;

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        Self { parent: (0..len).collect(), rank: vec![0; len], parity: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` together with the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // walk back from the element nearest the root, accumulating parity
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Records `parity(a) xor parity(b) == odd`. Returns `Ok(true)` when two
    /// sets were joined, `Ok(false)` when the relation was already implied.
    pub fn union(&mut self, a: usize, b: usize, odd: bool) -> Result<bool, ParityConflict> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == odd { Ok(false) } else { Err(ParityConflict) };
        }
        let (child, root) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ odd;
        Ok(true)
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a).0 == self.find(b).0
    }

    /// Groups element indices by root, each group sorted, groups ordered by
    /// their smallest element.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for x in 0..self.len() {
            let (r, _) = self.find(x);
            by_root[r].push(x);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_iter().filter(|g| !g.is_empty()).collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}
