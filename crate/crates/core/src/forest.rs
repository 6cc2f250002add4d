//! Scratch structures for graphic-matroid queries: union-find for
//! independence tests and a rooted spanning forest for fundamental cycles.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A forest rooted per component, answering "which edges lie on the path
/// between `u` and `v`". Edges carry caller-chosen labels.
#[derive(Debug, Clone)]
pub(crate) struct RootedForest {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    component: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl RootedForest {
    /// `edges` must be acyclic as an undirected multigraph.
    pub(crate) fn new(node_count: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
        for &(u, v, label) in edges {
            adj[u].push((v, label));
            adj[v].push((u, label));
        }
        let mut parent = vec![NONE; node_count];
        let mut parent_edge = vec![NONE; node_count];
        let mut depth = vec![0; node_count];
        let mut component = vec![NONE; node_count];
        let mut queue = VecDeque::new();
        for root in 0..node_count {
            if component[root] != NONE {
                continue;
            }
            component[root] = root;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(v, label) in &adj[u] {
                    if component[v] == NONE {
                        component[v] = root;
                        parent[v] = u;
                        parent_edge[v] = label;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        RootedForest { parent, parent_edge, depth, component }
    }

    pub(crate) fn connected(&self, u: usize, v: usize) -> bool {
        self.component[u] == self.component[v]
    }

    /// Edge labels on the tree path between `u` and `v`, or `None` if they lie
    /// in different components.
    pub(crate) fn path(&self, mut u: usize, mut v: usize) -> Option<Vec<usize>> {
        if !self.connected(u, v) {
            return None;
        }
        let mut out = Vec::new();
        while self.depth[u] > self.depth[v] {
            out.push(self.parent_edge[u]);
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            out.push(self.parent_edge[v]);
            v = self.parent[v];
        }
        while u != v {
            out.push(self.parent_edge[u]);
            out.push(self.parent_edge[v]);
            u = self.parent[u];
            v = self.parent[v];
        }
        Some(out)
    }
}
