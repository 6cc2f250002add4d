use serde::{Deserialize, Serialize};

use crate::graph::ArcId;

/// An in-tree rooted at root index `root_index`, as a sorted arc-ID list of
/// its host graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InTree {
    pub root_index: usize,
    pub arcs: Vec<ArcId>,
}

impl InTree {
    pub fn new(root_index: usize, mut arcs: Vec<ArcId>) -> Self {
        arcs.sort_unstable();
        InTree { root_index, arcs }
    }
}

/// Which graph the arc IDs of a canonical set refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Host {
    /// The input graph `D`.
    Original,
    /// `D + B` for the connector `B` found by the solver.
    WithConnector,
}

/// `f(s_i)` in-trees per root, grouped by root in root order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSet {
    pub trees: Vec<InTree>,
    pub host: Host,
}

impl CanonicalSet {
    pub fn trees_of(&self, root_index: usize) -> impl Iterator<Item = &InTree> {
        self.trees.iter().filter(move |t| t.root_index == root_index)
    }

    /// Number of trees containing each arc of a host with `arc_count` arcs.
    pub fn multiplicity(&self, arc_count: usize) -> Vec<usize> {
        let mut m = vec![0; arc_count];
        for t in &self.trees {
            for a in &t.arcs {
                if a.0 < arc_count {
                    m[a.0] += 1;
                }
            }
        }
        m
    }
}
