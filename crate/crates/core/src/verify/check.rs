use std::fmt;

use crate::canonical::CanonicalSet;
use crate::graph::{ArcId, Instance, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TreeCount { root_index: usize, expected: usize, found: usize },
    UnknownRoot { tree: usize, root_index: usize },
    InvalidArc { tree: usize, arc: ArcId },
    RepeatedArc { tree: usize, arc: ArcId },
    ArcOutsideBasin { tree: usize, arc: ArcId },
    RootHasOutArc { tree: usize, arc: ArcId },
    MissingOutArc { tree: usize, vertex: VertexId },
    ExtraOutArc { tree: usize, vertex: VertexId },
    NoPathToRoot { tree: usize, vertex: VertexId },
    Uncovered { arc: ArcId },
    Shared { arc: ArcId, trees: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TreeCount { root_index, expected, found } => {
                write!(f, "root #{root_index} has {found} trees, expected {expected}")
            }
            Violation::UnknownRoot { tree, root_index } => write!(f, "tree {tree}: no root #{root_index}"),
            Violation::InvalidArc { tree, arc } => write!(f, "tree {tree}: arc {arc} does not exist"),
            Violation::RepeatedArc { tree, arc } => write!(f, "tree {tree}: arc {arc} listed twice"),
            Violation::ArcOutsideBasin { tree, arc } => {
                write!(f, "tree {tree}: arc {arc} leaves the vertices that reach the root")
            }
            Violation::RootHasOutArc { tree, arc } => write!(f, "tree {tree}: root has out-arc {arc}"),
            Violation::MissingOutArc { tree, vertex } => {
                write!(f, "tree {tree}: vertex {vertex} is not spanned")
            }
            Violation::ExtraOutArc { tree, vertex } => {
                write!(f, "tree {tree}: vertex {vertex} has more than one out-arc")
            }
            Violation::NoPathToRoot { tree, vertex } => {
                write!(f, "tree {tree}: vertex {vertex} does not lead to the root")
            }
            Violation::Uncovered { arc } => write!(f, "arc {arc} is in no tree"),
            Violation::Shared { arc, trees } => write!(f, "arc {arc} is shared by {trees} trees"),
        }
    }
}

/// Outcome of [`verify_canonical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    /// Trees containing each arc of the host.
    pub multiplicity: Vec<usize>,
    pub tree_counts: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl CoverageReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn min_multiplicity(&self) -> usize {
        self.multiplicity.iter().copied().min().unwrap_or(0)
    }
}

/// Forward closure from every vertex; deliberately naive.
pub(super) fn reaches_root(inst: &Instance) -> Vec<Vec<bool>> {
    let n = inst.vertex_count();
    let mut succ = vec![Vec::new(); n];
    for a in inst.arcs() {
        succ[a.tail.0].push(a.head.0);
    }
    let mut out = vec![vec![false; inst.root_count()]; n];
    for (v, row) in out.iter_mut().enumerate() {
        let mut seen = vec![false; n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &succ[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for (i, r) in inst.roots().iter().enumerate() {
            row[i] = seen[r.vertex.0];
        }
    }
    out
}

/// Checks every defining property of a canonical set of in-trees against its
/// host graph, optionally also coverage of all arcs and pairwise disjointness.
pub fn verify_canonical(
    inst: &Instance,
    cs: &CanonicalSet,
    require_cover: bool,
    require_disjoint: bool,
) -> CoverageReport {
    let n = inst.vertex_count();
    let m = inst.arc_count();
    let reach = reaches_root(inst);
    let mut violations = Vec::new();
    let mut tree_counts = vec![0; inst.root_count()];
    let mut multiplicity = vec![0; m];

    for (t, tree) in cs.trees.iter().enumerate() {
        let i = tree.root_index;
        if i >= inst.root_count() {
            violations.push(Violation::UnknownRoot { tree: t, root_index: i });
            continue;
        }
        tree_counts[i] += 1;
        let root = inst.roots()[i].vertex;
        let mut out_arc: Vec<Option<ArcId>> = vec![None; n];
        let mut listed = vec![false; m];
        for &a in &tree.arcs {
            if a.0 >= m {
                violations.push(Violation::InvalidArc { tree: t, arc: a });
                continue;
            }
            if listed[a.0] {
                violations.push(Violation::RepeatedArc { tree: t, arc: a });
                continue;
            }
            listed[a.0] = true;
            multiplicity[a.0] += 1;
            let arc = inst.arc(a);
            if !reach[arc.tail.0][i] || !reach[arc.head.0][i] {
                violations.push(Violation::ArcOutsideBasin { tree: t, arc: a });
            }
            if arc.tail == root {
                violations.push(Violation::RootHasOutArc { tree: t, arc: a });
            } else if out_arc[arc.tail.0].is_some() {
                violations.push(Violation::ExtraOutArc { tree: t, vertex: arc.tail });
            } else {
                out_arc[arc.tail.0] = Some(a);
            }
        }
        for v in 0..n {
            if v == root.0 || !reach[v][i] {
                continue;
            }
            if out_arc[v].is_none() {
                violations.push(Violation::MissingOutArc { tree: t, vertex: VertexId(v) });
                continue;
            }
            // Follow out-arcs; an in-tree reaches the root within n steps.
            let mut u = v;
            let mut steps = 0;
            while u != root.0 && steps <= n {
                match out_arc[u] {
                    Some(a) => u = inst.arc(a).head.0,
                    None => break,
                }
                steps += 1;
            }
            if u != root.0 {
                violations.push(Violation::NoPathToRoot { tree: t, vertex: VertexId(v) });
            }
        }
    }
    for (i, r) in inst.roots().iter().enumerate() {
        if tree_counts[i] != r.demand {
            violations.push(Violation::TreeCount { root_index: i, expected: r.demand, found: tree_counts[i] });
        }
    }
    for (a, &k) in multiplicity.iter().enumerate() {
        if require_cover && k == 0 {
            violations.push(Violation::Uncovered { arc: ArcId(a) });
        }
        if require_disjoint && k > 1 {
            violations.push(Violation::Shared { arc: ArcId(a), trees: k });
        }
    }
    CoverageReport { multiplicity, tree_counts, violations }
}
