use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index. Shared by an instance and every graph derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

/// Dense arc index, unique within one host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArcId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    Original,
    /// Parallel copy of an original arc; `Arc::origin` names it.
    Copy,
    /// Arc from a root into the super-sink of a star graph.
    RootArc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub origin: Option<ArcId>,
    pub kind: ArcKind,
}

impl Arc {
    /// The original arc this one stands for (itself unless it is a copy).
    pub fn origin_or_self(&self) -> ArcId {
        self.origin.unwrap_or(self.id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub vertex: VertexId,
    pub demand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("vertex {vertex} is out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("arc {arc} is a self-loop at vertex {vertex}")]
    SelfLoop { arc: usize, vertex: usize },
    #[error("vertex {0} is listed as a root more than once")]
    DuplicateRoot(usize),
    #[error("an instance needs at least one root")]
    NoRoots,
}

/// A directed multigraph `D = (V, A)` with ordered roots `S` and demands `f`.
///
/// Arcs are either originals or parallel copies of originals (the latter only
/// in graphs of the form `D + B`). Adjacency lists are kept in arc-ID order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    vertex_count: usize,
    arcs: Vec<Arc>,
    roots: Vec<Root>,
    root_index: Vec<Option<usize>>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
    original_count: usize,
}

impl Instance {
    /// Validates and builds an instance. Arc IDs follow input order.
    pub fn new(
        vertex_count: usize,
        arcs: &[(usize, usize)],
        roots: &[(usize, usize)],
    ) -> Result<Self, InstanceError> {
        if roots.is_empty() {
            return Err(InstanceError::NoRoots);
        }
        let check = |v: usize| {
            if v < vertex_count {
                Ok(VertexId(v))
            } else {
                Err(InstanceError::VertexOutOfRange { vertex: v, count: vertex_count })
            }
        };
        let mut built = Vec::with_capacity(arcs.len());
        for (i, &(t, h)) in arcs.iter().enumerate() {
            let tail = check(t)?;
            let head = check(h)?;
            if t == h {
                return Err(InstanceError::SelfLoop { arc: i, vertex: t });
            }
            built.push(Arc { id: ArcId(i), tail, head, origin: None, kind: ArcKind::Original });
        }
        let mut root_index = vec![None; vertex_count];
        let mut rs = Vec::with_capacity(roots.len());
        for (i, &(v, demand)) in roots.iter().enumerate() {
            let vertex = check(v)?;
            if root_index[v].is_some() {
                return Err(InstanceError::DuplicateRoot(v));
            }
            root_index[v] = Some(i);
            rs.push(Root { vertex, demand });
        }
        Ok(Self::assemble(vertex_count, built, rs, root_index, arcs.len()))
    }

    fn assemble(
        vertex_count: usize,
        arcs: Vec<Arc>,
        roots: Vec<Root>,
        root_index: Vec<Option<usize>>,
        original_count: usize,
    ) -> Self {
        let mut out_arcs = vec![Vec::new(); vertex_count];
        let mut in_arcs = vec![Vec::new(); vertex_count];
        for a in &arcs {
            out_arcs[a.tail.0].push(a.id);
            in_arcs[a.head.0].push(a.id);
        }
        Instance { vertex_count, arcs, roots, root_index, out_arcs, in_arcs, original_count }
    }

    /// `D + B`: appends one parallel copy per entry of `origins`, in the given
    /// order. Each entry must name an original arc.
    pub fn with_copies(&self, origins: &[ArcId]) -> Instance {
        let mut arcs = self.arcs.clone();
        for &o in origins {
            let src = self.arcs[o.0];
            assert_eq!(src.kind, ArcKind::Original, "copies must be made of original arcs");
            let id = ArcId(arcs.len());
            arcs.push(Arc { id, tail: src.tail, head: src.head, origin: Some(o), kind: ArcKind::Copy });
        }
        Self::assemble(
            self.vertex_count,
            arcs,
            self.roots.clone(),
            self.root_index.clone(),
            self.original_count,
        )
    }

    /// Strips every copy arc, returning the underlying `D`.
    pub fn originals_only(&self) -> Instance {
        let arcs: Vec<Arc> = self.arcs.iter().copied().filter(|a| a.kind == ArcKind::Original).collect();
        let n = arcs.len();
        Self::assemble(self.vertex_count, arcs, self.roots.clone(), self.root_index.clone(), n)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.0]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Number of original (non-copy) arcs, `|A|`.
    pub fn original_arc_count(&self) -> usize {
        self.original_count
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// `d`, the number of roots.
    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: VertexId) -> Option<usize> {
        self.root_index[v.0]
    }

    /// `f(v)`: the demand of `v` if it is a root, otherwise zero.
    pub fn demand_at(&self, v: VertexId) -> usize {
        self.root_index[v.0].map_or(0, |i| self.roots[i].demand)
    }

    /// `f(S)`.
    pub fn total_demand(&self) -> usize {
        self.roots.iter().map(|r| r.demand).sum()
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v.0]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v.0].len()
    }

    /// Largest single demand, used to flag inputs beyond the usual `f(s) <= |A|` normalisation.
    pub fn max_demand(&self) -> usize {
        self.roots.iter().map(|r| r.demand).max().unwrap_or(0)
    }

    /// Plain `(tail, head)` pairs of the original arcs, in ID order.
    pub fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs
            .iter()
            .filter(|a| a.kind == ArcKind::Original)
            .map(|a| (a.tail.0, a.head.0))
            .collect()
    }

    pub fn root_pairs(&self) -> Vec<(usize, usize)> {
        self.roots.iter().map(|r| (r.vertex.0, r.demand)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loop() {
        assert_eq!(
            Instance::new(2, &[(0, 0)], &[(1, 1)]),
            Err(InstanceError::SelfLoop { arc: 0, vertex: 0 })
        );
    }

    #[test]
    fn rejects_duplicate_root_and_range() {
        assert_eq!(Instance::new(2, &[], &[(1, 1), (1, 2)]), Err(InstanceError::DuplicateRoot(1)));
        assert_eq!(
            Instance::new(2, &[(0, 2)], &[(1, 1)]),
            Err(InstanceError::VertexOutOfRange { vertex: 2, count: 2 })
        );
        assert_eq!(Instance::new(2, &[(0, 1)], &[]), Err(InstanceError::NoRoots));
    }

    #[test]
    fn copies_keep_endpoints_and_origin() {
        let d = Instance::new(3, &[(0, 1), (1, 2)], &[(2, 2)]).unwrap();
        let plus = d.with_copies(&[ArcId(1), ArcId(0)]);
        assert_eq!(plus.arc_count(), 4);
        let c = plus.arc(ArcId(2));
        assert_eq!((c.tail, c.head, c.origin, c.kind), (VertexId(1), VertexId(2), Some(ArcId(1)), ArcKind::Copy));
        assert_eq!(plus.out_arcs(VertexId(0)), &[ArcId(0), ArcId(3)]);
        assert_eq!(plus.original_arc_count(), 2);
        assert_eq!(plus.originals_only(), d);
    }
}
