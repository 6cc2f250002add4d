use std::collections::VecDeque;

use crate::graph::{Instance, StarGraph, VertexId};

/// Anything that can list its vertices and arcs for a max-flow computation.
pub trait Digraph {
    fn node_count(&self) -> usize;
    fn arc_ends(&self) -> Vec<(VertexId, VertexId)>;
}

impl Digraph for Instance {
    fn node_count(&self) -> usize {
        self.vertex_count()
    }

    fn arc_ends(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs().iter().map(|a| (a.tail, a.head)).collect()
    }
}

impl Digraph for StarGraph {
    fn node_count(&self) -> usize {
        StarGraph::node_count(self)
    }

    fn arc_ends(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs().iter().map(|a| (a.tail, a.head)).collect()
    }
}

/// `lambda(source, sink)` with a minimum cut `W` (source side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutValue {
    pub source: VertexId,
    pub sink: VertexId,
    pub value: usize,
    pub min_cut: Vec<VertexId>,
}

/// Unit-capacity max-flow by shortest augmenting paths. The returned cut is
/// the residual-reachable set of `source`; its out-degree equals the flow.
pub fn local_arc_connectivity<G: Digraph + ?Sized>(graph: &G, source: VertexId, sink: VertexId) -> CutValue {
    assert_ne!(source, sink, "connectivity needs distinct endpoints");
    let n = graph.node_count();
    let ends = graph.arc_ends();
    // Residual edges in pairs: 2i forward (cap 1), 2i+1 backward (cap 0).
    let mut to = Vec::with_capacity(ends.len() * 2);
    let mut cap = Vec::with_capacity(ends.len() * 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in &ends {
        adj[t.0].push(to.len());
        to.push(h.0);
        cap.push(1u32);
        adj[h.0].push(to.len());
        to.push(t.0);
        cap.push(0u32);
    }
    let mut value = 0;
    let mut via = vec![usize::MAX; n];
    loop {
        via.fill(usize::MAX);
        let mut seen = vec![false; n];
        seen[source.0] = true;
        let mut queue = VecDeque::from([source.0]);
        while let Some(u) = queue.pop_front() {
            if u == sink.0 {
                break;
            }
            for &e in &adj[u] {
                let v = to[e];
                if cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !seen[sink.0] {
            let min_cut: Vec<VertexId> = (0..n).filter(|&v| seen[v]).map(VertexId).collect();
            let crossing = ends.iter().filter(|(t, h)| seen[t.0] && !seen[h.0]).count();
            assert_eq!(crossing, value, "max-flow and min-cut disagree");
            return CutValue { source, sink, value, min_cut };
        }
        let mut v = sink.0;
        while v != source.0 {
            let e = via[v];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            v = to[e ^ 1];
        }
        value += 1;
    }
}
