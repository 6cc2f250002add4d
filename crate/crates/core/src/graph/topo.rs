use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use super::{Instance, VertexId};

/// Labels `1..=|V|` with `label(head) < label(tail)` on every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoOrder {
    label: Vec<usize>,
    order: Vec<VertexId>,
}

impl TopoOrder {
    pub fn label(&self, v: VertexId) -> usize {
        self.label[v.0]
    }

    /// Vertices by ascending label (sinks first).
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph contains a directed cycle through {cycle:?}")]
pub struct CyclicError {
    /// Vertices of one directed cycle, in arc order.
    pub cycle: Vec<VertexId>,
}

/// Sink-first topological labelling; ties go to the smallest vertex ID.
pub fn topological_order(inst: &Instance) -> Result<TopoOrder, CyclicError> {
    let n = inst.vertex_count();
    let mut remaining_out: Vec<usize> = inst.vertices().map(|v| inst.out_degree(v)).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| remaining_out[v] == 0).map(Reverse).collect();
    let mut label = vec![0; n];
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(VertexId(v));
        label[v] = order.len();
        for &a in inst.in_arcs(VertexId(v)) {
            let t = inst.arc(a).tail.0;
            remaining_out[t] -= 1;
            if remaining_out[t] == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    if order.len() == n {
        return Ok(TopoOrder { label, order });
    }
    // Every unlabelled vertex keeps an out-arc into the unlabelled set, so
    // walking those arcs from the smallest one must revisit a vertex.
    let start = (0..n).find(|&v| label[v] == 0).expect("unlabelled vertex");
    let mut pos = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(VertexId(v));
        v = inst
            .out_arcs(VertexId(v))
            .iter()
            .map(|&a| inst.arc(a).head.0)
            .find(|&h| label[h] == 0)
            .expect("unlabelled vertex keeps an unlabelled successor");
    }
    Err(CyclicError { cycle: walk[pos[v]..].to_vec() })
}
