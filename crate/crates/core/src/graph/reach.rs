use std::collections::VecDeque;

use thiserror::Error;

use super::{ArcId, Instance, VertexId};

/// Which roots each vertex reaches, and which vertices reach each root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachProfile {
    reach: Vec<Vec<usize>>,
    basin: Vec<Vec<VertexId>>,
    member: Vec<Vec<bool>>,
    demand_reach: Vec<usize>,
    total: usize,
}

impl ReachProfile {
    /// `R_D(v)` as ascending root indices.
    pub fn reach(&self, v: VertexId) -> &[usize] {
        &self.reach[v.0]
    }

    /// `V^i_D`, ascending.
    pub fn basin(&self, root_index: usize) -> &[VertexId] {
        &self.basin[root_index]
    }

    pub fn in_basin(&self, root_index: usize, v: VertexId) -> bool {
        self.member[root_index][v.0]
    }

    /// `f(R_D(v))`.
    pub fn demand_reach(&self, v: VertexId) -> usize {
        self.demand_reach[v.0]
    }

    /// `M = sum_v f(R_D(v))`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn vertex_count(&self) -> usize {
        self.reach.len()
    }
}

/// Computes reach sets by a reverse breadth-first search from every root.
pub fn reach_profile(inst: &Instance) -> ReachProfile {
    let n = inst.vertex_count();
    let d = inst.root_count();
    let mut member = vec![vec![false; n]; d];
    let mut queue = VecDeque::new();
    for (i, root) in inst.roots().iter().enumerate() {
        let seen = &mut member[i];
        seen[root.vertex.0] = true;
        queue.push_back(root.vertex);
        while let Some(v) = queue.pop_front() {
            for &a in inst.in_arcs(v) {
                let t = inst.arc(a).tail;
                if !seen[t.0] {
                    seen[t.0] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    let mut reach = vec![Vec::new(); n];
    let mut basin = vec![Vec::new(); d];
    for i in 0..d {
        for v in 0..n {
            if member[i][v] {
                reach[v].push(i);
                basin[i].push(VertexId(v));
            }
        }
    }
    let demand_reach: Vec<usize> =
        reach.iter().map(|rs| rs.iter().map(|&i| inst.roots()[i].demand).sum()).collect();
    let total = demand_reach.iter().sum();
    ReachProfile { reach, basin, member, demand_reach, total }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vertex {vertex} has {star_degree} outgoing star arcs but f(R(v)) = {capacity}")]
pub struct NotProper {
    pub vertex: VertexId,
    pub star_degree: usize,
    pub capacity: usize,
}

/// Checks `|delta_{D*}(v)| <= f(R_D(v))` at every vertex; reports the first violation.
pub fn check_proper(inst: &Instance, rp: &ReachProfile) -> Result<(), NotProper> {
    for v in inst.vertices() {
        let star_degree = inst.out_degree(v) + inst.demand_at(v);
        let capacity = rp.demand_reach(v);
        if star_degree > capacity {
            return Err(NotProper { vertex: v, star_degree, capacity });
        }
    }
    Ok(())
}

pub fn is_proper(inst: &Instance, rp: &ReachProfile) -> bool {
    check_proper(inst, rp).is_ok()
}

/// `opt_D = M - (|A| + f(S))`, the least possible size of a rooted connector.
pub fn opt_d(inst: &Instance, rp: &ReachProfile) -> Result<usize, NotProper> {
    check_proper(inst, rp)?;
    let star_arcs = inst.arc_count() + inst.total_demand();
    Ok(rp.total() - star_arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("arc {arc} ({tail} -> {head}) enters a vertex that reaches no root with positive demand")]
pub struct UncoverableArc {
    pub arc: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// An arc can only sit in some in-tree if its head reaches a root that owns at
/// least one tree.
pub fn coverable_check(inst: &Instance, rp: &ReachProfile) -> Result<(), UncoverableArc> {
    for a in inst.arcs() {
        if rp.demand_reach(a.head) == 0 {
            return Err(UncoverableArc { arc: a.id, tail: a.tail, head: a.head });
        }
    }
    Ok(())
}
