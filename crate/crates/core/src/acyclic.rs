//! Matching-based engine for acyclic inputs.
//!
//! Vertices are processed sink-first. At each vertex `v` every out-arc is
//! matched to a distinct tree slot whose root its head reaches; slots left
//! over take the lowest-ID arc they could use. A vertex with no saturating
//! matching certifies infeasibility through its deficient arc set.

use std::collections::VecDeque;

use thiserror::Error;

use crate::canonical::{CanonicalSet, Host, InTree};
use crate::graph::{
    coverable_check, reach_profile, topological_order, ArcId, CyclicError, Instance, ReachProfile, Slot,
    TopoOrder, UncoverableArc, VertexId,
};

/// All slots of an instance in root order.
pub fn slot_list(inst: &Instance) -> Vec<Slot> {
    inst.roots()
        .iter()
        .enumerate()
        .flat_map(|(i, r)| (1..=r.demand).map(move |j| Slot { root_index: i, copy_index: j }))
        .collect()
}

/// `G_v`: out-arcs of `v` on the left, slots whose root `v` reaches on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotBipartite {
    pub vertex: VertexId,
    pub left: Vec<ArcId>,
    /// Global slot indices, ascending.
    pub right: Vec<usize>,
    /// `adj[x]` lists right positions adjacent to left position `x`, ascending.
    pub adj: Vec<Vec<usize>>,
}

impl SlotBipartite {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

pub fn build_gv(inst: &Instance, rp: &ReachProfile, v: VertexId) -> SlotBipartite {
    let slots = slot_list(inst);
    build_gv_with(inst, rp, v, &slots)
}

fn build_gv_with(inst: &Instance, rp: &ReachProfile, v: VertexId, slots: &[Slot]) -> SlotBipartite {
    let right: Vec<usize> = (0..slots.len()).filter(|&k| rp.in_basin(slots[k].root_index, v)).collect();
    let left: Vec<ArcId> = inst.out_arcs(v).to_vec();
    let adj = left
        .iter()
        .map(|&e| {
            let head = inst.arc(e).head;
            (0..right.len()).filter(|&y| rp.in_basin(slots[right[y]].root_index, head)).collect()
        })
        .collect();
    SlotBipartite { vertex: v, left, right, adj }
}

/// A matching of a [`SlotBipartite`] by left and right positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate.iter().enumerate().filter_map(|(x, m)| m.map(|y| (x, y))).collect()
    }

    pub fn is_saturating(&self) -> bool {
        self.left_mate.iter().all(Option::is_some)
    }
}

/// Hopcroft-Karp maximum matching.
pub fn max_matching(g: &SlotBipartite) -> Matching {
    let nl = g.left.len();
    let nr = g.right.len();
    let mut left_mate: Vec<Option<usize>> = vec![None; nl];
    let mut right_mate: Vec<Option<usize>> = vec![None; nr];
    let mut dist = vec![usize::MAX; nl];
    loop {
        let mut queue = VecDeque::new();
        for x in 0..nl {
            if left_mate[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &g.adj[x] {
                match right_mate[y] {
                    None => found = true,
                    Some(x2) if dist[x2] == usize::MAX => {
                        dist[x2] = dist[x] + 1;
                        queue.push_back(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; nl];
        for x in 0..nl {
            if left_mate[x].is_none() {
                augment_from(g, x, &mut dist, &mut next, &mut left_mate, &mut right_mate);
            }
        }
    }
    Matching { left_mate, right_mate }
}

fn augment_from(
    g: &SlotBipartite,
    x: usize,
    dist: &mut [usize],
    next: &mut [usize],
    left_mate: &mut [Option<usize>],
    right_mate: &mut [Option<usize>],
) -> bool {
    while next[x] < g.adj[x].len() {
        let y = g.adj[x][next[x]];
        next[x] += 1;
        let ok = match right_mate[y] {
            None => true,
            Some(x2) => dist[x2] == dist[x] + 1 && augment_from(g, x2, dist, next, left_mate, right_mate),
        };
        if ok {
            left_mate[x] = Some(y);
            right_mate[y] = Some(x);
            return true;
        }
    }
    dist[x] = usize::MAX;
    false
}

/// Left and right positions reachable by alternating paths from free left nodes.
fn alternating_reach(g: &SlotBipartite, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut seen_l = vec![false; g.left.len()];
    let mut seen_r = vec![false; g.right.len()];
    let mut queue: VecDeque<usize> = (0..g.left.len()).filter(|&x| m.left_mate[x].is_none()).collect();
    for &x in &queue {
        seen_l[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &g.adj[x] {
            if seen_r[y] {
                continue;
            }
            seen_r[y] = true;
            if let Some(x2) = m.right_mate[y] {
                if !seen_l[x2] {
                    seen_l[x2] = true;
                    queue.push_back(x2);
                }
            }
        }
    }
    (seen_l, seen_r)
}

/// Minimum vertex cover from a maximum matching, as (left, right) positions.
pub fn min_vertex_cover(g: &SlotBipartite, m: &Matching) -> (Vec<usize>, Vec<usize>) {
    let (seen_l, seen_r) = alternating_reach(g, m);
    let left = (0..g.left.len()).filter(|&x| !seen_l[x]).collect();
    let right = (0..g.right.len()).filter(|&y| seen_r[y]).collect();
    (left, right)
}

/// `arcs` leave `vertex` but their heads together reach only `capacity` slots.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("Hall violation at {vertex}: arcs {} reach only {capacity} slots", fmt_arcs(arcs))]
pub struct HallViolation {
    pub vertex: VertexId,
    pub arcs: Vec<ArcId>,
    pub capacity: usize,
}

fn fmt_arcs(arcs: &[ArcId]) -> String {
    let names: Vec<String> = arcs.iter().map(ArcId::to_string).collect();
    format!("{{{}}}", names.join(", "))
}

fn deficient_set(g: &SlotBipartite, m: &Matching) -> HallViolation {
    let (seen_l, seen_r) = alternating_reach(g, m);
    HallViolation {
        vertex: g.vertex,
        arcs: (0..g.left.len()).filter(|&x| seen_l[x]).map(|x| g.left[x]).collect(),
        capacity: seen_r.iter().filter(|&&s| s).count(),
    }
}

/// Checks that every `G_v` has a matching saturating the out-arcs of `v`.
pub fn hall_check(inst: &Instance, rp: &ReachProfile) -> Result<(), HallViolation> {
    let slots = slot_list(inst);
    for v in inst.vertices() {
        let g = build_gv_with(inst, rp, v, &slots);
        let m = max_matching(&g);
        if !m.is_saturating() {
            return Err(deficient_set(&g, &m));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcyclicError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Uncoverable(#[from] UncoverableArc),
    #[error(transparent)]
    Hall(#[from] HallViolation),
}

/// Partial trees after processing a prefix of the topological order.
#[derive(Debug, Clone)]
pub struct AcyclicState<'a> {
    inst: &'a Instance,
    rp: &'a ReachProfile,
    order: TopoOrder,
    slots: Vec<Slot>,
    processed: usize,
    trees: Vec<Vec<ArcId>>,
}

impl<'a> AcyclicState<'a> {
    pub fn new(inst: &'a Instance, rp: &'a ReachProfile) -> Result<Self, CyclicError> {
        let order = topological_order(inst)?;
        let slots = slot_list(inst);
        let trees = vec![Vec::new(); slots.len()];
        Ok(AcyclicState { inst, rp, order, slots, processed: 0, trees })
    }

    /// `V_t` in processing order.
    pub fn processed(&self) -> &[VertexId] {
        &self.order.order()[..self.processed]
    }

    pub fn is_done(&self) -> bool {
        self.processed == self.inst.vertex_count()
    }

    /// Processes the next vertex and returns it, or `None` once all are done.
    pub fn step(&mut self) -> Result<Option<VertexId>, HallViolation> {
        let Some(&v) = self.order.order().get(self.processed) else {
            return Ok(None);
        };
        let g = build_gv_with(self.inst, self.rp, v, &self.slots);
        if !g.left.is_empty() {
            let m = max_matching(&g);
            if !m.is_saturating() {
                return Err(deficient_set(&g, &m));
            }
            for (y, &k) in g.right.iter().enumerate() {
                let arc = match m.right_mate[y] {
                    Some(x) => Some(g.left[x]),
                    None => (0..g.left.len()).find(|&x| g.adj[x].contains(&y)).map(|x| g.left[x]),
                };
                if let Some(e) = arc {
                    self.trees[k].push(e);
                }
            }
        }
        self.processed += 1;
        Ok(Some(v))
    }

    /// Trees of every slot, restricted to arcs already placed.
    pub fn partial_set(&self) -> CanonicalSet {
        let trees = self
            .slots
            .iter()
            .zip(&self.trees)
            .map(|(s, arcs)| InTree::new(s.root_index, arcs.clone()))
            .collect();
        CanonicalSet { trees, host: Host::Original }
    }

    /// `D[V_t]` with its own dense arc IDs, plus the partial trees renumbered
    /// into it. `None` while no root has been processed.
    pub fn prefix_view(&self) -> Option<(Instance, CanonicalSet)> {
        let inside: Vec<bool> = {
            let mut b = vec![false; self.inst.vertex_count()];
            for v in self.processed() {
                b[v.0] = true;
            }
            b
        };
        let mut renumber = vec![None; self.inst.arc_count()];
        let mut pairs = Vec::new();
        for a in self.inst.arcs() {
            if inside[a.tail.0] && inside[a.head.0] {
                renumber[a.id.0] = Some(ArcId(pairs.len()));
                pairs.push((a.tail.0, a.head.0));
            }
        }
        let mut roots = Vec::new();
        let mut kept_roots = Vec::new();
        for (i, r) in self.inst.roots().iter().enumerate() {
            if inside[r.vertex.0] {
                kept_roots.push(i);
                roots.push((r.vertex.0, r.demand));
            }
        }
        let sub = Instance::new(self.inst.vertex_count(), &pairs, &roots).ok()?;
        let trees = self
            .slots
            .iter()
            .zip(&self.trees)
            .filter_map(|(s, arcs)| {
                let i = kept_roots.iter().position(|&r| r == s.root_index)?;
                let mapped = arcs.iter().map(|a| renumber[a.0].expect("tree arc inside prefix")).collect();
                Some(InTree::new(i, mapped))
            })
            .collect();
        Some((sub, CanonicalSet { trees, host: Host::Original }))
    }

    pub fn finish(mut self) -> Result<CanonicalSet, HallViolation> {
        while self.step()?.is_some() {}
        Ok(self.partial_set())
    }
}

/// Builds a covering canonical set of an acyclic instance.
pub fn solve_acyclic(inst: &Instance) -> Result<CanonicalSet, AcyclicError> {
    let rp = reach_profile(inst);
    let state = AcyclicState::new(inst, &rp)?;
    coverable_check(inst, &rp)?;
    Ok(state.finish()?)
}
