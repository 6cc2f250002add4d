//! Independence oracles on the arcs of a star graph.
//!
//! Each slot `(i, j)` carries a graphic matroid on `V^i_D ∪ {s*}`; their union
//! is `M(D*)`. The second matroid `U(D*)` caps the number of chosen arcs
//! leaving each vertex `v` at `f(R_D(v))`.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::forest::{DisjointSet, RootedForest};
use crate::graph::{ArcId, ReachProfile, StarGraph, VertexId};

pub use crate::graph::Slot;

/// Assignment of star-graph arcs to slot indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SlotPartition {
    assignment: BTreeMap<ArcId, usize>,
}

impl SlotPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (ArcId, usize)>) -> Self {
        SlotPartition { assignment: pairs.into_iter().collect() }
    }

    pub fn assign(&mut self, arc: ArcId, slot: usize) {
        self.assignment.insert(arc, slot);
    }

    pub fn slot_of(&self, arc: ArcId) -> Option<usize> {
        self.assignment.get(&arc).copied()
    }

    /// Arcs of one slot, ascending.
    pub fn arcs_in(&self, slot: usize) -> Vec<ArcId> {
        self.assignment.iter().filter(|&(_, &s)| s == slot).map(|(&a, _)| a).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArcId, usize)> + '_ {
        self.assignment.iter().map(|(&a, &s)| (a, s))
    }

    pub fn arcs(&self) -> Vec<ArcId> {
        self.assignment.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// An arc set independent in both `M(D*)` and `U(D*)`, with the slot
/// partition witnessing the former.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonIndependentSet {
    pub arcs: Vec<ArcId>,
    pub partition: SlotPartition,
    pub complete: bool,
}

impl CommonIndependentSet {
    pub fn from_partition(star: &StarGraph, rp: &ReachProfile, partition: SlotPartition) -> Self {
        let arcs = partition.arcs();
        let mut cis = CommonIndependentSet { arcs, partition, complete: false };
        cis.complete = is_complete(star, rp, &cis);
        cis
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// True iff every arc has both ends in the slot's vertex set and the arcs form
/// an undirected forest (two parallel arcs count as a cycle).
pub fn forest_indep(star: &StarGraph, rp: &ReachProfile, slot: usize, arcs: &[ArcId]) -> bool {
    let mut ds = DisjointSet::new(star.node_count());
    arcs.iter().all(|&a| {
        let arc = star.arc(a);
        star.slot_allows(rp, slot, arc.tail)
            && star.slot_allows(rp, slot, arc.head)
            && ds.union(arc.tail.0, arc.head.0)
    })
}

/// `I ∈ J(D*)`: out-degree caps `f(R_D(v))`, and nothing leaves `s*`.
pub fn uniform_indep(star: &StarGraph, rp: &ReachProfile, arcs: &[ArcId]) -> bool {
    let mut load = vec![0usize; star.node_count()];
    for &a in arcs {
        let t = star.arc(a).tail;
        if t == star.star_vertex() {
            return false;
        }
        load[t.0] += 1;
        if load[t.0] > rp.demand_reach(t) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("arc {arc} cannot be added to any slot forest")]
pub struct Dependent {
    pub arc: ArcId,
}

/// Decides `I ∈ I(D*)` by matroid partitioning: arcs are inserted in ID order
/// and each insertion follows a shortest exchange path through the slot
/// forests. Returns the partition when one exists.
pub fn union_indep(
    star: &StarGraph,
    rp: &ReachProfile,
    arcs: &[ArcId],
) -> Result<SlotPartition, Dependent> {
    let mut sorted = arcs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let slot_count = star.slots().len();
    let mut slot_of: BTreeMap<ArcId, usize> = BTreeMap::new();
    for &x in &sorted {
        let mut members: Vec<Vec<ArcId>> = vec![Vec::new(); slot_count];
        for (&a, &s) in &slot_of {
            members[s].push(a);
        }
        let forests: Vec<RootedForest> = members
            .iter()
            .map(|ms| {
                let edges: Vec<_> = ms
                    .iter()
                    .map(|&a| (star.arc(a).tail.0, star.arc(a).head.0, a.0))
                    .collect();
                RootedForest::new(star.node_count(), &edges)
            })
            .collect();

        // parent[z] = (y, k): y moves into slot k and pushes z out of it.
        let mut parent: BTreeMap<ArcId, (ArcId, usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([x]);
        let mut visited = std::collections::BTreeSet::from([x]);
        let mut terminal = None;
        'bfs: while let Some(y) = queue.pop_front() {
            let arc = star.arc(y);
            let current = slot_of.get(&y).copied();
            for k in 0..slot_count {
                if Some(k) == current
                    || !star.slot_allows(rp, k, arc.tail)
                    || !star.slot_allows(rp, k, arc.head)
                {
                    continue;
                }
                match forests[k].path(arc.tail.0, arc.head.0) {
                    None => {
                        terminal = Some((y, k));
                        break 'bfs;
                    }
                    Some(mut cycle) => {
                        cycle.sort_unstable();
                        for z in cycle.into_iter().map(ArcId) {
                            if visited.insert(z) {
                                parent.insert(z, (y, k));
                                queue.push_back(z);
                            }
                        }
                    }
                }
            }
        }
        let Some((mut y, mut k)) = terminal else {
            return Err(Dependent { arc: x });
        };
        loop {
            let previous = slot_of.insert(y, k);
            match parent.get(&y) {
                Some(&(py, pk)) => {
                    debug_assert_eq!(previous, Some(pk));
                    y = py;
                    k = pk;
                }
                None => break,
            }
        }
    }
    let partition = SlotPartition { assignment: slot_of };
    debug_assert!((0..slot_count).all(|k| forest_indep(star, rp, k, &partition.arcs_in(k))));
    Ok(partition)
}

/// A common independent set is complete when it is a base of both matroids:
/// every slot holds a spanning tree of its vertex set and every vertex has
/// exactly `f(R_D(v))` chosen out-arcs.
pub fn is_complete(star: &StarGraph, rp: &ReachProfile, cis: &CommonIndependentSet) -> bool {
    if cis.arcs.len() != rp.total() || cis.partition.len() != cis.arcs.len() {
        return false;
    }
    if cis.arcs.iter().any(|&a| cis.partition.slot_of(a).is_none()) {
        return false;
    }
    for (k, slot) in star.slots().iter().enumerate() {
        let members = cis.partition.arcs_in(k);
        if members.len() != rp.basin(slot.root_index).len() || !forest_indep(star, rp, k, &members) {
            return false;
        }
    }
    let mut load = vec![0usize; star.node_count()];
    for &a in &cis.arcs {
        load[star.arc(a).tail.0] += 1;
    }
    (0..star.base().vertex_count()).all(|v| load[v] == rp.demand_reach(VertexId(v)))
        && load[star.star_vertex().0] == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_plus, build_star, reach_profile, Instance};

    fn f2() -> Instance {
        Instance::new(3, &[(0, 1), (1, 2)], &[(2, 2)]).unwrap()
    }

    #[test]
    fn parallel_pair_is_a_cycle() {
        let d = f2();
        let rp = reach_profile(&d);
        let plus = build_plus(&d, &rp).unwrap();
        assert!(forest_indep(&plus.star, &rp, 0, &[ArcId(0)]));
        assert!(!forest_indep(&plus.star, &rp, 0, &[ArcId(0), ArcId(2)]));
    }

    #[test]
    fn union_partition_spreads_parallels() {
        let d = f2();
        let rp = reach_profile(&d);
        let star = build_plus(&d, &rp).unwrap().star;
        let p = union_indep(&star, &rp, &[ArcId(0), ArcId(2), ArcId(1)]).unwrap();
        assert_eq!(p.arcs_in(0), vec![ArcId(0), ArcId(1)]);
        assert_eq!(p.arcs_in(1), vec![ArcId(2)]);
        assert_eq!(
            union_indep(&star, &rp, &[ArcId(0), ArcId(2), ArcId(3)]),
            Err(Dependent { arc: ArcId(3) })
        );
        assert!(union_indep(&star, &rp, &[]).unwrap().is_empty());
    }

    #[test]
    fn exchange_path_reassigns() {
        // Slot 0 takes e0 first; e0's parallel copy then forces a move.
        let d = f2();
        let rp = reach_profile(&d);
        let star = build_plus(&d, &rp).unwrap().star;
        let all: Vec<ArcId> = vec![ArcId(0), ArcId(1), ArcId(2), ArcId(4), ArcId(6), ArcId(7)];
        let p = union_indep(&star, &rp, &all).unwrap();
        assert_eq!(p.len(), 6);
        for k in 0..2 {
            assert!(forest_indep(&star, &rp, k, &p.arcs_in(k)));
        }
    }

    #[test]
    fn uniform_caps() {
        let d = f2();
        let rp = reach_profile(&d);
        let star = build_plus(&d, &rp).unwrap().star;
        assert!(!uniform_indep(&star, &rp, &[ArcId(0), ArcId(2), ArcId(3)]));
        assert!(uniform_indep(&star, &rp, &[ArcId(0), ArcId(1)]));
        assert!(uniform_indep(&star, &rp, &[ArcId(6)]));
    }

    #[test]
    fn f4_slot_rejects_foreign_head() {
        let f4 = Instance::new(4, &[(0, 1), (0, 1), (0, 3), (1, 2)], &[(2, 1), (3, 2)]).unwrap();
        let rp = reach_profile(&f4);
        let star = build_star(&f4);
        assert!(!forest_indep(&star, &rp, 1, &[ArcId(0)]));
    }
}
