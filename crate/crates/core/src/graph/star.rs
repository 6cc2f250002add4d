use super::{opt_d, Arc, ArcId, ArcKind, Instance, NotProper, ReachProfile, VertexId};

/// One tree position `(i, j)`: the `j`-th tree (1-based) of root index `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub root_index: usize,
    pub copy_index: usize,
}

/// `D*`: the base graph plus a super-sink `s*` receiving `f(s_i)` parallel
/// arcs from each root. Root arcs follow the base arcs, grouped by root in
/// root order, and the `k`-th root arc belongs to the `k`-th slot.
#[derive(Debug, Clone)]
pub struct StarGraph {
    base: Instance,
    arcs: Vec<Arc>,
    slots: Vec<Slot>,
}

impl StarGraph {
    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn star_vertex(&self) -> VertexId {
        VertexId(self.base.vertex_count())
    }

    /// Vertices of the star graph, `|V| + 1`.
    pub fn node_count(&self) -> usize {
        self.base.vertex_count() + 1
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

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn root_arc(&self, slot_index: usize) -> ArcId {
        ArcId(self.base.arc_count() + slot_index)
    }

    pub fn is_root_arc(&self, id: ArcId) -> bool {
        id.0 >= self.base.arc_count()
    }

    /// Whether `v` lies in `V^i_D ∪ {s*}` for the slot's root `i`.
    pub fn slot_allows(&self, rp: &ReachProfile, slot_index: usize, v: VertexId) -> bool {
        v == self.star_vertex() || rp.in_basin(self.slots[slot_index].root_index, v)
    }

    /// Out-degree of `v` in the star graph, `|delta_{D*}(v)|`.
    pub fn out_degree(&self, v: VertexId) -> usize {
        if v == self.star_vertex() {
            0
        } else {
            self.base.out_degree(v) + self.base.demand_at(v)
        }
    }
}

pub fn build_star(inst: &Instance) -> StarGraph {
    let mut arcs = inst.arcs().to_vec();
    let star = VertexId(inst.vertex_count());
    let mut slots = Vec::with_capacity(inst.total_demand());
    for (i, root) in inst.roots().iter().enumerate() {
        for j in 1..=root.demand {
            arcs.push(Arc {
                id: ArcId(arcs.len()),
                tail: root.vertex,
                head: star,
                origin: None,
                kind: ArcKind::RootArc,
            });
            slots.push(Slot { root_index: i, copy_index: j });
        }
    }
    StarGraph { base: inst.clone(), arcs, slots }
}

/// `D+*`: every original arc gets `opt_D` parallel copies, then the star is added.
#[derive(Debug, Clone)]
pub struct AugmentedGraph {
    pub star: StarGraph,
    pub copies_per_arc: usize,
}

impl AugmentedGraph {
    /// IDs of the copies of original arc `e`, ascending.
    pub fn copies_of(&self, e: ArcId) -> impl Iterator<Item = ArcId> {
        let base = self.star.base().original_arc_count();
        let start = base + e.0 * self.copies_per_arc;
        (start..start + self.copies_per_arc).map(ArcId)
    }
}

pub fn build_plus(inst: &Instance, rp: &ReachProfile) -> Result<AugmentedGraph, NotProper> {
    let copies = opt_d(inst, rp)?;
    let origins: Vec<ArcId> = inst
        .arcs()
        .iter()
        .filter(|a| a.kind == ArcKind::Original)
        .flat_map(|a| std::iter::repeat_n(a.id, copies))
        .collect();
    let plus = inst.with_copies(&origins);
    Ok(AugmentedGraph { star: build_star(&plus), copies_per_arc: copies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::reach_profile;

    #[test]
    fn star_arc_count_matches_demand() {
        let f4 = Instance::new(4, &[(0, 1), (0, 1), (0, 3), (1, 2)], &[(2, 1), (3, 2)]).unwrap();
        let star = build_star(&f4);
        assert_eq!(star.arc_count(), 7);
        assert_eq!(
            star.slots(),
            &[
                Slot { root_index: 0, copy_index: 1 },
                Slot { root_index: 1, copy_index: 1 },
                Slot { root_index: 1, copy_index: 2 }
            ]
        );
        assert_eq!(star.arc(star.root_arc(0)).tail, VertexId(2));
        assert_eq!(star.arc(star.root_arc(2)).tail, VertexId(3));
        assert!(star.arcs().iter().all(|a| a.tail != star.star_vertex()));
    }

    #[test]
    fn plus_graph_copy_layout() {
        let f2 = Instance::new(3, &[(0, 1), (1, 2)], &[(2, 2)]).unwrap();
        let rp = reach_profile(&f2);
        let plus = build_plus(&f2, &rp).unwrap();
        assert_eq!(plus.copies_per_arc, 2);
        assert_eq!(plus.star.arc_count(), 8);
        let c: Vec<_> = plus.copies_of(ArcId(1)).collect();
        assert_eq!(c, vec![ArcId(4), ArcId(5)]);
        for id in c {
            assert_eq!(plus.star.arc(id).origin, Some(ArcId(1)));
        }
        assert_eq!(reach_profile(plus.star.base()), rp);
    }
}
