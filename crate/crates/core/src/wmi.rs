//! Minimum-weight common independent sets of `M(D*)` and `U(D*)`.
//!
//! The union matroid is handled through its standard expansion: the ground
//! set becomes the `(arc, slot)` pairs that are not loops, the first matroid is
//! the direct sum of the slot graphic matroids and the second admits at most
//! one pair per arc and at most `f(R_D(v))` pairs per tail `v`. Common
//! independent sets of the pair project one-to-one onto slot-partitioned
//! common independent sets of `M(D*)` and `U(D*)`.
//!
//! Cardinality grows by one per augmentation along a shortest path of the
//! exchange graph under the lexicographic order (length, arc count), found by
//! label correction. The current set stays minimum-weight for its size.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::forest::RootedForest;
use crate::graph::{ArcId, ArcKind, ReachProfile, StarGraph};
use crate::matroid::{CommonIndependentSet, SlotPartition};

/// Per-arc weights. The pipeline uses 0 on `A*` and 1 on copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    weight: Vec<i64>,
}

impl WeightFunction {
    /// Zero on original and root arcs, one on copies.
    pub fn copy_indicator(star: &StarGraph) -> Self {
        let weight = star
            .arcs()
            .iter()
            .map(|a| if a.kind == ArcKind::Copy { 1 } else { 0 })
            .collect();
        WeightFunction { weight }
    }

    pub fn zero(star: &StarGraph) -> Self {
        WeightFunction { weight: vec![0; star.arc_count()] }
    }

    /// Arbitrary non-negative weights; used by tests.
    pub fn from_values(values: Vec<i64>) -> Self {
        assert!(values.iter().all(|&w| w >= 0), "weights must be non-negative");
        WeightFunction { weight: values }
    }

    pub fn weight(&self, arc: ArcId) -> i64 {
        self.weight[arc.0]
    }

    pub fn total(&self, arcs: &[ArcId]) -> i64 {
        arcs.iter().map(|&a| self.weight(a)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no common independent set of size {requested}; the maximum is {max_cardinality}")]
pub struct NoSolution {
    pub requested: usize,
    pub max_cardinality: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no augmenting path: the current common independent set has maximum size")]
pub struct NoAugmentingPath;

/// One `(arc, slot)` pair of the expanded ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Element {
    pub arc: usize,
    pub slot: usize,
    /// Endpoints in the slot's graph (after any contraction), never equal.
    pub ends: (usize, usize),
    /// Capacity class, i.e. the tail vertex.
    pub class: usize,
    pub weight: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct GroundSet {
    pub node_count: usize,
    pub slot_count: usize,
    pub arc_count: usize,
    pub capacity: Vec<usize>,
    /// Sorted by `(arc, slot)`.
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone)]
pub(crate) struct ExchangeState {
    in_set: Vec<bool>,
    arc_user: Vec<Option<usize>>,
    class_load: Vec<usize>,
    weight: i64,
    size: usize,
}

type Key = (i64, usize);
const UNREACHED: Key = (i64::MAX, usize::MAX);

enum Into2 {
    /// The element's arc is already used by this member.
    Swap(usize),
    /// Tail class has room: a sink.
    Free,
    /// Tail class is full: any member of the class can leave.
    Class(usize),
}

impl ExchangeState {
    pub(crate) fn new(ground: &GroundSet) -> Self {
        ExchangeState {
            in_set: vec![false; ground.elements.len()],
            arc_user: vec![None; ground.arc_count],
            class_load: vec![0; ground.capacity.len()],
            weight: 0,
            size: 0,
        }
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn weight(&self) -> i64 {
        self.weight
    }

    pub(crate) fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_set.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub(crate) fn insert(&mut self, ground: &GroundSet, e: usize) {
        debug_assert!(!self.in_set[e]);
        let el = ground.elements[e];
        self.in_set[e] = true;
        self.arc_user[el.arc] = Some(e);
        self.class_load[el.class] += 1;
        self.weight += el.weight;
        self.size += 1;
    }

    fn remove(&mut self, ground: &GroundSet, e: usize) {
        debug_assert!(self.in_set[e]);
        let el = ground.elements[e];
        self.in_set[e] = false;
        self.arc_user[el.arc] = None;
        self.class_load[el.class] -= 1;
        self.weight -= el.weight;
        self.size -= 1;
    }

    /// One shortest augmenting path step. Returns false when the current set
    /// already has maximum cardinality.
    pub(crate) fn augment(&mut self, ground: &GroundSet) -> bool {
        let els = &ground.elements;
        let n = els.len();

        let mut slot_edges: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); ground.slot_count];
        for m in self.members() {
            let el = els[m];
            slot_edges[el.slot].push((el.ends.0, el.ends.1, m));
        }
        let forests: Vec<RootedForest> =
            slot_edges.iter().map(|es| RootedForest::new(ground.node_count, es)).collect();

        // For each outsider: its fundamental cycle in the first matroid (None =
        // freely addable) and its exchange kind in the second.
        let mut cycle: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut into2: Vec<Option<Into2>> = Vec::with_capacity(n);
        for (x, el) in els.iter().enumerate() {
            if self.in_set[x] {
                into2.push(None);
                continue;
            }
            cycle[x] = forests[el.slot].path(el.ends.0, el.ends.1);
            into2.push(Some(if let Some(y) = self.arc_user[el.arc] {
                Into2::Swap(y)
            } else if self.class_load[el.class] < ground.capacity[el.class] {
                Into2::Free
            } else {
                Into2::Class(el.class)
            }));
        }

        let mut dist: Vec<Key> = vec![UNREACHED; n];
        let mut pred: Vec<usize> = vec![usize::MAX; n];
        for x in 0..n {
            if !self.in_set[x] && cycle[x].is_none() {
                dist[x] = (els[x].weight, 0);
            }
        }
        let step = |k: Key, w: i64| -> Key { (k.0 + w, k.1 + 1) };

        let mut rounds = 0;
        loop {
            rounds += 1;
            assert!(rounds <= n + 2, "exchange graph has a negative cycle; current set is not extreme");
            let mut changed = false;

            // Outsider -> member edges of the second matroid.
            let mut best_free: Option<(Key, usize)> = None;
            let mut best_class: BTreeMap<usize, (Key, usize)> = BTreeMap::new();
            for x in 0..n {
                if dist[x] == UNREACHED {
                    continue;
                }
                match into2[x] {
                    None => {}
                    Some(Into2::Swap(y)) => {
                        let cand = step(dist[x], -els[y].weight);
                        if cand < dist[y] {
                            dist[y] = cand;
                            pred[y] = x;
                            changed = true;
                        }
                    }
                    Some(Into2::Free) => {
                        if best_free.is_none_or(|(k, _)| dist[x] < k) {
                            best_free = Some((dist[x], x));
                        }
                    }
                    Some(Into2::Class(c)) => {
                        let entry = best_class.entry(c).or_insert((dist[x], x));
                        if dist[x] < entry.0 {
                            *entry = (dist[x], x);
                        }
                    }
                }
            }
            for y in 0..n {
                if !self.in_set[y] {
                    continue;
                }
                let mut from = best_free;
                if let Some(&(k, x)) = best_class.get(&els[y].class) {
                    if from.is_none_or(|(fk, _)| k < fk) {
                        from = Some((k, x));
                    }
                }
                if let Some((k, x)) = from {
                    let cand = step(k, -els[y].weight);
                    if cand < dist[y] {
                        dist[y] = cand;
                        pred[y] = x;
                        changed = true;
                    }
                }
            }

            // Member -> outsider edges of the first matroid.
            let mut best_member: Option<(Key, usize)> = None;
            for y in 0..n {
                if self.in_set[y] && dist[y] != UNREACHED && best_member.is_none_or(|(k, _)| dist[y] < k) {
                    best_member = Some((dist[y], y));
                }
            }
            for x in 0..n {
                if self.in_set[x] {
                    continue;
                }
                let from = match &cycle[x] {
                    None => best_member,
                    Some(c) => {
                        let mut best: Option<(Key, usize)> = None;
                        for &y in c {
                            if dist[y] != UNREACHED && best.is_none_or(|(k, b)| (dist[y], y) < (k, b)) {
                                best = Some((dist[y], y));
                            }
                        }
                        best
                    }
                };
                if let Some((k, y)) = from {
                    let cand = step(k, els[x].weight);
                    if cand < dist[x] {
                        dist[x] = cand;
                        pred[x] = y;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let sink = (0..n)
            .filter(|&x| !self.in_set[x] && dist[x] != UNREACHED && matches!(into2[x], Some(Into2::Free)))
            .min_by_key(|&x| (dist[x], x));
        let Some(mut x) = sink else {
            return false;
        };
        let mut path = vec![x];
        while pred[x] != usize::MAX {
            x = pred[x];
            path.push(x);
        }
        // The path alternates outsider, member, outsider, ... from the sink
        // back to the source; members leave before outsiders enter so that
        // arc swaps stay consistent.
        for &e in path.iter().skip(1).step_by(2) {
            self.remove(ground, e);
        }
        for &e in path.iter().step_by(2) {
            self.insert(ground, e);
        }
        true
    }
}

impl GroundSet {
    /// The expanded ground set of a star graph. Arcs that are identical for
    /// every purpose (same tail, head and weight) are kept only up to the
    /// number that could ever be chosen together; `keep` arcs are always kept.
    pub(crate) fn for_star(
        star: &StarGraph,
        rp: &ReachProfile,
        w: &WeightFunction,
        keep: &[ArcId],
    ) -> Self {
        let node_count = star.node_count();
        let slot_count = star.slots().len();
        let mut capacity = vec![0; node_count];
        for v in star.base().vertices() {
            capacity[v.0] = rp.demand_reach(v);
        }
        let mut taken: BTreeMap<(usize, usize, i64), usize> = BTreeMap::new();
        let mut elements = Vec::new();
        for arc in star.arcs() {
            let allowed: Vec<usize> = (0..slot_count)
                .filter(|&k| star.slot_allows(rp, k, arc.tail) && star.slot_allows(rp, k, arc.head))
                .collect();
            if allowed.is_empty() || arc.tail == star.star_vertex() {
                continue;
            }
            let wt = w.weight(arc.id);
            let limit = allowed.len().min(capacity[arc.tail.0]);
            let used = taken.entry((arc.tail.0, arc.head.0, wt)).or_insert(0);
            if *used >= limit && !keep.contains(&arc.id) {
                continue;
            }
            *used += 1;
            for k in allowed {
                elements.push(Element {
                    arc: arc.id.0,
                    slot: k,
                    ends: (arc.tail.0, arc.head.0),
                    class: arc.tail.0,
                    weight: wt,
                });
            }
        }
        GroundSet { node_count, slot_count, arc_count: star.arc_count(), capacity, elements }
    }

    pub(crate) fn find(&self, arc: usize, slot: usize) -> Option<usize> {
        self.elements.binary_search_by_key(&(arc, slot), |e| (e.arc, e.slot)).ok()
    }
}

/// Incremental weighted intersection on a star graph.
#[derive(Debug, Clone)]
pub struct WmiState<'a> {
    star: &'a StarGraph,
    rp: &'a ReachProfile,
    ground: GroundSet,
    state: ExchangeState,
    bound: Option<i64>,
}

impl<'a> WmiState<'a> {
    pub fn new(star: &'a StarGraph, rp: &'a ReachProfile, w: &WeightFunction) -> Self {
        let ground = GroundSet::for_star(star, rp, w, &[]);
        let state = ExchangeState::new(&ground);
        WmiState { star, rp, ground, state, bound: None }
    }

    /// Starts from a given partitioned set. The caller asserts that it is a
    /// minimum-weight common independent set for its size.
    pub fn from_partition(
        star: &'a StarGraph,
        rp: &'a ReachProfile,
        w: &WeightFunction,
        start: &SlotPartition,
    ) -> Self {
        let ground = GroundSet::for_star(star, rp, w, &start.arcs());
        let mut state = ExchangeState::new(&ground);
        for (arc, slot) in start.iter() {
            let e = ground.find(arc.0, slot).expect("start arc is not a loop of its slot");
            state.insert(&ground, e);
        }
        WmiState { star, rp, ground, state, bound: None }
    }

    /// Stop augmenting once the committed weight exceeds `bound`.
    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn cardinality(&self) -> usize {
        self.state.size()
    }

    pub fn weight(&self) -> i64 {
        self.state.weight()
    }

    pub fn augment(&mut self) -> Result<(), NoAugmentingPath> {
        if self.bound.is_some_and(|b| self.state.weight() > b) {
            return Err(NoAugmentingPath);
        }
        if self.state.augment(&self.ground) {
            Ok(())
        } else {
            Err(NoAugmentingPath)
        }
    }

    pub fn current(&self) -> CommonIndependentSet {
        let partition = SlotPartition::from_pairs(self.state.members().map(|e| {
            let el = self.ground.elements[e];
            (ArcId(el.arc), el.slot)
        }));
        CommonIndependentSet::from_partition(self.star, self.rp, partition)
    }
}

/// Minimum-weight common independent set of exactly `k` arcs.
pub fn wmi_solve(
    star: &StarGraph,
    rp: &ReachProfile,
    w: &WeightFunction,
    k: usize,
) -> Result<CommonIndependentSet, NoSolution> {
    let mut state = WmiState::new(star, rp, w);
    while state.cardinality() < k {
        if state.augment().is_err() {
            return Err(NoSolution { requested: k, max_cardinality: state.cardinality() });
        }
    }
    Ok(state.current())
}

/// Like [`wmi_solve`] but abandons the search once the weight exceeds `bound`.
pub fn wmi_solve_bounded(
    star: &StarGraph,
    rp: &ReachProfile,
    w: &WeightFunction,
    k: usize,
    bound: i64,
) -> Result<CommonIndependentSet, NoSolution> {
    let mut state = WmiState::new(star, rp, w).with_bound(bound);
    while state.cardinality() < k {
        if state.augment().is_err() {
            return Err(NoSolution { requested: k, max_cardinality: state.cardinality() });
        }
    }
    if state.weight() > bound {
        return Err(NoSolution { requested: k, max_cardinality: state.cardinality() });
    }
    Ok(state.current())
}
