use std::collections::HashSet;

use thiserror::Error;

use crate::canonical::{CanonicalSet, Host, InTree};
use crate::graph::{build_star, ArcId, ArcKind, Instance, ReachProfile, Slot, StarGraph};
use crate::matroid::CommonIndependentSet;
use crate::verify::verify_canonical;
use crate::wmi::{Element, ExchangeState, GroundSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("could not pack in-trees after {nodes} search nodes: {detail}")]
pub struct PackingFailure {
    pub nodes: usize,
    pub detail: String,
}

const NODE_LIMIT: usize = 2_000_000;

/// Turns a complete intersection of `host*` into `f(s_i)` pairwise
/// arc-disjoint in-trees per root of `host`.
///
/// When every slot tree of `cis` already has out-degree one at each of its
/// vertices, the trees are read off directly. Otherwise the trees are grown
/// backward from their roots; each step commits an arc whose head is already
/// in the tree, guided by a complete intersection of the residual problem in
/// which each partial tree is contracted into `s*`. Dead ends backtrack.
pub fn pack_disjoint_intrees(
    host: &Instance,
    rp: &ReachProfile,
    cis: &CommonIndependentSet,
) -> Result<CanonicalSet, PackingFailure> {
    let star = build_star(host);
    if let Some(cs) = read_off(&star, rp, cis) {
        if verify_canonical(host, &cs, false, true).is_valid() {
            return Ok(cs);
        }
    }
    let in_cis: Vec<bool> = {
        let mut b = vec![false; host.arc_count()];
        for &a in &cis.arcs {
            if a.0 < host.arc_count() {
                b[a.0] = true;
            }
        }
        b
    };
    let mut domains = vec![in_cis];
    if domains[0].iter().any(|&b| !b) {
        domains.push(vec![true; host.arc_count()]);
    }
    let mut nodes = 0;
    for domain in domains {
        let mut packer = Packer::new(host, rp, star.slots(), domain);
        let found = packer.search(Vec::new());
        nodes += packer.nodes;
        match found {
            Ok(true) => {
                let cs = packer.into_canonical();
                let report = verify_canonical(host, &cs, false, true);
                if !report.is_valid() {
                    let detail = report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
                    return Err(PackingFailure { nodes, detail });
                }
                return Ok(cs);
            }
            Ok(false) => continue,
            Err(()) => return Err(PackingFailure { nodes, detail: "search limit reached".into() }),
        }
    }
    Err(PackingFailure { nodes, detail: "no packing exists within the host arcs".into() })
}

/// Direct conversion: every slot is an arborescence into `s*`.
fn read_off(star: &StarGraph, rp: &ReachProfile, cis: &CommonIndependentSet) -> Option<CanonicalSet> {
    let host = star.base();
    let mut trees = Vec::with_capacity(star.slots().len());
    let mut per_root = vec![0usize; host.root_count()];
    for (k, slot) in star.slots().iter().enumerate() {
        let members = cis.partition.arcs_in(k);
        let mut outdeg = vec![0usize; star.node_count()];
        let mut root_tail = None;
        for &a in &members {
            let arc = star.arc(a);
            outdeg[arc.tail.0] += 1;
            if star.is_root_arc(a) {
                root_tail = Some(arc.tail);
            }
        }
        if rp.basin(slot.root_index).iter().any(|v| outdeg[v.0] != 1) {
            return None;
        }
        let root_index = host.root_index(root_tail?)?;
        per_root[root_index] += 1;
        let arcs = members.into_iter().filter(|&a| !star.is_root_arc(a)).collect();
        trees.push(InTree::new(root_index, arcs));
    }
    if host.roots().iter().zip(&per_root).any(|(r, &c)| r.demand != c) {
        return None;
    }
    trees.sort_by_key(|t| t.root_index);
    Some(CanonicalSet { trees, host: Host::WithConnector })
}

struct Packer<'a> {
    host: &'a Instance,
    rp: &'a ReachProfile,
    slots: &'a [Slot],
    domain: Vec<bool>,
    /// `W_k`: vertices already in the partial tree of each slot.
    in_tree: Vec<Vec<bool>>,
    committed: Vec<Vec<ArcId>>,
    used: Vec<bool>,
    forbidden: HashSet<(usize, usize)>,
    nodes: usize,
}

type Pairs = Vec<(usize, usize)>;

impl<'a> Packer<'a> {
    fn new(host: &'a Instance, rp: &'a ReachProfile, slots: &'a [Slot], domain: Vec<bool>) -> Self {
        let n = host.vertex_count();
        let in_tree = slots
            .iter()
            .map(|s| {
                let mut w = vec![false; n];
                w[host.roots()[s.root_index].vertex.0] = true;
                w
            })
            .collect();
        Packer {
            host,
            rp,
            slots,
            domain,
            in_tree,
            committed: vec![Vec::new(); slots.len()],
            used: vec![false; host.arc_count()],
            forbidden: HashSet::new(),
            nodes: 0,
        }
    }

    fn needs(&self, k: usize, u: usize) -> bool {
        !self.in_tree[k][u] && self.rp.in_basin(self.slots[k].root_index, crate::graph::VertexId(u))
    }

    /// Residual ground set: each partial tree is contracted into `s*`, and a
    /// slot may only use arcs leaving vertices it has yet to span.
    fn ground(&self) -> (GroundSet, usize) {
        let n = self.host.vertex_count();
        let star = n;
        let mut capacity = vec![0usize; n + 1];
        for k in 0..self.slots.len() {
            for (u, cap) in capacity.iter_mut().enumerate().take(n) {
                if self.needs(k, u) {
                    *cap += 1;
                }
            }
        }
        let target = capacity.iter().sum();
        let mut elements = Vec::new();
        for a in self.host.arcs() {
            if !self.domain[a.id.0] || self.used[a.id.0] {
                continue;
            }
            let (u, h) = (a.tail.0, a.head.0);
            for k in 0..self.slots.len() {
                if !self.needs(k, u) || !self.rp.in_basin(self.slots[k].root_index, a.head) {
                    continue;
                }
                if self.forbidden.contains(&(a.id.0, k)) {
                    continue;
                }
                let head = if self.in_tree[k][h] { star } else { h };
                elements.push(Element { arc: a.id.0, slot: k, ends: (u, head), class: u, weight: 0 });
            }
        }
        let ground = GroundSet {
            node_count: n + 1,
            slot_count: self.slots.len(),
            arc_count: self.host.arc_count(),
            capacity,
            elements,
        };
        (ground, target)
    }

    /// A complete residual intersection, grown from whatever part of `warm`
    /// is still available.
    fn oracle(&self, ground: &GroundSet, target: usize, warm: &[(usize, usize)]) -> Option<Pairs> {
        let mut state = ExchangeState::new(ground);
        for &(a, k) in warm {
            if let Some(e) = ground.find(a, k) {
                state.insert(ground, e);
            }
        }
        while state.size() < target {
            if !state.augment(ground) {
                return None;
            }
        }
        Some(state.members().map(|e| (ground.elements[e].arc, ground.elements[e].slot)).collect())
    }

    fn search(&mut self, warm: Pairs) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(());
        }
        let (ground, target) = self.ground();
        if target == 0 {
            return Ok(true);
        }
        let Some(residual) = self.oracle(&ground, target, &warm) else {
            return Ok(false);
        };
        let n = self.host.vertex_count();
        let (arc, k) = residual
            .iter()
            .copied()
            .filter(|&(a, k)| ground.elements[ground.find(a, k).expect("member")].ends.1 == n)
            .min_by_key(|&(a, k)| (k, self.host.arcs()[a].kind != ArcKind::Original, a))
            .expect("a spanning tree of a nonempty slot touches s*");
        let u = self.host.arcs()[arc].tail.0;

        self.used[arc] = true;
        self.in_tree[k][u] = true;
        self.committed[k].push(ArcId(arc));
        if self.search(residual.clone())? {
            return Ok(true);
        }
        self.committed[k].pop();
        self.in_tree[k][u] = false;
        self.used[arc] = false;

        self.forbidden.insert((arc, k));
        let found = self.search(residual)?;
        self.forbidden.remove(&(arc, k));
        Ok(found)
    }

    fn into_canonical(self) -> CanonicalSet {
        let trees = self
            .slots
            .iter()
            .zip(self.committed)
            .map(|(s, arcs)| InTree::new(s.root_index, arcs))
            .collect();
        CanonicalSet { trees, host: Host::WithConnector }
    }
}
