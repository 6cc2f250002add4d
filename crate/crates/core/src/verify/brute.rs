//! Exhaustive oracles. Each one refuses inputs past an explicit size guard
//! instead of truncating its search.

use std::collections::HashSet;

use thiserror::Error;

use super::check::reaches_root;
use crate::canonical::{CanonicalSet, Host, InTree};
use crate::cover::{is_rooted_connector, Connector};
use crate::graph::{ArcId, Instance, ReachProfile, StarGraph, VertexId};
use crate::matroid::SlotPartition;
use crate::wmi::WeightFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{what}: search size {size} exceeds the guard {limit}")]
pub struct TooLarge {
    pub what: &'static str,
    pub size: u128,
    pub limit: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteVerdict {
    Feasible(CanonicalSet),
    Infeasible,
}

impl BruteVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, BruteVerdict::Feasible(_))
    }
}

const TREE_ENUMERATION_LIMIT: u128 = 10_000_000;

/// Enumerates, per root, every in-tree spanning the vertices that reach it,
/// then searches for `f(s_i)` trees per root whose union is every arc.
pub fn brute_force_feasible(inst: &Instance) -> Result<BruteVerdict, TooLarge> {
    let m = inst.arc_count();
    if m > 128 {
        return Err(TooLarge { what: "arc count", size: m as u128, limit: 128 });
    }
    let n = inst.vertex_count();
    let reach = reaches_root(inst);
    let d = inst.root_count();

    // Candidate choices per (root, vertex).
    let mut choices: Vec<Vec<(usize, Vec<ArcId>)>> = Vec::with_capacity(d);
    let mut total: u128 = 0;
    for (i, root) in inst.roots().iter().enumerate() {
        let mut per_vertex = Vec::new();
        let mut product: u128 = 1;
        if root.demand > 0 {
            for v in 0..n {
                if v == root.vertex.0 || !reach[v][i] {
                    continue;
                }
                let opts: Vec<ArcId> = inst
                    .out_arcs(VertexId(v))
                    .iter()
                    .copied()
                    .filter(|&a| reach[inst.arc(a).head.0][i])
                    .collect();
                product = product.saturating_mul(opts.len() as u128);
                per_vertex.push((v, opts));
            }
            total = total.saturating_add(product);
        }
        choices.push(per_vertex);
    }
    if total > TREE_ENUMERATION_LIMIT {
        return Err(TooLarge { what: "in-tree enumeration", size: total, limit: TREE_ENUMERATION_LIMIT });
    }

    let mut pools: Vec<Vec<u128>> = vec![Vec::new(); d];
    for (i, root) in inst.roots().iter().enumerate() {
        if root.demand == 0 {
            continue;
        }
        let per_vertex = &choices[i];
        let mut pick = vec![0usize; per_vertex.len()];
        let mut next = vec![usize::MAX; n];
        'odometer: loop {
            for (slot, (v, opts)) in per_vertex.iter().enumerate() {
                next[*v] = inst.arc(opts[pick[slot]]).head.0;
            }
            let acyclic = per_vertex.iter().all(|&(v, _)| {
                let mut u = v;
                let mut steps = 0;
                while u != root.vertex.0 && steps <= n {
                    u = next[u];
                    steps += 1;
                }
                u == root.vertex.0
            });
            if acyclic {
                let mut mask = 0u128;
                for (slot, (_, opts)) in per_vertex.iter().enumerate() {
                    mask |= 1u128 << opts[pick[slot]].0;
                }
                pools[i].push(mask);
            }
            for slot in 0..per_vertex.len() {
                pick[slot] += 1;
                if pick[slot] < per_vertex[slot].1.len() {
                    continue 'odometer;
                }
                pick[slot] = 0;
            }
            break;
        }
    }

    let full: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    let budget: Vec<usize> = inst.roots().iter().map(|r| r.demand).collect();
    let mut search = CoverSearch { inst, reach: &reach, pools: &pools, full, failed: HashSet::new() };
    let mut chosen = Vec::new();
    if !search.run(0, budget.clone(), &mut chosen) {
        return Ok(BruteVerdict::Infeasible);
    }
    let mut trees = Vec::new();
    for (i, &f) in budget.iter().enumerate() {
        let mut own: Vec<u128> = chosen.iter().filter(|(r, _)| *r == i).map(|&(_, t)| t).collect();
        while own.len() < f {
            own.push(pools[i][0]);
        }
        for mask in own {
            let arcs = (0..m).filter(|&a| mask >> a & 1 == 1).map(ArcId).collect();
            trees.push(InTree::new(i, arcs));
        }
    }
    Ok(BruteVerdict::Feasible(CanonicalSet { trees, host: Host::Original }))
}

struct CoverSearch<'a> {
    inst: &'a Instance,
    reach: &'a [Vec<bool>],
    pools: &'a [Vec<u128>],
    full: u128,
    failed: HashSet<(u128, Vec<usize>)>,
}

impl CoverSearch<'_> {
    fn run(&mut self, covered: u128, budget: Vec<usize>, chosen: &mut Vec<(usize, u128)>) -> bool {
        if covered == self.full {
            return true;
        }
        if self.failed.contains(&(covered, budget.clone())) {
            return false;
        }
        // Each tree covers at most one out-arc per non-root vertex.
        for v in self.inst.vertices() {
            let open = self.inst.out_arcs(v).iter().filter(|a| covered >> a.0 & 1 == 0).count();
            if open == 0 {
                continue;
            }
            let slots: usize = (0..budget.len())
                .filter(|&i| self.reach[v.0][i] && self.inst.roots()[i].vertex != v)
                .map(|i| budget[i])
                .sum();
            if open > slots {
                self.failed.insert((covered, budget));
                return false;
            }
        }
        let e = (!covered & self.full).trailing_zeros() as u128;
        for i in 0..budget.len() {
            if budget[i] == 0 {
                continue;
            }
            for &tree in &self.pools[i] {
                if tree >> e & 1 == 0 {
                    continue;
                }
                let mut next = budget.clone();
                next[i] -= 1;
                chosen.push((i, tree));
                if self.run(covered | tree, next, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        self.failed.insert((covered, budget));
        false
    }
}

/// Exhaustive slot assignment: can `arcs` be split into per-slot forests,
/// slot `k` taking at most `cap[k]` arcs? Slots with identical vertex sets are
/// treated as interchangeable while empty.
fn exhaustive_partition(
    node_count: usize,
    ends: &[(usize, usize)],
    allowed: &[Vec<bool>],
    cap: &[usize],
) -> Option<Vec<usize>> {
    let slots = allowed.len();
    let mut label: Vec<Vec<usize>> = vec![(0..node_count).collect(); slots];
    let mut used = vec![0usize; slots];
    let mut assign = vec![usize::MAX; ends.len()];
    fn go(
        idx: usize,
        ends: &[(usize, usize)],
        allowed: &[Vec<bool>],
        cap: &[usize],
        label: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        assign: &mut Vec<usize>,
    ) -> bool {
        if idx == ends.len() {
            return true;
        }
        let (u, v) = ends[idx];
        for k in 0..allowed.len() {
            if used[k] >= cap[k] || !allowed[k][u] || !allowed[k][v] || label[k][u] == label[k][v] {
                continue;
            }
            if used[k] == 0 && (0..k).any(|j| used[j] == 0 && allowed[j] == allowed[k] && cap[j] == cap[k]) {
                continue;
            }
            let saved = label[k].clone();
            let (from, to) = (label[k][v], label[k][u]);
            for l in label[k].iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
            used[k] += 1;
            assign[idx] = k;
            if go(idx + 1, ends, allowed, cap, label, used, assign) {
                return true;
            }
            used[k] -= 1;
            label[k] = saved;
        }
        false
    }
    go(0, ends, allowed, cap, &mut label, &mut used, &mut assign).then_some(assign)
}

fn slot_vertex_sets(star: &StarGraph, rp: &ReachProfile) -> Vec<Vec<bool>> {
    (0..star.slots().len())
        .map(|k| (0..star.node_count()).map(|v| star.slot_allows(rp, k, VertexId(v))).collect())
        .collect()
}

fn both_oracles(star: &StarGraph, rp: &ReachProfile, arcs: &[ArcId], cap: &[usize]) -> Option<Vec<usize>> {
    let mut load = vec![0usize; star.node_count()];
    for &a in arcs {
        let t = star.arc(a).tail;
        if t == star.star_vertex() {
            return None;
        }
        load[t.0] += 1;
        if load[t.0] > rp.demand_reach(t) {
            return None;
        }
    }
    let ends: Vec<(usize, usize)> = arcs.iter().map(|&a| (star.arc(a).tail.0, star.arc(a).head.0)).collect();
    exhaustive_partition(star.node_count(), &ends, &slot_vertex_sets(star, rp), cap)
}

const WMI_ARC_LIMIT: usize = 14;

/// Minimum weight over all `k`-subsets accepted by both matroids, `None` if
/// there is no such subset.
pub fn brute_force_wmi(
    star: &StarGraph,
    rp: &ReachProfile,
    w: &WeightFunction,
    k: usize,
) -> Result<Option<i64>, TooLarge> {
    let m = star.arc_count();
    if m > WMI_ARC_LIMIT {
        return Err(TooLarge { what: "star arc count", size: m as u128, limit: WMI_ARC_LIMIT as u128 });
    }
    let cap = vec![usize::MAX; star.slots().len()];
    let mut best: Option<i64> = None;
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let arcs: Vec<ArcId> = (0..m).filter(|&a| mask >> a & 1 == 1).map(ArcId).collect();
        let weight = w.total(&arcs);
        if best.is_some_and(|b| weight >= b) {
            continue;
        }
        if both_oracles(star, rp, &arcs, &cap).is_some() {
            best = Some(weight);
        }
    }
    Ok(best)
}

const BASE_ENUMERATION_LIMIT: u128 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Searches every base of `U(D*)` for one that splits into per-slot spanning
/// trees, i.e. a complete intersection.
pub fn brute_force_complete_exists(
    star: &StarGraph,
    rp: &ReachProfile,
) -> Result<Option<SlotPartition>, TooLarge> {
    let inst = star.base();
    let mut per_vertex: Vec<(Vec<ArcId>, usize)> = Vec::new();
    let mut count: u128 = 1;
    for v in inst.vertices() {
        let outs: Vec<ArcId> = star.arcs().iter().filter(|a| a.tail == v).map(|a| a.id).collect();
        let need = rp.demand_reach(v);
        if need > outs.len() {
            return Ok(None);
        }
        count = count.saturating_mul(binomial(outs.len(), need));
        per_vertex.push((outs, need));
    }
    if count > BASE_ENUMERATION_LIMIT {
        return Err(TooLarge { what: "uniform bases", size: count, limit: BASE_ENUMERATION_LIMIT });
    }
    let cap: Vec<usize> = star.slots().iter().map(|s| rp.basin(s.root_index).len()).collect();
    let mut picks: Vec<Vec<Vec<ArcId>>> = Vec::new();
    for (outs, need) in &per_vertex {
        picks.push(combinations(outs, *need));
    }
    let mut idx = vec![0usize; picks.len()];
    loop {
        let arcs: Vec<ArcId> = idx.iter().enumerate().flat_map(|(v, &j)| picks[v][j].iter().copied()).collect();
        if let Some(assign) = both_oracles(star, rp, &arcs, &cap) {
            return Ok(Some(SlotPartition::from_pairs(arcs.into_iter().zip(assign))));
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return Ok(None);
            }
            idx[v] += 1;
            if idx[v] < picks[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn combinations(items: &[ArcId], k: usize) -> Vec<Vec<ArcId>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[ArcId], start: usize, k: usize, cur: &mut Vec<ArcId>, out: &mut Vec<Vec<ArcId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, k, &mut cur, &mut out);
    out
}

const CONNECTOR_LIMIT: u128 = 1_000_000;

/// Smallest rooted connector of size at most `max_size`, by enumeration of
/// multisets of copies in increasing size.
pub fn brute_force_connector(
    inst: &Instance,
    rp: &ReachProfile,
    max_size: usize,
) -> Result<Option<usize>, TooLarge> {
    brute_force_connector_with_limit(inst, rp, max_size, CONNECTOR_LIMIT)
}

/// [`brute_force_connector`] with a caller-chosen cap on examined multisets.
///
/// Multisets that leave some vertex with fewer than `f(R_D(v))` star out-arcs
/// fail the single-vertex cut and are skipped without a flow computation.
pub fn brute_force_connector_with_limit(
    inst: &Instance,
    rp: &ReachProfile,
    max_size: usize,
    limit: u128,
) -> Result<Option<usize>, TooLarge> {
    let n = inst.vertex_count();
    let deficit: Vec<usize> = inst
        .vertices()
        .map(|v| rp.demand_reach(v).saturating_sub(inst.out_degree(v) + inst.demand_at(v)))
        .collect();
    // Arcs grouped by tail so per-vertex deficits can be settled in order.
    let mut by_tail: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    for a in inst.arcs() {
        by_tail[a.tail.0].push(a.id);
    }
    let tails: Vec<usize> = (0..n).filter(|&v| !by_tail[v].is_empty() || deficit[v] > 0).collect();
    let mut examined: u128 = 0;
    for size in 0..=max_size {
        let need: usize = deficit.iter().sum();
        if need > size {
            continue;
        }
        let mut found = false;
        let mut picked: Vec<ArcId> = Vec::new();
        let mut ctx = ConnectorEnum {
            inst,
            rp,
            by_tail: &by_tail,
            tails: &tails,
            deficit: &deficit,
            examined: &mut examined,
            limit,
            found: &mut found,
        };
        ctx.distribute(0, size, &mut picked)?;
        if found {
            return Ok(Some(size));
        }
    }
    Ok(None)
}

struct ConnectorEnum<'a> {
    inst: &'a Instance,
    rp: &'a ReachProfile,
    by_tail: &'a [Vec<ArcId>],
    tails: &'a [usize],
    deficit: &'a [usize],
    examined: &'a mut u128,
    limit: u128,
    found: &'a mut bool,
}

impl ConnectorEnum<'_> {
    fn distribute(&mut self, t: usize, left: usize, picked: &mut Vec<ArcId>) -> Result<(), TooLarge> {
        if *self.found {
            return Ok(());
        }
        if t == self.tails.len() {
            if left > 0 {
                return Ok(());
            }
            *self.examined += 1;
            if *self.examined > self.limit {
                return Err(TooLarge { what: "connector multisets", size: *self.examined, limit: self.limit });
            }
            let b = Connector::new(picked.clone());
            if is_rooted_connector(self.inst, self.rp, &b).is_ok() {
                *self.found = true;
            }
            return Ok(());
        }
        let v = self.tails[t];
        let rest_need: usize = self.tails[t + 1..].iter().map(|&u| self.deficit[u]).sum();
        if rest_need > left {
            return Ok(());
        }
        let arcs = &self.by_tail[v];
        if arcs.is_empty() {
            // A deficit here cannot be met by copies.
            return if self.deficit[v] > 0 { Ok(()) } else { self.distribute(t + 1, left, picked) };
        }
        for here in self.deficit[v]..=left - rest_need {
            let mark = picked.len();
            self.multisets(arcs, 0, here, t, left - here, picked)?;
            picked.truncate(mark);
        }
        Ok(())
    }

    fn multisets(
        &mut self,
        arcs: &[ArcId],
        from: usize,
        count: usize,
        t: usize,
        left_after: usize,
        picked: &mut Vec<ArcId>,
    ) -> Result<(), TooLarge> {
        if count == 0 {
            return self.distribute(t + 1, left_after, picked);
        }
        for j in from..arcs.len() {
            picked.push(arcs[j]);
            self.multisets(arcs, j, count - 1, t, left_after, picked)?;
            picked.pop();
            if *self.found {
                break;
            }
        }
        Ok(())
    }
}
