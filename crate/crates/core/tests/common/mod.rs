#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use intree_cover::cover::Connector;
use intree_cover::graph::{ArcId, Instance, VertexId};
use intree_cover::io::{gen_planted_acyclic, gen_random};

/// Acyclic instances with at most 8 vertices, 14 arcs, 3 roots and demand 3:
/// even seeds are unconstrained, odd seeds are coverable by construction.
pub fn acyclic_suite(count: u64) -> Vec<Instance> {
    (0..count).map(acyclic_case).collect()
}

pub fn acyclic_case(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE ^ seed);
    let n = rng.gen_range(2..=8);
    let d = rng.gen_range(1..=n.min(3));
    let mut m = rng.gen_range(1..=14);
    if seed.is_multiple_of(2) {
        return gen_random(n, m, d, 3, seed, true).unwrap();
    }
    loop {
        if let Ok(inst) = gen_planted_acyclic(n, m, d, 3, seed) {
            return inst;
        }
        m -= 1;
    }
}

/// An arbitrary instance with at most 6 vertices plus a random multiset of
/// parallel copies, keeping `|A| + f(S) + |B| <= 12`.
pub fn connector_case(seed: u64) -> (Instance, Connector) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B ^ seed);
    let n = rng.gen_range(2..=6);
    let d = rng.gen_range(1..=n.min(2));
    let m = rng.gen_range(1..=7);
    let acyclic = rng.gen_bool(0.4);
    let inst = gen_random(n, m, d, 2, seed, acyclic).unwrap();
    let room = 12usize.saturating_sub(inst.arc_count() + inst.total_demand());
    let size = rng.gen_range(0..=room.min(5));
    let origins = (0..size).map(|_| ArcId(rng.gen_range(0..inst.arc_count()))).collect();
    (inst, Connector::new(origins))
}

/// Roots reachable from each vertex, by plain forward search.
pub fn naive_reach(inst: &Instance) -> Vec<Vec<bool>> {
    let n = inst.vertex_count();
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut seen = vec![false; n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for a in inst.arcs().iter().filter(|a| a.tail.0 == u) {
                if !seen[a.head.0] {
                    seen[a.head.0] = true;
                    stack.push(a.head.0);
                }
            }
        }
        out.push(inst.roots().iter().map(|r| seen[r.vertex.0]).collect());
    }
    out
}

/// `f(R_D(heads of arcs))`.
pub fn demand_of_heads(inst: &Instance, arcs: &[ArcId]) -> usize {
    let reach = naive_reach(inst);
    inst.roots()
        .iter()
        .enumerate()
        .filter(|(i, _)| arcs.iter().any(|&a| reach[inst.arc(a).head.0][*i]))
        .map(|(_, r)| r.demand)
        .sum()
}

/// `M = sum_v f(R_D(v))`.
pub fn total_reach_demand(inst: &Instance) -> usize {
    let reach = naive_reach(inst);
    (0..inst.vertex_count())
        .map(|v| inst.roots().iter().enumerate().filter(|(i, _)| reach[v][*i]).map(|(_, r)| r.demand).sum::<usize>())
        .sum()
}

/// `M - (|A| + f(S))`, possibly negative.
pub fn signed_opt(inst: &Instance) -> i64 {
    total_reach_demand(inst) as i64 - (inst.arc_count() + inst.total_demand()) as i64
}

/// Multiset of `(tail, head)` pairs of an arc list.
pub fn shape(inst: &Instance, arcs: &[ArcId]) -> Vec<(VertexId, VertexId)> {
    let mut s: Vec<_> = arcs.iter().map(|&a| (inst.arc(a).tail, inst.arc(a).head)).collect();
    s.sort();
    s
}
