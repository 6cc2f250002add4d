mod common;

use proptest::prelude::*;

use intree_cover::acyclic::{build_gv, max_matching, min_vertex_cover, solve_acyclic, AcyclicError, AcyclicState};
use intree_cover::cover::{
    find_rooted_connector, is_rooted_connector, pack_disjoint_intrees, replace, solve_cover_with, Connector, Engine,
};
use intree_cover::graph::{
    build_plus, build_star, is_proper, reach_profile, topological_order, ArcId, Instance, VertexId,
};
use intree_cover::io::{emit_instance, gen_proper, gen_random, parse_instance};
use intree_cover::matroid::{forest_indep, is_complete, union_indep, uniform_indep, CommonIndependentSet, SlotPartition};
use intree_cover::verify::{
    brute_force_complete_exists, brute_force_feasible, brute_force_wmi, local_arc_connectivity, verify_canonical,
};
use intree_cover::wmi::{WeightFunction, WmiState};

fn small_instance(max_n: usize, max_m: usize, max_d: usize, fmax: usize) -> impl Strategy<Value = Instance> {
    (2..=max_n, 1..=max_m, any::<u64>(), any::<bool>()).prop_flat_map(move |(n, m, seed, acyclic)| {
        (1..=n.min(max_d)).prop_map(move |d| gen_random(n, m, d, fmax, seed, acyclic).unwrap())
    })
}

/// Proper by construction; shrinks the arc count until the generator fits.
fn proper_instance(max_n: usize, max_m: usize, max_d: usize, fmax: usize) -> impl Strategy<Value = Instance> {
    (2..=max_n, 1..=max_m, any::<u64>(), any::<bool>()).prop_flat_map(move |(n, m, seed, acyclic)| {
        (1..=n.min(max_d)).prop_map(move |d| {
            (1..=m)
                .rev()
                .find_map(|m| gen_proper(n, m, d, fmax, seed, acyclic).ok())
                .unwrap_or_else(intree_cover::fixtures::f1)
        })
    })
}

fn subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << len).map(move |mask| (0..len).filter(|i| mask >> i & 1 == 1).collect())
}

fn max_matching_brute(adj: &[Vec<usize>], x: usize, used: &mut Vec<bool>) -> usize {
    if x == adj.len() {
        return 0;
    }
    let mut best = max_matching_brute(adj, x + 1, used);
    for &y in &adj[x] {
        if !used[y] {
            used[y] = true;
            best = best.max(1 + max_matching_brute(adj, x + 1, used));
            used[y] = false;
        }
    }
    best
}

fn assignable(star: &intree_cover::graph::StarGraph, rp: &intree_cover::graph::ReachProfile, arcs: &[ArcId]) -> bool {
    fn go(
        star: &intree_cover::graph::StarGraph,
        rp: &intree_cover::graph::ReachProfile,
        arcs: &[ArcId],
        groups: &mut Vec<Vec<ArcId>>,
    ) -> bool {
        let Some((&a, rest)) = arcs.split_first() else {
            return true;
        };
        for k in 0..groups.len() {
            groups[k].push(a);
            if forest_indep(star, rp, k, &groups[k]) && go(star, rp, rest, groups) {
                return true;
            }
            groups[k].pop();
        }
        false
    }
    go(star, rp, arcs, &mut vec![Vec::new(); star.slots().len()])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn text_round_trip(inst in small_instance(9, 20, 4, 4)) {
        prop_assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn reach_matches_forward_search(inst in small_instance(9, 20, 4, 3)) {
        let rp = reach_profile(&inst);
        let naive = common::naive_reach(&inst);
        for v in inst.vertices() {
            let expected: Vec<usize> = (0..inst.root_count()).filter(|&i| naive[v.0][i]).collect();
            prop_assert_eq!(rp.reach(v), expected.as_slice());
            for i in 0..inst.root_count() {
                prop_assert_eq!(rp.in_basin(i, v), naive[v.0][i]);
            }
        }
        prop_assert_eq!(rp.total(), common::total_reach_demand(&inst));
    }

    #[test]
    fn parallel_copies_keep_reach(seed in any::<u64>()) {
        let (inst, b) = common::connector_case(seed);
        let before = reach_profile(&inst);
        let host = b.apply(&inst);
        let after = reach_profile(&host);
        for v in inst.vertices() {
            prop_assert_eq!(before.reach(v), after.reach(v));
        }
        prop_assert_eq!(before.total(), after.total());
    }

    #[test]
    fn topological_labels_decrease_along_arcs(inst in small_instance(10, 25, 3, 2)) {
        match topological_order(&inst) {
            Ok(t) => {
                for a in inst.arcs() {
                    prop_assert!(t.label(a.tail) > t.label(a.head));
                }
            }
            Err(_) => prop_assert!(matches!(solve_acyclic(&inst), Err(AcyclicError::Cyclic(_)))),
        }
    }

    #[test]
    fn min_cut_witnesses_flow(inst in small_instance(7, 14, 3, 3), s in 0usize..7, t in 0usize..7) {
        let n = inst.vertex_count();
        let (s, t) = (VertexId(s % n), VertexId(t % n));
        prop_assume!(s != t);
        let cut = local_arc_connectivity(&inst, s, t);
        prop_assert!(cut.min_cut.contains(&s));
        prop_assert!(!cut.min_cut.contains(&t));
        let leaving = inst
            .arcs()
            .iter()
            .filter(|a| cut.min_cut.contains(&a.tail) && !cut.min_cut.contains(&a.head))
            .count();
        prop_assert_eq!(leaving, cut.value);
    }

    #[test]
    fn konig_duality(seed in 0u64..10_000) {
        let inst = common::acyclic_case(seed);
        let rp = reach_profile(&inst);
        for v in inst.vertices() {
            let g = build_gv(&inst, &rp, v);
            let m = max_matching(&g);
            let (cl, cr) = min_vertex_cover(&g, &m);
            prop_assert_eq!(cl.len() + cr.len(), m.size());
            for (x, ys) in g.adj.iter().enumerate() {
                for y in ys {
                    prop_assert!(cl.contains(&x) || cr.contains(y));
                }
            }
            if g.left.len() <= 8 {
                let brute = max_matching_brute(&g.adj, 0, &mut vec![false; g.right.len()]);
                prop_assert_eq!(m.size(), brute);
            }
        }
    }

    #[test]
    fn bipartite_side_totals(seed in 0u64..10_000) {
        let inst = common::acyclic_case(seed);
        let rp = reach_profile(&inst);
        let (mut left, mut right) = (0, 0);
        for v in inst.vertices() {
            let g = build_gv(&inst, &rp, v);
            prop_assert_eq!(g.left.len(), inst.out_degree(v));
            prop_assert_eq!(g.right.len(), rp.demand_reach(v));
            left += g.left.len();
            right += g.right.len();
        }
        prop_assert_eq!(left, inst.arc_count());
        prop_assert_eq!(right, rp.total());
    }

    #[test]
    fn hall_witness_is_genuine(seed in 0u64..10_000) {
        let inst = common::acyclic_case(seed);
        if let Err(AcyclicError::Hall(h)) = solve_acyclic(&inst) {
            prop_assert!(h.arcs.iter().all(|&a| inst.arc(a).tail == h.vertex));
            prop_assert!(h.arcs.len() > common::demand_of_heads(&inst, &h.arcs));
            prop_assert_eq!(h.capacity, common::demand_of_heads(&inst, &h.arcs));
        }
    }

    #[test]
    fn acyclic_prefixes_stay_covered(seed in 0u64..10_000) {
        let inst = common::acyclic_case(seed);
        let rp = reach_profile(&inst);
        if !is_proper(&inst, &rp) {
            return Ok(());
        }
        let mut state = AcyclicState::new(&inst, &rp).unwrap();
        while let Ok(Some(_)) = state.step() {
            if let Some((sub, cs)) = state.prefix_view() {
                let report = verify_canonical(&sub, &cs, true, false);
                prop_assert!(report.is_valid(), "{:?}", report.violations);
            }
        }
    }

    #[test]
    fn solutions_are_verified_and_agree(inst in small_instance(6, 10, 2, 2), engine in prop_oneof![Just(Engine::Auto), Just(Engine::General)]) {
        let out = solve_cover_with(&inst, engine).unwrap();
        if let Some(sol) = out.solution() {
            prop_assert!(verify_canonical(&inst, &sol.canonical, true, false).is_valid());
            for (i, r) in inst.roots().iter().enumerate() {
                prop_assert_eq!(sol.canonical.trees_of(i).count(), r.demand);
            }
        }
        if let Ok(verdict) = brute_force_feasible(&inst) {
            prop_assert_eq!(out.is_solved(), verdict.is_feasible());
        }
    }

    #[test]
    fn connectors_respect_lower_bound(seed in any::<u64>()) {
        let (inst, b) = common::connector_case(seed);
        let rp = reach_profile(&inst);
        if is_proper(&inst, &rp) && is_rooted_connector(&inst, &rp, &b).is_ok() {
            prop_assert!(b.size() as i64 >= common::signed_opt(&inst));
        }
    }

    #[test]
    fn solving_matches_optimal_connector(inst in proper_instance(7, 12, 3, 2)) {
        let rp = reach_profile(&inst);
        prop_assert!(is_proper(&inst, &rp));
        let solved = solve_cover_with(&inst, Engine::General).unwrap().is_solved();
        let connector = find_rooted_connector(&inst, &rp);
        if let Ok(c) = &connector {
            prop_assert_eq!(c.connector.size() as i64, common::signed_opt(&inst));
        }
        let coverable = intree_cover::graph::coverable_check(&inst, &rp).is_ok();
        prop_assert_eq!(solved, connector.is_ok() && coverable);
    }

    #[test]
    fn replace_keeps_shapes(inst in proper_instance(6, 10, 2, 2)) {
        let rp = reach_profile(&inst);
        prop_assert!(is_proper(&inst, &rp));
        let Ok(sol) = find_rooted_connector(&inst, &rp) else { return Ok(()) };
        let packed = pack_disjoint_intrees(&sol.host, &rp, &sol.cis).unwrap();
        let back = replace(&inst, &sol.host, &packed);
        prop_assert_eq!(back.trees.len(), packed.trees.len());
        for (t, u) in packed.trees.iter().zip(&back.trees) {
            prop_assert_eq!(t.root_index, u.root_index);
            prop_assert_eq!(common::shape(&sol.host, &t.arcs), common::shape(&inst, &u.arcs));
        }
        prop_assert!(verify_canonical(&inst, &back, true, false).is_valid());
    }

    #[test]
    fn empty_connector_criterion(inst in small_instance(7, 8, 2, 2)) {
        let rp = reach_profile(&inst);
        let star = build_star(&inst);
        let Ok(found) = brute_force_complete_exists(&star, &rp) else { return Ok(()) };
        let lambda_ok = is_rooted_connector(&inst, &rp, &Connector::empty()).is_ok();
        prop_assert_eq!(lambda_ok, found.is_some());
    }

    #[test]
    fn complete_sets_stay_complete_with_copies(inst in proper_instance(6, 7, 2, 2)) {
        let rp = reach_profile(&inst);
        prop_assert!(is_proper(&inst, &rp));
        let star = build_star(&inst);
        let Ok(Some(partition)) = brute_force_complete_exists(&star, &rp) else { return Ok(()) };
        let plus = build_plus(&inst, &rp).unwrap();
        let m = inst.arc_count();
        let mapped = SlotPartition::from_pairs(partition.iter().map(|(a, k)| {
            (if a.0 < m { a } else { plus.star.root_arc(a.0 - m) }, k)
        }));
        let cis = CommonIndependentSet::from_partition(&plus.star, &rp, mapped);
        prop_assert!(is_complete(&plus.star, &rp, &cis));
    }

    #[test]
    fn union_oracle_matches_exhaustive_assignment(inst in small_instance(5, 6, 2, 2), mask in any::<u32>()) {
        let rp = reach_profile(&inst);
        let star = build_star(&inst);
        prop_assume!(star.slots().len() <= 4);
        let arcs: Vec<ArcId> = (0..star.arc_count()).filter(|i| mask >> i & 1 == 1).map(ArcId).take(7).collect();
        let fast = union_indep(&star, &rp, &arcs);
        prop_assert_eq!(fast.is_ok(), assignable(&star, &rp, &arcs));
        if let Ok(p) = fast {
            for k in 0..star.slots().len() {
                prop_assert!(forest_indep(&star, &rp, k, &p.arcs_in(k)));
            }
        }
    }

    #[test]
    fn matroid_axioms(inst in small_instance(4, 5, 2, 2)) {
        let rp = reach_profile(&inst);
        let star = build_star(&inst);
        prop_assume!(star.arc_count() <= 8);
        let len = star.arc_count();
        let oracles: [&dyn Fn(&[ArcId]) -> bool; 2] = [
            &|s: &[ArcId]| union_indep(&star, &rp, s).is_ok(),
            &|s: &[ArcId]| uniform_indep(&star, &rp, s),
        ];
        for oracle in oracles {
            let indep: Vec<Vec<ArcId>> = subsets(len)
                .map(|s| s.into_iter().map(ArcId).collect::<Vec<_>>())
                .filter(|s| oracle(s))
                .collect();
            prop_assert!(oracle(&[]));
            for i in &indep {
                for skip in 0..i.len() {
                    let mut smaller = i.clone();
                    smaller.remove(skip);
                    prop_assert!(oracle(&smaller));
                }
            }
            for i in &indep {
                for j in indep.iter().filter(|j| j.len() == i.len() + 1) {
                    let ok = j.iter().filter(|e| !i.contains(e)).any(|&e| {
                        let mut grown = i.clone();
                        grown.push(e);
                        grown.sort();
                        oracle(&grown)
                    });
                    prop_assert!(ok, "exchange fails for {:?} and {:?}", i, j);
                }
            }
        }
    }

    #[test]
    fn augmentations_stay_minimum_weight(inst in small_instance(5, 6, 2, 2), weights in prop::collection::vec(0i64..4, 14)) {
        let rp = reach_profile(&inst);
        let star = build_star(&inst);
        prop_assume!(star.arc_count() <= 12);
        let w = WeightFunction::from_values(weights[..star.arc_count()].to_vec());
        let mut state = WmiState::new(&star, &rp, &w);
        loop {
            let k = state.cardinality();
            prop_assert_eq!(brute_force_wmi(&star, &rp, &w, k).unwrap(), Some(state.weight()));
            if state.augment().is_err() {
                prop_assert_eq!(brute_force_wmi(&star, &rp, &w, k + 1).unwrap(), None);
                break;
            }
        }
    }
}
