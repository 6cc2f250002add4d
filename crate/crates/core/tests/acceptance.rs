//! Acceptance gate. Run with `cargo test --test acceptance`; prints one line per
//! criterion and exits non-zero if any fails.

mod common;

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use intree_cover::acyclic::{hall_check, solve_acyclic, AcyclicError};
use intree_cover::cover::{
    find_rooted_connector, is_rooted_connector, pack_disjoint_intrees, solve_cover_with, Engine, Infeasible,
};
use intree_cover::fixtures;
use intree_cover::graph::{build_plus, build_star, opt_d, reach_profile, ArcId, Instance, VertexId};
use intree_cover::io::{emit_instance, gen_planted_acyclic, gen_proper, gen_random};
use intree_cover::matroid::CommonIndependentSet;
use intree_cover::verify::{
    brute_force_complete_exists, brute_force_connector_with_limit, brute_force_feasible, brute_force_wmi,
    verify_canonical, BruteVerdict,
};
use intree_cover::wmi::{wmi_solve, WeightFunction};

const ACYCLIC_SUITE: u64 = 500;
const ACYCLIC_BUDGET: Duration = Duration::from_secs(60);
const CONNECTOR_SUITE: u64 = 200;
const WMI_STARS: u64 = 100;
const WMI_MAX_ARCS: usize = 12;
const CONNECTOR_GUARD: u128 = 20_000;
const DETERMINISM_CASES: u64 = 30;
const GENERAL_RUNS: u64 = 10;
const GENERAL_BUDGET: Duration = Duration::from_secs(10);
const ACYCLIC_RUNS: u64 = 10;
const ACYCLIC_RUN_BUDGET: Duration = Duration::from_secs(5);

type Verdict = Result<String, String>;

fn criterion_1() -> Verdict {
    for (name, inst) in fixtures::all() {
        let rp = reach_profile(&inst);
        for engine in [Engine::Auto, Engine::General] {
            let out = solve_cover_with(&inst, engine).map_err(|e| format!("{name}: {e}"))?;
            match name {
                "F3" => match out.reason() {
                    Some(Infeasible::NotProper(p)) if p.vertex == VertexId(0) => {}
                    other => return Err(format!("F3 via {engine}: expected NotProper(a), got {other:?}")),
                },
                "F4" => {
                    let expected = match engine {
                        Engine::General => matches!(out.reason(), Some(Infeasible::NoConnector { .. })),
                        _ => matches!(out.reason(), Some(Infeasible::HallViolation(h))
                            if h.vertex == VertexId(0) && h.arcs == vec![ArcId(0), ArcId(1)]),
                    };
                    if !expected {
                        return Err(format!("F4 via {engine}: unexpected {:?}", out.reason()));
                    }
                }
                _ => {
                    let sol = out.solution().ok_or(format!("{name} via {engine}: not solved"))?;
                    if !verify_canonical(&inst, &sol.canonical, true, false).is_valid() {
                        return Err(format!("{name} via {engine}: solution fails verification"));
                    }
                }
            }
        }
        if name == "F4" {
            let v = hall_check(&inst, &rp).err().ok_or("F4: hall_check passed")?;
            if v.arcs != vec![ArcId(0), ArcId(1)] || v.vertex != VertexId(0) {
                return Err(format!("F4: wrong witness {v:?}"));
            }
            if brute_force_complete_exists(&build_star(&inst), &rp).map_err(|e| e.to_string())?.is_some() {
                return Err("F4: a complete intersection exists".into());
            }
        }
    }
    Ok("F1 F2 F5 F6 solved and verified; F3 NotProper(a); F4 Hall {e0,e1} at v, no complete intersection".into())
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut feasible = 0;
    for seed in 0..ACYCLIC_SUITE {
        let inst = common::acyclic_case(seed);
        let rp = reach_profile(&inst);
        let acyclic = solve_acyclic(&inst);
        let hall = hall_check(&inst, &rp).is_ok();
        let general = solve_cover_with(&inst, Engine::General).map_err(|e| format!("seed {seed}: {e}"))?;
        let brute = brute_force_feasible(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let votes = [acyclic.is_ok(), hall, general.is_solved(), brute.is_feasible()];
        if votes.iter().any(|&v| v != votes[0]) {
            return Err(format!("seed {seed}: acyclic/hall/general/brute = {votes:?}\n{}", emit_instance(&inst)));
        }
        if let Ok(cs) = &acyclic {
            feasible += 1;
            if !verify_canonical(&inst, cs, true, false).is_valid() {
                return Err(format!("seed {seed}: acyclic output fails verification"));
            }
            let g = general.solution().expect("agreed feasible");
            if !verify_canonical(&inst, &g.canonical, true, false).is_valid() {
                return Err(format!("seed {seed}: general output fails verification"));
            }
            if let BruteVerdict::Feasible(b) = &brute {
                if !verify_canonical(&inst, b, true, false).is_valid() {
                    return Err(format!("seed {seed}: brute-force witness fails verification"));
                }
            }
        } else if let Err(AcyclicError::Cyclic(_)) = acyclic {
            return Err(format!("seed {seed}: generator produced a cycle"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= ACYCLIC_BUDGET {
        return Err(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), ACYCLIC_BUDGET.as_secs()));
    }
    Ok(format!(
        "{ACYCLIC_SUITE} instances ({feasible} coverable) agree 4 ways in {:.2} s (< {} s)",
        elapsed.as_secs_f64(),
        ACYCLIC_BUDGET.as_secs()
    ))
}

fn criterion_3() -> Verdict {
    let mut connectors = 0;
    for seed in 0..CONNECTOR_SUITE {
        let (inst, b) = common::connector_case(seed);
        let rp = reach_profile(&inst);
        let lambda = is_rooted_connector(&inst, &rp, &b).is_ok();
        let host = b.apply(&inst);
        let star = build_star(&host);
        let brute = brute_force_complete_exists(&star, &rp).map_err(|e| format!("seed {seed}: {e}"))?;
        let ours = wmi_solve(&star, &rp, &WeightFunction::zero(&star), rp.total()).ok().filter(|c| c.complete);
        let packed = match &ours {
            Some(cis) => {
                let cs = pack_disjoint_intrees(&host, &rp, cis).map_err(|e| format!("seed {seed}: {e}"))?;
                if !verify_canonical(&host, &cs, false, true).is_valid() {
                    return Err(format!("seed {seed}: packing fails verification"));
                }
                if let Some(p) = &brute {
                    let cis = CommonIndependentSet::from_partition(&star, &rp, p.clone());
                    let cs = pack_disjoint_intrees(&host, &rp, &cis).map_err(|e| format!("seed {seed}: {e}"))?;
                    if !verify_canonical(&host, &cs, false, true).is_valid() {
                        return Err(format!("seed {seed}: packing of brute intersection fails verification"));
                    }
                }
                true
            }
            None => false,
        };
        if lambda != brute.is_some() || lambda != packed {
            return Err(format!(
                "seed {seed}: lambda {lambda}, exhaustive {}, packed {packed}\n{}B = {:?}",
                brute.is_some(),
                emit_instance(&inst),
                b.origins()
            ));
        }
        connectors += lambda as usize;
    }
    Ok(format!("{CONNECTOR_SUITE} (D, B) pairs ({connectors} connectors) agree 3 ways"))
}

fn criterion_4() -> Verdict {
    let mut stars = 0;
    let mut complete_checked = 0;
    let mut seed = 0u64;
    while stars < WMI_STARS {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plus_graph = seed.is_multiple_of(2);
        let (star, rp, w, opt) = if plus_graph {
            let n = rng.gen_range(2..=4);
            let Ok(inst) = gen_proper(n, rng.gen_range(1..=4), 1, 2, seed, rng.gen_bool(0.5)) else {
                continue;
            };
            let rp = reach_profile(&inst);
            let plus = build_plus(&inst, &rp).expect("proper by construction");
            if plus.star.arc_count() > WMI_MAX_ARCS {
                continue;
            }
            let w = WeightFunction::copy_indicator(&plus.star);
            (plus.star, rp, w, Some(plus.copies_per_arc))
        } else {
            let n = rng.gen_range(2..=5);
            let d = rng.gen_range(1..=n.min(2));
            let inst = gen_random(n, rng.gen_range(1..=8), d, 2, seed, rng.gen_bool(0.5)).unwrap();
            let star = build_star(&inst);
            if star.arc_count() > WMI_MAX_ARCS {
                continue;
            }
            let w = WeightFunction::from_values((0..star.arc_count()).map(|_| rng.gen_range(0..=3)).collect());
            (star, reach_profile(&inst), w, None)
        };
        stars += 1;
        for k in 0..=star.arc_count() {
            let brute = brute_force_wmi(&star, &rp, &w, k).map_err(|e| e.to_string())?;
            let ours = wmi_solve(&star, &rp, &w, k).ok();
            let weight = ours.as_ref().map(|c| w.total(&c.arcs));
            if weight != brute {
                return Err(format!("seed {seed}, k = {k}: wmi {weight:?}, brute force {brute:?}"));
            }
            if let (Some(cis), Some(opt)) = (&ours, opt) {
                if cis.complete {
                    complete_checked += 1;
                    let wi = w.total(&cis.arcs);
                    let has_star = star.arcs().iter().filter(|a| a.kind != intree_cover::graph::ArcKind::Copy).all(|a| cis.arcs.contains(&a.id));
                    if wi < opt as i64 || (wi == opt as i64) != has_star {
                        return Err(format!("seed {seed}: complete output of weight {wi} vs opt {opt}, A* inside: {has_star}"));
                    }
                }
            }
        }
    }
    Ok(format!("{WMI_STARS} star graphs, all k match brute force; {complete_checked} complete outputs satisfy the weight bound"))
}

fn criterion_5() -> Verdict {
    let mut compared = 0;
    let mut skipped = 0;
    let mut accepted = 0;
    let mut instances: Vec<Instance> = (0..ACYCLIC_SUITE).map(common::acyclic_case).collect();
    for seed in 0..CONNECTOR_SUITE {
        let (inst, b) = common::connector_case(seed);
        let rp = reach_profile(&inst);
        if is_rooted_connector(&inst, &rp, &b).is_ok() {
            accepted += 1;
            if (b.size() as i64) < common::signed_opt(&inst) {
                return Err(format!("seed {seed}: accepted connector of size {} below opt", b.size()));
            }
        }
        instances.push(inst);
    }
    for (idx, inst) in instances.iter().enumerate() {
        let rp = reach_profile(inst);
        let Ok(opt) = opt_d(inst, &rp) else { continue };
        let Ok(sol) = find_rooted_connector(inst, &rp) else { continue };
        if sol.connector.size() != opt {
            return Err(format!("instance {idx}: connector size {} != opt {opt}", sol.connector.size()));
        }
        if is_rooted_connector(inst, &rp, &sol.connector).is_err() {
            return Err(format!("instance {idx}: returned connector fails the lambda test"));
        }
        match brute_force_connector_with_limit(inst, &rp, opt, CONNECTOR_GUARD) {
            Ok(Some(min)) if min == opt => compared += 1,
            Ok(other) => return Err(format!("instance {idx}: brute-force minimum {other:?}, opt {opt}")),
            Err(_) => skipped += 1,
        }
    }
    Ok(format!(
        "connector = opt_D = brute-force minimum on {compared} feasible instances ({skipped} over the guard); \
         {accepted} random connectors respect the lower bound"
    ))
}

fn criterion_6() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_cover");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for seed in 0..DETERMINISM_CASES {
        let cases = [common::acyclic_case(seed), common::connector_case(seed).0];
        for (j, inst) in cases.iter().enumerate() {
            let path = dir.path().join(format!("case-{seed}-{j}.txt"));
            fs::write(&path, emit_instance(inst)).map_err(|e| e.to_string())?;
            for engine in ["auto", "general"] {
                let run = || {
                    Command::new(bin)
                        .args(["solve", "--engine", engine])
                        .arg(&path)
                        .output()
                        .map_err(|e| e.to_string())
                };
                let (a, b) = (run()?, run()?);
                if !matches!(a.status.code(), Some(0 | 2)) {
                    return Err(format!("seed {seed}: exit {:?}", a.status.code()));
                }
                if a.stdout != b.stdout || a.status.code() != b.status.code() {
                    return Err(format!("seed {seed} case {j} ({engine}): outputs differ"));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} instance/engine pairs give byte-identical documents over two runs"))
}

fn criterion_7() -> Verdict {
    let mut worst_general = Duration::ZERO;
    let mut worst_acyclic = Duration::ZERO;
    let mut solved = 0;
    for seed in 0..GENERAL_RUNS {
        let inst = gen_proper(10, 20, 4, 1, seed, false).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = solve_cover_with(&inst, Engine::General).map_err(|e| format!("seed {seed}: {e}"))?;
        let t = start.elapsed();
        solved += out.is_solved() as usize;
        worst_general = worst_general.max(t);
        if t >= GENERAL_BUDGET {
            return Err(format!("general seed {seed}: {:.2} s", t.as_secs_f64()));
        }
    }
    for seed in 0..ACYCLIC_RUNS {
        let inst = gen_planted_acyclic(200, 600, 5, 4, seed).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = solve_cover_with(&inst, Engine::Acyclic).map_err(|e| format!("seed {seed}: {e}"))?;
        let t = start.elapsed();
        if !out.is_solved() {
            return Err(format!("planted seed {seed} reported infeasible"));
        }
        worst_acyclic = worst_acyclic.max(t);
        if t >= ACYCLIC_RUN_BUDGET {
            return Err(format!("acyclic seed {seed}: {:.2} s", t.as_secs_f64()));
        }
    }
    Ok(format!(
        "general 10/20/f(S)=4: worst {:.3} s over {GENERAL_RUNS} ({solved} coverable, < {} s); \
         acyclic 200/600/f(S)<=20: worst {:.3} s over {ACYCLIC_RUNS} (< {} s)",
        worst_general.as_secs_f64(),
        GENERAL_BUDGET.as_secs(),
        worst_acyclic.as_secs_f64(),
        ACYCLIC_RUN_BUDGET.as_secs()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("fixture verdicts", criterion_1),
        ("acyclic four-way agreement", criterion_2),
        ("connector / intersection / packing agreement", criterion_3),
        ("weighted intersection vs brute force", criterion_4),
        ("connector optimality", criterion_5),
        ("determinism of `cover solve`", criterion_6),
        ("runtime budgets", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
