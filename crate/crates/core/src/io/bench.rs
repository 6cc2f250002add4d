use std::fmt;
use std::time::{Duration, Instant};

use super::gen::{gen_planted_acyclic, gen_proper, gen_random};
use crate::cover::{solve_cover_with, Engine, Outcome};
use crate::fixtures;
use crate::graph::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Fixtures plus small random acyclic instances.
    Small,
    /// Proper general instances (10 vertices, 20 arcs) and planted acyclic
    /// ones (200 vertices, 600 arcs).
    Random,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub name: String,
    pub engine: Engine,
    pub vertices: usize,
    pub arcs: usize,
    pub demand: usize,
    pub status: String,
    pub reach: Duration,
    pub connector: Duration,
    pub packing: Duration,
    pub matching: Duration,
    pub verify: Duration,
    pub total: Duration,
    pub budget: Option<Duration>,
}

impl BenchRow {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.total < b)
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn all_within_budget(&self) -> bool {
        self.rows.iter().all(BenchRow::within_budget)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        writeln!(
            f,
            "{:<22} {:<8} {:>5} {:>5} {:>4} {:<16} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}  budget",
            "instance", "engine", "|V|", "|A|", "f(S)", "status", "reach", "connect", "pack", "match", "verify", "total"
        )?;
        for r in &self.rows {
            let budget = match r.budget {
                Some(b) if r.within_budget() => format!("ok (< {} s)", b.as_secs()),
                Some(b) => format!("OVER (< {} s)", b.as_secs()),
                None => "-".into(),
            };
            writeln!(
                f,
                "{:<22} {:<8} {:>5} {:>5} {:>4} {:<16} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3}  {}",
                r.name,
                r.engine.as_str(),
                r.vertices,
                r.arcs,
                r.demand,
                r.status,
                ms(r.reach),
                ms(r.connector),
                ms(r.packing),
                ms(r.matching),
                ms(r.verify),
                ms(r.total),
                budget
            )?;
        }
        write!(f, "times in ms; {} instances", self.rows.len())
    }
}

fn run_one(name: String, inst: &Instance, engine: Engine, budget: Option<Duration>) -> BenchRow {
    let start = Instant::now();
    let outcome = solve_cover_with(inst, engine);
    let total = start.elapsed();
    let (status, stats, used) = match &outcome {
        Ok(Outcome::Solved(s)) => ("ok".to_string(), s.stats, s.engine),
        Ok(Outcome::Infeasible { reason, engine, stats }) => {
            let tag = match reason {
                crate::cover::Infeasible::NotProper(_) => "not-proper",
                crate::cover::Infeasible::UncoverableArc(_) => "uncoverable-arc",
                crate::cover::Infeasible::NoConnector { .. } => "no-connector",
                crate::cover::Infeasible::HallViolation(_) => "hall-violation",
            };
            (tag.to_string(), *stats, *engine)
        }
        Err(e) => (format!("error: {e}"), Default::default(), engine),
    };
    BenchRow {
        name,
        engine: used,
        vertices: inst.vertex_count(),
        arcs: inst.arc_count(),
        demand: inst.total_demand(),
        status,
        reach: stats.reach,
        connector: stats.connector,
        packing: stats.packing,
        matching: stats.matching,
        verify: stats.verify,
        total,
        budget,
    }
}

/// Runs a suite over `seeds` consecutive seeds starting at `base_seed`.
pub fn run_bench(suite: Suite, seeds: u64, base_seed: u64) -> BenchReport {
    let mut rows = Vec::new();
    match suite {
        Suite::Small => {
            for (name, inst) in fixtures::all() {
                rows.push(run_one(name.to_string(), &inst, Engine::Auto, None));
            }
            for seed in base_seed..base_seed + seeds {
                let inst = gen_random(8, 14, 3, 3, seed, true).expect("valid parameters");
                rows.push(run_one(format!("acyclic-8-14/{seed}"), &inst, Engine::Acyclic, None));
                rows.push(run_one(format!("acyclic-8-14/{seed}"), &inst, Engine::General, None));
            }
        }
        Suite::Random => {
            for seed in base_seed..base_seed + seeds {
                if let Ok(inst) = gen_proper(10, 20, 4, 1, seed, false) {
                    rows.push(run_one(
                        format!("proper-10-20/{seed}"),
                        &inst,
                        Engine::General,
                        Some(Duration::from_secs(10)),
                    ));
                }
                if let Ok(inst) = gen_planted_acyclic(200, 600, 5, 4, seed) {
                    rows.push(run_one(
                        format!("planted-200-600/{seed}"),
                        &inst,
                        Engine::Acyclic,
                        Some(Duration::from_secs(5)),
                    ));
                }
            }
        }
    }
    BenchReport { rows }
}
