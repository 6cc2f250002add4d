use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::connector::{find_rooted_connector, Connector, ConnectorError};
use super::pack::{pack_disjoint_intrees, PackingFailure};
use crate::acyclic::{hall_check, AcyclicState, HallViolation};
use crate::canonical::{CanonicalSet, Host, InTree};
use crate::graph::{
    check_proper, coverable_check, reach_profile, topological_order, CyclicError, Instance, NotProper,
    ReachProfile, UncoverableArc,
};
use crate::verify::{verify_canonical, CoverageReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    /// Acyclic inputs go to the matching engine, the rest to the general one.
    #[default]
    Auto,
    General,
    Acyclic,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::General => "general",
            Engine::Acyclic => "acyclic",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why no covering canonical set exists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasible {
    #[error(transparent)]
    NotProper(#[from] NotProper),
    #[error(transparent)]
    UncoverableArc(#[from] UncoverableArc),
    #[error("no rooted connector of size opt_D = {opt}")]
    NoConnector { opt: usize },
    #[error(transparent)]
    HallViolation(#[from] HallViolation),
}

/// Failures that are not answers about the instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the acyclic engine was requested: {0}")]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Packing(#[from] PackingFailure),
    #[error("solver output failed verification: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Verification(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub reach: Duration,
    pub connector: Duration,
    pub packing: Duration,
    pub matching: Duration,
    pub verify: Duration,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// Covering canonical set over the input instance.
    pub canonical: CanonicalSet,
    /// Empty for the acyclic engine.
    pub connector: Connector,
    /// The engine that actually ran, never [`Engine::Auto`].
    pub engine: Engine,
    pub report: CoverageReport,
    pub stats: SolveStats,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Solved(Solution),
    Infeasible { reason: Infeasible, engine: Engine, stats: SolveStats },
}

impl Outcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) => Some(s),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn reason(&self) -> Option<&Infeasible> {
        match self {
            Outcome::Solved(_) => None,
            Outcome::Infeasible { reason, .. } => Some(reason),
        }
    }
}

/// Maps every copy arc of `D + B` back to its origin; tree shapes are kept.
pub fn replace(inst: &Instance, host: &Instance, cs: &CanonicalSet) -> CanonicalSet {
    debug_assert_eq!(inst.arc_count(), host.original_arc_count());
    let trees = cs
        .trees
        .iter()
        .map(|t| InTree::new(t.root_index, t.arcs.iter().map(|&a| host.arc(a).origin_or_self()).collect()))
        .collect();
    CanonicalSet { trees, host: Host::Original }
}

pub fn solve_cover(inst: &Instance) -> Result<Outcome, SolveError> {
    solve_cover_with(inst, Engine::Auto)
}

fn resolve_engine(inst: &Instance, engine: Engine) -> Result<Engine, CyclicError> {
    match engine {
        Engine::Auto => Ok(if topological_order(inst).is_ok() { Engine::Acyclic } else { Engine::General }),
        Engine::Acyclic => topological_order(inst).map(|_| Engine::Acyclic),
        Engine::General => Ok(Engine::General),
    }
}

fn precheck(inst: &Instance, rp: &ReachProfile) -> Result<(), Infeasible> {
    check_proper(inst, rp)?;
    coverable_check(inst, rp)?;
    Ok(())
}

/// Properness, coverability, then the chosen engine, then the verifier.
pub fn solve_cover_with(inst: &Instance, engine: Engine) -> Result<Outcome, SolveError> {
    let mut stats = SolveStats::default();
    let engine = resolve_engine(inst, engine)?;
    let clock = Instant::now();
    let rp = reach_profile(inst);
    stats.reach = clock.elapsed();
    if let Err(reason) = precheck(inst, &rp) {
        return Ok(Outcome::Infeasible { reason, engine, stats });
    }

    let (canonical, connector) = match engine {
        Engine::Acyclic => {
            let clock = Instant::now();
            let state = AcyclicState::new(inst, &rp)?;
            let result = state.finish();
            stats.matching = clock.elapsed();
            match result {
                Ok(cs) => (cs, Connector::empty()),
                Err(v) => return Ok(Outcome::Infeasible { reason: v.into(), engine, stats }),
            }
        }
        _ => {
            let clock = Instant::now();
            let found = find_rooted_connector(inst, &rp);
            stats.connector = clock.elapsed();
            let sol = match found {
                Ok(sol) => sol,
                Err(ConnectorError::NotProper(p)) => {
                    return Ok(Outcome::Infeasible { reason: p.into(), engine, stats })
                }
                Err(ConnectorError::NoConnector { opt }) => {
                    return Ok(Outcome::Infeasible { reason: Infeasible::NoConnector { opt }, engine, stats })
                }
            };
            let clock = Instant::now();
            let packed = pack_disjoint_intrees(&sol.host, &rp, &sol.cis)?;
            stats.packing = clock.elapsed();
            (replace(inst, &sol.host, &packed), sol.connector)
        }
    };

    let clock = Instant::now();
    let report = verify_canonical(inst, &canonical, true, false);
    stats.verify = clock.elapsed();
    if !report.is_valid() {
        return Err(SolveError::Verification(report.violations));
    }
    Ok(Outcome::Solved(Solution { canonical, connector, engine, report, stats }))
}

/// Decides coverability without building trees: the Hall condition on
/// acyclic inputs, the connector search otherwise.
pub fn check_feasible(inst: &Instance, engine: Engine) -> Result<Result<Engine, Infeasible>, CyclicError> {
    let engine = resolve_engine(inst, engine)?;
    let rp = reach_profile(inst);
    if let Err(reason) = precheck(inst, &rp) {
        return Ok(Err(reason));
    }
    let verdict = match engine {
        Engine::Acyclic => hall_check(inst, &rp).map_err(Infeasible::from),
        _ => find_rooted_connector(inst, &rp).map(|_| ()).map_err(|e| match e {
            ConnectorError::NotProper(p) => p.into(),
            ConnectorError::NoConnector { opt } => Infeasible::NoConnector { opt },
        }),
    };
    Ok(verdict.map(|()| engine))
}
