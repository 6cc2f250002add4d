use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::text::emit_instance;
use crate::acyclic::HallViolation;
use crate::canonical::{CanonicalSet, Host, InTree};
use crate::cover::{check_feasible, Engine, Infeasible, Outcome};
use crate::graph::{ArcId, Instance};
use crate::verify::verify_canonical;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReasonDoc {
    NotProper { vertex: usize, star_degree: usize, capacity: usize },
    UncoverableArc { arc: usize, tail: usize, head: usize },
    NoConnector { opt: usize },
    HallViolation { vertex: usize, arcs: Vec<usize>, capacity: usize },
}

impl From<&Infeasible> for ReasonDoc {
    fn from(r: &Infeasible) -> Self {
        match r {
            Infeasible::NotProper(p) => ReasonDoc::NotProper {
                vertex: p.vertex.0,
                star_degree: p.star_degree,
                capacity: p.capacity,
            },
            Infeasible::UncoverableArc(u) => {
                ReasonDoc::UncoverableArc { arc: u.arc.0, tail: u.tail.0, head: u.head.0 }
            }
            Infeasible::NoConnector { opt } => ReasonDoc::NoConnector { opt: *opt },
            Infeasible::HallViolation(HallViolation { vertex, arcs, capacity }) => ReasonDoc::HallViolation {
                vertex: vertex.0,
                arcs: arcs.iter().map(|a| a.0).collect(),
                capacity: *capacity,
            },
        }
    }
}

/// The trees of one root, each a sorted list of arc IDs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTrees {
    pub root: usize,
    pub demand: usize,
    pub trees: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorEntry {
    pub origin: usize,
    pub copies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub valid: bool,
    pub covers: bool,
    pub min_multiplicity: usize,
    pub violations: Vec<String>,
}

/// Machine-checkable result of `cover solve`. Contains no timings so that
/// repeated runs are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub instance_sha256: String,
    pub status: Status,
    pub engine: String,
    pub reason: Option<ReasonDoc>,
    pub trees: Vec<RootTrees>,
    pub connector: Vec<ConnectorEntry>,
    pub verification: Option<VerificationDoc>,
}

/// SHA-256 of the canonical instance text, in lowercase hex.
pub fn instance_digest(inst: &Instance) -> String {
    let digest = Sha256::digest(emit_instance(inst).as_bytes());
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

pub fn emit_solution(inst: &Instance, outcome: &Outcome) -> SolutionDoc {
    let instance_sha256 = instance_digest(inst);
    match outcome {
        Outcome::Solved(sol) => {
            let trees = inst
                .roots()
                .iter()
                .enumerate()
                .map(|(i, r)| RootTrees {
                    root: r.vertex.0,
                    demand: r.demand,
                    trees: sol.canonical.trees_of(i).map(|t| t.arcs.iter().map(|a| a.0).collect()).collect(),
                })
                .collect();
            let connector = sol
                .connector
                .multiplicities()
                .into_iter()
                .map(|(a, copies)| ConnectorEntry { origin: a.0, copies })
                .collect();
            SolutionDoc {
                instance_sha256,
                status: Status::Ok,
                engine: sol.engine.to_string(),
                reason: None,
                trees,
                connector,
                verification: Some(VerificationDoc {
                    valid: sol.report.is_valid(),
                    covers: sol.report.min_multiplicity() >= 1 || inst.arc_count() == 0,
                    min_multiplicity: sol.report.min_multiplicity(),
                    violations: sol.report.violations.iter().map(|v| v.to_string()).collect(),
                }),
            }
        }
        Outcome::Infeasible { reason, engine, .. } => SolutionDoc {
            instance_sha256,
            status: Status::Infeasible,
            engine: engine.to_string(),
            reason: Some(reason.into()),
            trees: Vec::new(),
            connector: Vec::new(),
            verification: None,
        },
    }
}

impl SolutionDoc {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution documents always serialize");
        s.push('\n');
        s
    }
}

pub fn read_solution(text: &str) -> Result<SolutionDoc, serde_json::Error> {
    serde_json::from_str(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("solution was produced for a different instance")]
    DigestMismatch,
    #[error("root list does not match the instance")]
    RootMismatch,
    #[error("arc {0} does not exist")]
    UnknownArc(usize),
    #[error("invalid canonical set: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("solution claims infeasibility but the instance is coverable")]
    FalseInfeasible,
    #[error("unknown engine `{0}`")]
    UnknownEngine(String),
}

/// Re-checks a solution document against its instance: an `ok` document must
/// carry a covering canonical set, an `infeasible` one is re-decided.
pub fn verify_solution(inst: &Instance, doc: &SolutionDoc) -> Result<(), VerifyError> {
    if doc.instance_sha256 != instance_digest(inst) {
        return Err(VerifyError::DigestMismatch);
    }
    match doc.status {
        Status::Ok => {
            if doc.trees.len() != inst.root_count()
                || doc.trees.iter().zip(inst.roots()).any(|(t, r)| t.root != r.vertex.0)
            {
                return Err(VerifyError::RootMismatch);
            }
            let mut trees = Vec::new();
            for (i, rt) in doc.trees.iter().enumerate() {
                for t in &rt.trees {
                    if let Some(&bad) = t.iter().find(|&&a| a >= inst.arc_count()) {
                        return Err(VerifyError::UnknownArc(bad));
                    }
                    trees.push(InTree::new(i, t.iter().map(|&a| ArcId(a)).collect()));
                }
            }
            let cs = CanonicalSet { trees, host: Host::Original };
            let report = verify_canonical(inst, &cs, true, false);
            if report.is_valid() {
                Ok(())
            } else {
                Err(VerifyError::Invalid(report.violations.iter().map(|v| v.to_string()).collect()))
            }
        }
        Status::Infeasible => {
            let engine = match doc.engine.as_str() {
                "acyclic" => Engine::Acyclic,
                "general" => Engine::General,
                "auto" => Engine::Auto,
                other => return Err(VerifyError::UnknownEngine(other.to_string())),
            };
            match check_feasible(inst, engine) {
                Ok(Err(_)) => Ok(()),
                Ok(Ok(_)) => Err(VerifyError::FalseInfeasible),
                Err(_) => Err(VerifyError::UnknownEngine(doc.engine.clone())),
            }
        }
    }
}
