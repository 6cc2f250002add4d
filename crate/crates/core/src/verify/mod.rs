//! Ground truth kept apart from the solvers: the canonical-set verifier,
//! unit-capacity max-flow, and exhaustive oracles for small inputs.

mod brute;
mod check;
mod flow;

pub use brute::{
    brute_force_complete_exists, brute_force_connector, brute_force_connector_with_limit,
    brute_force_feasible, brute_force_wmi, BruteVerdict, TooLarge,
};
pub use check::{verify_canonical, CoverageReport, Violation};
pub use flow::{local_arc_connectivity, CutValue, Digraph};
