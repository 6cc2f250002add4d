//! The general pipeline: rooted connector by weighted intersection, packing of
//! arc-disjoint in-trees in `D + B`, and the copy-to-origin replacement.

mod connector;
mod pack;
mod pipeline;

pub use connector::{
    find_rooted_connector, is_rooted_connector, Connector, ConnectorDeficit, ConnectorError, ConnectorSolution,
};
pub use pack::{pack_disjoint_intrees, PackingFailure};
pub use pipeline::{
    check_feasible, replace, solve_cover, solve_cover_with, Engine, Infeasible, Outcome, Solution, SolveError,
    SolveStats,
};
