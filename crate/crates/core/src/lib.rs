//! Covering the arcs of a directed multigraph by rooted spanning in-trees.
//!
//! Given `D = (V, A)`, ordered roots `s_1..s_d` and demands `f(s_i)`, the
//! library decides whether `f(s_i)` in-trees per root, each spanning every
//! vertex that can reach its root, can together use every arc, and builds
//! such a family when it exists. Two engines are provided: a general one
//! based on weighted matroid intersection over a copy-augmented star graph,
//! and a faster matching-based one for acyclic inputs.

mod forest;

pub mod acyclic;
pub mod canonical;
pub mod fixtures;
pub mod cover;
pub mod graph;
pub mod io;
pub mod matroid;
pub mod verify;
pub mod wmi;

pub use canonical::{CanonicalSet, Host, InTree};
pub use cover::{solve_cover, solve_cover_with, Engine, Infeasible, Outcome, Solution, SolveError};
pub use graph::{ArcId, Instance, VertexId};
