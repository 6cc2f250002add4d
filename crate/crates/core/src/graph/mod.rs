//! Directed multigraph model: instances, reachability toward the roots, the
//! star graph with its super-sink, the copy-augmented graph and topological
//! labelling.

mod instance;
mod reach;
mod star;
mod topo;

pub use instance::{Arc, ArcId, ArcKind, Instance, InstanceError, Root, VertexId};
pub use reach::{check_proper, coverable_check, is_proper, opt_d, reach_profile, NotProper, ReachProfile, UncoverableArc};
pub use star::{build_plus, build_star, AugmentedGraph, Slot, StarGraph};
pub use topo::{topological_order, CyclicError, TopoOrder};
