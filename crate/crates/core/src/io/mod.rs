//! Text formats, generators and the benchmark harness behind the `cover` binary.

mod bench;
mod dot;
mod gen;
mod solution;
mod text;

pub use bench::{run_bench, BenchReport, BenchRow, Suite};
pub use dot::export_dot;
pub use gen::{gen_planted_acyclic, gen_proper, gen_random, GenError};
pub use solution::{
    emit_solution, instance_digest, read_solution, verify_solution, ConnectorEntry, ReasonDoc, RootTrees,
    SolutionDoc, Status, VerificationDoc, VerifyError,
};
pub use text::{emit_instance, parse_instance, ParseError};
