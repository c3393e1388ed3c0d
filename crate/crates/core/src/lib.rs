//! Construct, Merge, Solve & Adapt (CMSA) for the maximum independent set
//! problem, with three construction rules and a built-in exact subproblem
//! solver.

pub mod ages;
pub mod clock;
pub mod construct;
pub mod engine;
pub mod exact;
pub mod graph;
pub mod params;
pub mod rng;

pub use ages::AgeTable;
pub use clock::{ClockMode, Stopwatch};
pub use construct::{ConstructParams, DeterministicPick, HeuristicVariant};
pub use engine::{run, ConvergenceEvent, RunResult};
pub use exact::{solve_exact, ExactResult, Subproblem};
pub use graph::{Graph, GraphFamilySpec, Solution};
pub use params::CmsaParams;
