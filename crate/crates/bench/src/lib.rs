//! Benchmark suites, batch runs and the rank statistics used to compare
//! construction heuristics.

pub mod convergence;
pub mod error;
pub mod runner;
pub mod stats;
pub mod suite;

pub use convergence::{convergence_export, score_at, step_series};
pub use error::BenchError;
pub use runner::{load_results, run_benchmark, BenchConfig, BenchRecord, Budget, BudgetPolicy};
pub use stats::{average_ranks, friedman_nemenyi, CdReport, ScoreTable};
pub use suite::{generate_suite, plan_suite, FamilyTemplate, Manifest, ManifestEntry, SuiteSpec};
