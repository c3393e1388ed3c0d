//! The CMSA loop: Construct, Merge, Solve, Adapt.
//!
//! Each iteration builds `n_a` solutions with the configured construction
//! rule, adds their vertices to the subproblem (age `-1` becomes `0`), solves
//! the induced subproblem exactly under `min(t_limit, remaining)`, and then
//! ages every subproblem vertex the solver did not use. Components older
//! than `age_max` drop out of the subproblem.
//!
//! A run ends when the budget is spent, or earlier once the solver has
//! proven optimality on a subproblem containing every vertex.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ages::AgeTable;
use crate::clock::Stopwatch;
use crate::construct::{Constructor, HeuristicVariant};
use crate::exact::{build_subproblem, BranchAndBound, SubproblemSolver};
use crate::graph::{Graph, Solution, VertexId};
use crate::params::{secs, CmsaParams, ParamError};
use crate::rng::{derive_seed, seeded};

pub const RUN_SCHEMA_VERSION: u32 = 1;

// Work units for allocating the per-iteration buffers.
const ITERATION_OVERHEAD: u64 = 1000;

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("solver returned vertex {0}, which is not in the subproblem")]
    NotInSubproblem(VertexId),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Adds every vertex of `constructed` that is outside the subproblem with
/// age `0`. Vertices already in the subproblem keep their age.
pub fn merge(ages: &mut AgeTable, constructed: &[Solution]) {
    for s in constructed {
        for &v in s.vertices() {
            if !ages.in_subproblem(v) {
                ages.set(v, 0);
            }
        }
    }
}

/// Resets the age of the solver's vertices to `0`, ages every other
/// subproblem vertex by one and evicts those older than `age_max`.
pub fn adapt(ages: &mut AgeTable, solver_solution: &Solution, age_max: u32) -> Result<(), EngineError> {
    if let Some(&v) = solver_solution.vertices().iter().find(|&&v| !ages.in_subproblem(v)) {
        return Err(EngineError::NotInSubproblem(v));
    }
    let limit = i32::try_from(age_max).unwrap_or(i32::MAX);
    for v in 0..ages.len() {
        let age = ages.get(v);
        if age < 0 {
            continue;
        }
        if solver_solution.contains(v) {
            ages.set(v, 0);
        } else if age >= limit {
            ages.set(v, AgeTable::ABSENT);
        } else {
            ages.set(v, age + 1);
        }
    }
    Ok(())
}

/// A new best solution, found at `elapsed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvergenceEvent {
    pub elapsed: Duration,
    pub score: usize,
}

impl Serialize for ConvergenceEvent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.elapsed.as_secs_f64(), self.score).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvergenceEvent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (secs, score) = <(f64, usize)>::deserialize(d)?;
        let elapsed = Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)?;
        Ok(Self { elapsed, score })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub schema_version: u32,
    pub instance_id: String,
    pub variant: HeuristicVariant,
    pub seed: u64,
    pub params: CmsaParams,
    pub best_score: usize,
    #[serde(rename = "best_time_s", with = "secs")]
    pub best_time: Duration,
    pub iterations: u64,
    pub convergence: Vec<ConvergenceEvent>,
    pub best: Solution,
}

impl RunResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("run results serialize")
    }
}

/// State handed to an observer after each Adapt phase.
#[derive(Debug)]
pub struct IterationReport<'a> {
    pub iteration: u64,
    pub elapsed: Duration,
    pub constructed: &'a [Solution],
    pub subproblem_size: usize,
    pub solver_solution: &'a Solution,
    pub proven_optimal: bool,
    pub ages: &'a AgeTable,
    pub best_score: usize,
}

pub fn run(g: &Graph, params: &CmsaParams) -> Result<RunResult, EngineError> {
    run_observed(g, params, &BranchAndBound, |_| {})
}

/// Runs CMSA with an explicit solver backend, calling `observe` after every
/// iteration.
pub fn run_observed<S, F>(g: &Graph, params: &CmsaParams, solver: &S, mut observe: F) -> Result<RunResult, EngineError>
where
    S: SubproblemSolver + ?Sized,
    F: FnMut(&IterationReport<'_>),
{
    params.validate()?;
    let mut clock = Stopwatch::start(params.clock);
    let mut result = RunResult {
        schema_version: RUN_SCHEMA_VERSION,
        instance_id: String::new(),
        variant: params.variant,
        seed: params.seed,
        params: params.clone(),
        best_score: 0,
        best_time: Duration::ZERO,
        iterations: 0,
        convergence: Vec::new(),
        best: Solution::empty(),
    };
    if g.n_vertices() == 0 {
        return Ok(result);
    }

    let constructor = Constructor::new(g);
    let construct_params = params.construct_params();
    let mut ages = AgeTable::new(g.n_vertices());
    let mut constructed = Vec::with_capacity(params.n_a);

    while clock.elapsed() < params.t_max {
        let iteration = result.iterations;
        constructed.clear();
        for i in 0..params.n_a {
            let mut rng = seeded(derive_seed(params.seed, &[iteration, i as u64]));
            let s = constructor.construct(params.variant, &ages, &construct_params, &mut rng, &mut clock);
            // merged one at a time so later constructions see the fresh ages
            merge(&mut ages, std::slice::from_ref(&s));
            constructed.push(s);
        }

        let sp = build_subproblem(g, &ages);
        clock.charge(ITERATION_OVERHEAD + (4 * g.n_vertices() + sp.len() + 2 * sp.induced_edges().len()) as u64);
        let remaining = params.t_max.saturating_sub(clock.elapsed());
        let exact = solver.solve(&sp, params.t_limit.min(remaining), &mut clock);

        adapt(&mut ages, &exact.solution, params.age_max)?;
        clock.charge(2 * g.n_vertices() as u64);

        if exact.solution.score() > result.best_score {
            let elapsed = clock.elapsed();
            result.best = exact.solution.clone();
            result.best_score = exact.solution.score();
            result.best_time = elapsed;
            result.convergence.push(ConvergenceEvent { elapsed, score: result.best_score });
        }
        result.iterations += 1;

        observe(&IterationReport {
            iteration,
            elapsed: clock.elapsed(),
            constructed: &constructed,
            subproblem_size: sp.len(),
            solver_solution: &exact.solution,
            proven_optimal: exact.proven_optimal,
            ages: &ages,
            best_score: result.best_score,
        });

        // a proof over the whole vertex set is a proof for the instance
        if exact.proven_optimal && sp.len() == g.n_vertices() {
            break;
        }
    }
    Ok(result)
}

/// Convenience for callers that only vary the variant.
pub fn run_variant(g: &Graph, variant: HeuristicVariant, t_max: Duration, seed: u64) -> Result<RunResult, EngineError> {
    run(g, &CmsaParams::new(variant, t_max, seed))
}
