//! Best-score-over-time series for plotting.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cmsa_core::{ConvergenceEvent, RunResult};

use crate::error::BenchError;

pub const DEFAULT_GRID_POINTS: usize = 101;

/// Best score reached by time `t`, or 0 before the first event.
pub fn score_at(events: &[ConvergenceEvent], t: f64) -> usize {
    events.iter().take_while(|e| e.elapsed.as_secs_f64() <= t).map(|e| e.score).max().unwrap_or(0)
}

/// The run's step function as (time, best score) corners.
pub fn step_series(run: &RunResult) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for e in &run.convergence {
        let best = out.last().map_or(0, |&(_, s)| s).max(e.score);
        out.push((e.elapsed.as_secs_f64(), best));
    }
    out
}

/// Mean over `runs` of the best score at each point of a uniform grid from
/// 0 to `horizon`.
pub fn mean_trajectory(runs: &[&RunResult], horizon: f64, points: usize) -> Vec<(f64, f64)> {
    let points = points.max(2);
    (0..points)
        .map(|i| {
            let t = horizon * i as f64 / (points - 1) as f64;
            let total: usize = runs.iter().map(|r| score_at(&r.convergence, t)).sum();
            (t, total as f64 / runs.len().max(1) as f64)
        })
        .collect()
}

pub struct ConvergenceCsv {
    /// Columns: instance_id, variant, seed, time_s, score.
    pub series: String,
    /// Columns: instance_id, variant, time_s, mean_score.
    pub mean: String,
}

pub fn convergence_csv(runs: &[RunResult], grid_points: usize) -> Result<ConvergenceCsv, BenchError> {
    if runs.is_empty() {
        return Err(BenchError::EmptyInput);
    }
    let mut series = String::from("instance_id,variant,seed,time_s,score\n");
    let mut groups: BTreeMap<(&str, &str), Vec<&RunResult>> = BTreeMap::new();
    for run in runs {
        for (t, s) in step_series(run) {
            series.push_str(&format!("{},{},{},{t},{s}\n", run.instance_id, run.variant, run.seed));
        }
        groups.entry((run.instance_id.as_str(), run.variant.name())).or_default().push(run);
    }
    let mut mean = String::from("instance_id,variant,time_s,mean_score\n");
    for ((instance, variant), group) in groups {
        let horizon = group.iter().map(|r| r.params.t_max.as_secs_f64()).fold(0.0, f64::max);
        for (t, m) in mean_trajectory(&group, horizon, grid_points) {
            mean.push_str(&format!("{instance},{variant},{t},{m}\n"));
        }
    }
    Ok(ConvergenceCsv { series, mean })
}

/// Writes the step series to `out` and the mean trajectories next to it as
/// `<stem>_mean.csv`. Returns both paths.
pub fn convergence_export(runs: &[RunResult], out: &Path) -> Result<(PathBuf, PathBuf), BenchError> {
    let csv = convergence_csv(runs, DEFAULT_GRID_POINTS)?;
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("convergence");
    let mean_path = out.with_file_name(format!("{stem}_mean.csv"));
    fs::write(out, csv.series).map_err(|e| BenchError::io(out, e))?;
    fs::write(&mean_path, csv.mean).map_err(|e| BenchError::io(&mean_path, e))?;
    Ok((out.to_path_buf(), mean_path))
}
