//! Rank statistics over benchmark results: average ranks, the Friedman test
//! with Nemenyi critical differences, and per-group score summaries.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::BenchError;
use crate::runner::BenchRecord;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Studentized range statistic divided by √2, for k = 2..=10 (Demšar 2006).
const Q_005: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];
const Q_010: [f64; 9] = [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920];

/// Scores laid out as one row per instance, one column per algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub algorithms: Vec<String>,
    pub instances: Vec<String>,
    pub scores: Vec<Vec<f64>>,
}

impl ScoreTable {
    pub fn new(algorithms: Vec<String>, instances: Vec<String>, scores: Vec<Vec<f64>>) -> Result<Self, BenchError> {
        if scores.len() != instances.len() {
            return Err(BenchError::Stats(format!("{} rows for {} instances", scores.len(), instances.len())));
        }
        for (row, name) in scores.iter().zip(&instances) {
            if row.len() != algorithms.len() {
                return Err(BenchError::Stats(format!(
                    "instance {name}: {} scores for {} algorithms",
                    row.len(),
                    algorithms.len()
                )));
            }
        }
        Ok(Self { algorithms, instances, scores })
    }

    /// Averages `best_score` over runs for each (instance, variant). Every
    /// instance must have results for every variant seen in the batch.
    pub fn from_records(records: &[BenchRecord]) -> Result<Self, BenchError> {
        if records.is_empty() {
            return Err(BenchError::EmptyInput);
        }
        let mut sums: BTreeMap<(&str, String), (f64, usize)> = BTreeMap::new();
        let mut algorithms = BTreeSet::new();
        let mut instances = BTreeSet::new();
        for r in records {
            let name = r.variant.name().to_string();
            algorithms.insert(name.clone());
            instances.insert(r.instance_id.as_str());
            let slot = sums.entry((r.instance_id.as_str(), name)).or_insert((0.0, 0));
            slot.0 += r.best_score as f64;
            slot.1 += 1;
        }
        let algorithms: Vec<String> = algorithms.into_iter().collect();
        let mut scores = Vec::with_capacity(instances.len());
        for &inst in &instances {
            let mut row = Vec::with_capacity(algorithms.len());
            for alg in &algorithms {
                let (sum, count) = sums.get(&(inst, alg.clone())).ok_or_else(|| BenchError::IncompleteDesign {
                    instance: inst.to_string(),
                    algorithm: alg.clone(),
                })?;
                row.push(sum / *count as f64);
            }
            scores.push(row);
        }
        Ok(Self { algorithms, instances: instances.into_iter().map(String::from).collect(), scores })
    }
}

/// Ranks one instance's scores, best (highest) first. Ties share the mean of
/// the positions they occupy.
pub fn rank_row(scores: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

pub fn average_ranks(table: &ScoreTable) -> Vec<f64> {
    let k = table.algorithms.len();
    let mut total = vec![0.0; k];
    for row in &table.scores {
        for (t, r) in total.iter_mut().zip(rank_row(row)) {
            *t += r;
        }
    }
    let n = table.scores.len().max(1) as f64;
    total.into_iter().map(|t| t / n).collect()
}

pub fn nemenyi_q(alpha: f64, k: usize) -> Result<f64, BenchError> {
    let table = if (alpha - 0.05).abs() < 1e-12 {
        &Q_005
    } else if (alpha - 0.10).abs() < 1e-12 {
        &Q_010
    } else {
        return Err(BenchError::UnsupportedAlpha(alpha));
    };
    if !(2..=10).contains(&k) {
        return Err(BenchError::Stats(format!("critical values are tabulated for 2 to 10 algorithms, got {k}")));
    }
    Ok(table[k - 2])
}

pub fn friedman_statistic(mean_ranks: &[f64], n_instances: usize) -> f64 {
    let k = mean_ranks.len() as f64;
    let sum_sq: f64 = mean_ranks.iter().map(|r| r * r).sum();
    12.0 * n_instances as f64 / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0).powi(2) / 4.0)
}

pub fn critical_difference(q: f64, k: usize, n_instances: usize) -> f64 {
    let k = k as f64;
    q * (k * (k + 1.0) / (6.0 * n_instances as f64)).sqrt()
}

/// Maximal sets of algorithms whose mean ranks all lie within less than `cd`
/// of each other. Algorithms are returned by index, each group in rank order.
pub fn equivalence_groups(mean_ranks: &[f64], cd: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..mean_ranks.len()).collect();
    order.sort_by(|&a, &b| mean_ranks[a].total_cmp(&mean_ranks[b]).then(a.cmp(&b)));
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for start in 0..order.len() {
        let mut end = start + 1;
        while end < order.len() && mean_ranks[order[end]] - mean_ranks[order[start]] < cd {
            end += 1;
        }
        // windows are ordered by start, so containment can only be in the last one kept
        if groups.last().is_none_or(|&(_, e)| end > e) {
            groups.push((start, end));
        }
    }
    groups.into_iter().map(|(s, e)| order[s..e].to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdReport {
    pub schema_version: u32,
    pub algorithms: Vec<String>,
    pub mean_ranks: Vec<f64>,
    pub n_instances: usize,
    pub friedman_statistic: f64,
    pub p_value: f64,
    pub critical_difference: f64,
    pub alpha: f64,
    pub equivalence_groups: Vec<Vec<String>>,
}

pub fn friedman_nemenyi(table: &ScoreTable, alpha: f64) -> Result<CdReport, BenchError> {
    let k = table.algorithms.len();
    let n = table.scores.len();
    if k < 2 || n < 2 {
        return Err(BenchError::Stats(format!("need at least 2 algorithms and 2 instances, got {k} and {n}")));
    }
    let q = nemenyi_q(alpha, k)?;
    let mean_ranks = average_ranks(table);
    let chi2 = friedman_statistic(&mean_ranks, n);
    let dist = ChiSquared::new((k - 1) as f64).map_err(|e| BenchError::Stats(e.to_string()))?;
    // rounding can push an all-ties statistic a hair below zero
    let p_value = dist.sf(chi2.max(0.0));
    let cd = critical_difference(q, k, n);
    let equivalence_groups = equivalence_groups(&mean_ranks, cd)
        .into_iter()
        .map(|g| g.into_iter().map(|i| table.algorithms[i].clone()).collect())
        .collect();
    Ok(CdReport {
        schema_version: REPORT_SCHEMA_VERSION,
        algorithms: table.algorithms.clone(),
        mean_ranks,
        n_instances: n,
        friedman_statistic: chi2,
        p_value,
        critical_difference: cd,
        alpha,
        equivalence_groups,
    })
}

/// Box-plot statistics of `best_score` for one (group, variant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub group_id: String,
    pub variant: String,
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Linear-interpolation quantile of sorted data (R's type 7).
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn group_summaries(records: &[BenchRecord]) -> Vec<GroupSummary> {
    let mut by_group: BTreeMap<(&str, &str), Vec<f64>> = BTreeMap::new();
    for r in records {
        by_group.entry((r.group_id.as_str(), r.variant.name())).or_default().push(r.best_score as f64);
    }
    by_group
        .into_iter()
        .map(|((group, variant), mut xs)| {
            xs.sort_by(f64::total_cmp);
            GroupSummary {
                group_id: group.to_string(),
                variant: variant.to_string(),
                count: xs.len(),
                min: xs[0],
                q1: quantile(&xs, 0.25),
                median: quantile(&xs, 0.5),
                q3: quantile(&xs, 0.75),
                max: xs[xs.len() - 1],
                mean: xs.iter().sum::<f64>() / xs.len() as f64,
            }
        })
        .collect()
}

pub fn summaries_csv(rows: &[GroupSummary]) -> String {
    let mut out = String::from("group_id,variant,count,min,q1,median,q3,max,mean\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.group_id, r.variant, r.count, r.min, r.q1, r.median, r.q3, r.max, r.mean
        ));
    }
    out
}
