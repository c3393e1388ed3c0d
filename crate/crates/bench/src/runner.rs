//! Batch execution of CMSA variants over a manifest, persisted as
//! append-only JSON lines so an interrupted batch can resume.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use cmsa_core::engine;
use cmsa_core::graph::parse_instance;
use cmsa_core::rng::{derive_seed, hash_str};
use cmsa_core::{CmsaParams, HeuristicVariant, RunResult};
use serde::{Deserialize, Serialize};

use crate::error::BenchError;
use crate::suite::{Manifest, ManifestEntry};

pub const RESULTS_SCHEMA_VERSION: u32 = 1;

/// Per-size time budgets: `base_seconds[size_level] * scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetPolicy {
    pub base_seconds: Vec<f64>,
    pub scale: f64,
}

impl Default for BudgetPolicy {
    /// 150/300/450/600 s scaled by 0.02, i.e. 3/6/9/12 s.
    fn default() -> Self {
        Self { base_seconds: vec![150.0, 300.0, 450.0, 600.0], scale: 0.02 }
    }
}

impl BudgetPolicy {
    /// Budget for a size level; levels past the table keep growing by the
    /// last step.
    pub fn t_max(&self, size_level: usize) -> Duration {
        let base = match self.base_seconds.get(size_level) {
            Some(&s) => s,
            None => {
                let last = self.base_seconds.last().copied().unwrap_or(150.0);
                let step = if self.base_seconds.len() >= 2 {
                    last - self.base_seconds[self.base_seconds.len() - 2]
                } else {
                    last
                };
                last + step * (size_level + 1 - self.base_seconds.len()) as f64
            }
        };
        Duration::from_secs_f64(base * self.scale)
    }
}

/// How long each run gets.
#[derive(Debug, Clone, PartialEq)]
pub enum Budget {
    /// Same `t_max` for every instance.
    Fixed(Duration),
    PerSize(BudgetPolicy),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// One parameter template per algorithm. `t_max` is replaced by the
    /// budget; `t_limit` keeps its ratio to `t_max`; `seed` is replaced per run.
    pub variants: Vec<CmsaParams>,
    pub runs_per_instance: usize,
    pub budget: Budget,
    pub workers: usize,
    pub base_seed: u64,
    /// When set, every run's full result is written here as JSON.
    pub runs_dir: Option<PathBuf>,
}

impl BenchConfig {
    pub fn new(variants: &[HeuristicVariant], budget: Budget) -> Self {
        Self {
            variants: variants.iter().map(|&v| CmsaParams::new(v, Duration::from_secs(10), 0)).collect(),
            runs_per_instance: 1,
            budget,
            workers: 1,
            base_seed: 0,
            runs_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub schema_version: u32,
    pub instance_id: String,
    pub group_id: String,
    pub variant: HeuristicVariant,
    pub run: usize,
    pub seed: u64,
    pub best_score: usize,
    pub best_time_s: f64,
    pub t_max_s: f64,
    pub iterations: u64,
}

type JobKey = (String, HeuristicVariant, usize);

fn key_of(r: &BenchRecord) -> JobKey {
    (r.instance_id.clone(), r.variant, r.run)
}

/// Reads an existing results file. A missing file is an empty batch.
pub fn load_results(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(BenchError::io(path, e)),
    };
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| BenchError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: BenchRecord = serde_json::from_str(&line).map_err(|_| BenchError::CorruptResults {
            path: path.to_path_buf(),
            line: idx + 1,
            content: line.clone(),
        })?;
        out.push(record);
    }
    Ok(out)
}

fn run_params(config: &BenchConfig, template: &CmsaParams, entry: &ManifestEntry, run: usize) -> CmsaParams {
    let t_max = match &config.budget {
        Budget::Fixed(d) => *d,
        Budget::PerSize(policy) => policy.t_max(entry.size_level),
    };
    let ratio =
        if template.t_max.is_zero() { 0.1 } else { template.t_limit.as_secs_f64() / template.t_max.as_secs_f64() };
    CmsaParams {
        t_max,
        t_limit: t_max.mul_f64(ratio.clamp(0.0, 1.0)),
        seed: derive_seed(config.base_seed, &[hash_str(&entry.instance_id), run as u64]),
        ..template.clone()
    }
}

fn execute(
    manifest_dir: &Path,
    entry: &ManifestEntry,
    params: &CmsaParams,
    run: usize,
) -> Result<(BenchRecord, RunResult), BenchError> {
    let path = manifest_dir.join(&entry.file);
    let text = fs::read_to_string(&path).map_err(|e| BenchError::io(&path, e))?;
    let graph =
        parse_instance(&text).map_err(|e| BenchError::Instance { path: path.clone(), message: e.to_string() })?;
    let mut result = engine::run(&graph, params)
        .map_err(|e| BenchError::Run { instance_id: entry.instance_id.clone(), message: e.to_string() })?;
    result.instance_id = entry.instance_id.clone();
    let record = BenchRecord {
        schema_version: RESULTS_SCHEMA_VERSION,
        instance_id: entry.instance_id.clone(),
        group_id: entry.group_id.clone(),
        variant: params.variant,
        run,
        seed: params.seed,
        best_score: result.best_score,
        best_time_s: result.best_time.as_secs_f64(),
        t_max_s: params.t_max.as_secs_f64(),
        iterations: result.iterations,
    };
    Ok((record, result))
}

/// Runs every (test instance, variant, run) triple not already present in
/// `results_path`, appending one JSON line per finished run. Returns all
/// records for the batch in job order.
pub fn run_benchmark(
    manifest: &Manifest,
    manifest_dir: &Path,
    config: &BenchConfig,
    results_path: &Path,
) -> Result<Vec<BenchRecord>, BenchError> {
    let entries: Vec<&ManifestEntry> = manifest.test_entries().collect();
    for entry in &entries {
        let path = manifest_dir.join(&entry.file);
        if !path.is_file() {
            return Err(BenchError::io(&path, std::io::Error::from(std::io::ErrorKind::NotFound)));
        }
    }
    if let Some(dir) = &config.runs_dir {
        fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }

    let existing = load_results(results_path)?;
    let done: HashSet<JobKey> = existing.iter().map(key_of).collect();

    let mut jobs = Vec::new();
    for entry in &entries {
        for template in &config.variants {
            for run in 0..config.runs_per_instance {
                jobs.push((*entry, run_params(config, template, entry, run), run));
            }
        }
    }
    let pending: Vec<_> =
        jobs.iter().filter(|(e, p, run)| !done.contains(&(e.instance_id.clone(), p.variant, *run))).collect();

    let sink =
        OpenOptions::new().create(true).append(true).open(results_path).map_err(|e| BenchError::io(results_path, e))?;
    let sink = Mutex::new(sink);
    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);
    let first_error: Mutex<Option<BenchError>> = Mutex::new(None);
    let fresh: Mutex<Vec<BenchRecord>> = Mutex::new(Vec::new());

    let worker = || loop {
        if failed.load(Ordering::Relaxed) {
            return;
        }
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some((entry, params, run)) = pending.get(i) else { return };
        let outcome = execute(manifest_dir, entry, params, *run).and_then(|(record, result)| {
            if let Some(dir) = &config.runs_dir {
                let path = dir.join(format!("{}__{}__run{}.json", record.instance_id, record.variant, run));
                fs::write(&path, result.to_json() + "\n").map_err(|e| BenchError::io(&path, e))?;
            }
            let mut line = serde_json::to_string(&record).expect("records serialize");
            line.push('\n');
            let mut file = sink.lock().expect("results sink poisoned");
            file.write_all(line.as_bytes()).and_then(|_| file.flush()).map_err(|e| BenchError::io(results_path, e))?;
            Ok(record)
        });
        match outcome {
            Ok(record) => fresh.lock().expect("poisoned").push(record),
            Err(e) => {
                failed.store(true, Ordering::Relaxed);
                first_error.lock().expect("poisoned").get_or_insert(e);
                return;
            }
        }
    };

    let workers = config.workers.max(1).min(pending.len().max(1));
    std::thread::scope(|scope| {
        for _ in 1..workers {
            scope.spawn(worker);
        }
        worker();
    });
    if let Some(e) = first_error.into_inner().expect("poisoned") {
        return Err(e);
    }

    let mut all: Vec<BenchRecord> = existing;
    all.extend(fresh.into_inner().expect("poisoned"));
    let order: std::collections::HashMap<JobKey, usize> =
        jobs.iter().enumerate().map(|(i, (e, p, run))| ((e.instance_id.clone(), p.variant, *run), i)).collect();
    all.retain(|r| order.contains_key(&key_of(r)));
    all.sort_by_key(|r| order[&key_of(r)]);
    all.dedup_by(|a, b| key_of(a) == key_of(b));
    Ok(all)
}
