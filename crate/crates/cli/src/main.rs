use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cmsa_bench::stats::{group_summaries, summaries_csv};
use cmsa_bench::{
    convergence_export, friedman_nemenyi, generate_suite, load_results, run_benchmark, BenchConfig, Budget,
    BudgetPolicy, Manifest, ScoreTable, SuiteSpec,
};
use cmsa_core::graph::parse_instance;
use cmsa_core::params::parse_param_file;
use cmsa_core::{CmsaParams, HeuristicVariant, RunResult};

/// Construct, Merge, Solve & Adapt for maximum independent set.
#[derive(Debug, Parser)]
#[command(name = "cmsa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a benchmark suite from a JSON suite spec.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run CMSA once and print the run result as JSON.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        variant: Option<HeuristicVariant>,
    },
    /// Run every test instance of a manifest with each variant.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated variant names.
        #[arg(long, value_delimiter = ',', default_value = "original,v1,v2")]
        variants: Vec<HeuristicVariant>,
        /// Results file (JSON lines); existing records are kept and skipped.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Factor applied to the per-size budgets of 150/300/450/600 s.
        #[arg(long, default_value_t = 0.02, conflicts_with = "tmax")]
        budget_scale: f64,
        /// Write each run's full result into this directory.
        #[arg(long)]
        runs_dir: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Mean ranks, Friedman test and critical difference for a results file.
    Stats {
        #[arg(long)]
        results: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Per-group score summary CSV. Defaults to `<results stem>_summary.csv`.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Export best-score-over-time series from run result files.
    Convergence {
        #[arg(long, num_args = 1.., required = true)]
        runs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Total budget in seconds.
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, env = "CMSA_SEED")]
    seed: Option<u64>,
    /// `key = value` parameter file; flags take precedence.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Measure budgets in wall-clock time instead of deterministic work units.
    #[arg(long)]
    wall_clock: bool,
}

impl RunArgs {
    fn params(&self, variant: Option<HeuristicVariant>) -> Result<CmsaParams> {
        let mut pairs = match &self.params {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_param_file(&text).with_context(|| path.display().to_string())?
            }
            None => BTreeMap::new(),
        };
        if let Some(v) = variant {
            pairs.insert("variant".into(), v.name().into());
        }
        if let Some(t) = self.tmax {
            pairs.insert("t_max".into(), t.to_string());
        }
        if let Some(s) = self.seed {
            pairs.insert("seed".into(), s.to_string());
        }
        if self.wall_clock {
            pairs.insert("clock".into(), "wall".into());
        }
        Ok(CmsaParams::from_pairs(&pairs)?)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Gen { spec, out } => {
            let spec: SuiteSpec = read_json(&spec)?;
            let manifest = generate_suite(&spec, &out)?;
            eprintln!("wrote {} instances to {}", manifest.entries.len(), out.display());
        }
        Command::Solve { instance, run, variant } => {
            let params = run.params(variant)?;
            let text = fs::read_to_string(&instance).with_context(|| format!("reading {}", instance.display()))?;
            let graph = parse_instance(&text).with_context(|| instance.display().to_string())?;
            let mut result = cmsa_core::run(&graph, &params)?;
            result.instance_id = instance.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            println!("{}", result.to_json());
        }
        Command::Bench { manifest, variants, out, workers, runs, budget_scale, runs_dir, run } => {
            if variants.is_empty() {
                bail!("no variants given");
            }
            let template = run.params(None)?;
            let budget = match run.tmax {
                Some(t) => Budget::Fixed(Duration::try_from_secs_f64(t).context("invalid --tmax")?),
                None => Budget::PerSize(BudgetPolicy { scale: budget_scale, ..BudgetPolicy::default() }),
            };
            let config = BenchConfig {
                variants: variants.iter().map(|&variant| CmsaParams { variant, ..template.clone() }).collect(),
                runs_per_instance: runs,
                budget,
                workers,
                base_seed: template.seed,
                runs_dir,
            };
            let dir = manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
            let manifest = Manifest::load(&manifest)?;
            let records = run_benchmark(&manifest, &dir, &config, &out)?;
            eprintln!("{} records in {}", records.len(), out.display());
        }
        Command::Stats { results, alpha, summary } => {
            let records = load_results(&results)?;
            let report = friedman_nemenyi(&ScoreTable::from_records(&records)?, alpha)?;
            let summary = summary.unwrap_or_else(|| {
                let stem = results.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                results.with_file_name(format!("{stem}_summary.csv"))
            });
            fs::write(&summary, summaries_csv(&group_summaries(&records)))
                .with_context(|| format!("writing {}", summary.display()))?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Convergence { runs, out } => {
            let results = runs.iter().map(|p| read_json::<RunResult>(p)).collect::<Result<Vec<_>>>()?;
            let (series, mean) = convergence_export(&results, &out)?;
            eprintln!("wrote {} and {}", series.display(), mean.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
