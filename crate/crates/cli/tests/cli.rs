use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cmsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmsa")).args(args).env_remove("CMSA_SEED").output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("empty10.dimacs");
    fs::write(&inst, "p edge 10 0\n").unwrap();
    let out = cmsa(&["solve", "--instance", path(&inst), "--variant", "v1", "--tmax", "1", "--seed", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["best_score"], 10);
    assert_eq!(v["instance_id"], "empty10");
    assert_eq!(v["seed"], 7);
}

#[test]
fn solve_is_deterministic_and_honours_params_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.dimacs");
    let edges: String = (1..40).map(|i| format!("e {i} {}\n", i + 1)).collect();
    fs::write(&inst, format!("p edge 40 39\n{edges}")).unwrap();
    let params = dir.path().join("p.txt");
    fs::write(&params, "n_a = 3\nage_max = 5\nt_max = 9\nvariant = v2\n").unwrap();
    let args = ["solve", "--instance", path(&inst), "--params", path(&params), "--tmax", "0.5", "--seed", "3"];
    let a = cmsa(&args);
    let b = cmsa(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["params"]["n_a"], 3);
    assert_eq!(v["params"]["age_max"], 5);
    assert_eq!(v["params"]["t_max"], 0.5);
    assert_eq!(v["variant"], "v2");
    assert_eq!(v["best_score"], 20);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("e.dimacs");
    fs::write(&inst, "p edge 3 1\ne 1 2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cmsa"))
        .args(["solve", "--instance", path(&inst), "--tmax", "0.1"])
        .env("CMSA_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
}

#[test]
fn exit_codes() {
    assert_eq!(cmsa(&["--help"]).status.code(), Some(0));
    assert_eq!(cmsa(&["solve", "--help"]).status.code(), Some(0));
    assert_eq!(cmsa(&[]).status.code(), Some(1));
    assert_eq!(cmsa(&["solve", "--instance", "x", "--bogus"]).status.code(), Some(1));
    assert_eq!(cmsa(&["solve", "--instance", "x", "--variant", "v7"]).status.code(), Some(1));
    let missing = cmsa(&["solve", "--instance", "/definitely/not/here.dimacs"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dimacs");
    fs::write(&bad, "p edge 2 1\ne 1 3\n").unwrap();
    let out = cmsa(&["solve", "--instance", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gen_bench_stats_convergence_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(
        &spec,
        r#"{"families":[{"family":"erdos_renyi","densities":[0.0]}],"sizes":[12],"instances_per_group":2,"base_seed":1}"#,
    )
    .unwrap();
    let suite = dir.path().join("suite");
    let out = cmsa(&["gen", "--spec", path(&spec), "--out", path(&suite)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_dir(&suite).unwrap().count(), 3);

    let results = dir.path().join("results.jsonl");
    let runs = dir.path().join("runs");
    let out = cmsa(&[
        "bench",
        "--manifest",
        path(&suite.join("manifest.json")),
        "--variants",
        "original,v1,v2",
        "--out",
        path(&results),
        "--tmax",
        "0.2",
        "--runs-dir",
        path(&runs),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&results).unwrap().lines().count(), 6);

    // edgeless graphs: every variant scores 12 everywhere
    let out = cmsa(&["stats", "--results", path(&results), "--alpha", "0.05"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["friedman_statistic"], 0.0);
    assert_eq!(report["equivalence_groups"].as_array().unwrap().len(), 1);
    assert_eq!(report["equivalence_groups"][0].as_array().unwrap().len(), 3);
    let summary = fs::read_to_string(dir.path().join("results_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 4);

    assert_eq!(cmsa(&["stats", "--results", path(&results), "--alpha", "0.2"]).status.code(), Some(2));

    let run_files: Vec<String> =
        fs::read_dir(&runs).unwrap().map(|e| e.unwrap().path().to_str().unwrap().to_string()).collect();
    assert_eq!(run_files.len(), 6);
    let csv = dir.path().join("conv.csv");
    let mut args = vec!["convergence", "--out", path(&csv), "--runs"];
    args.extend(run_files.iter().map(String::as_str));
    let out = cmsa(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&csv).unwrap().starts_with("instance_id,variant,seed,time_s,score\n"));
    assert!(dir.path().join("conv_mean.csv").exists());
}
