use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn infodiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infodiff")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn write_chain(dir: &Path) -> PathBuf {
    let path = dir.join("chain.txt");
    std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    path
}

#[test]
fn chain_walkthrough_labels() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_chain(dir.path());
    let o = infodiff(&[
        "intervene", "--graph", graph.to_str().unwrap(), "--ic-f", "0", "--ic-t", "3",
        "--pf", "0.5", "--pt", "0.4", "--td", "0.5", "--tc", "0.1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let labels: Vec<&str> = rows.iter().map(|r| r[4]).collect();
    assert_eq!(labels, ["Infected", "Infected", "Protected", "Protected"]);
    let p_if: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    let p_it: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(p_if, [1.0, 0.5, 0.25, 0.125]);
    assert_eq!(p_it, [0.0, 0.0, 0.4, 1.0]);
}

#[test]
fn engagement_wilcoxon() {
    let csv = repo_file("data/engagement.csv");
    let o = infodiff(&["stats", "wilcoxon", "--input", csv.to_str().unwrap(), "--alt", "x_less"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = v["p_one_tailed"].as_f64().unwrap();
    assert!((p / 4.62e-12).log10().abs() <= 1.0, "p = {p}");
    assert_eq!(v["pairs"], 134);
    assert_eq!(v["zero_handling"], "dropped");
}

#[test]
fn engagement_summary() {
    let csv = repo_file("data/engagement.csv");
    let o = infodiff(&["stats", "summarize", "--input", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["true"]["median"], 1587.5);
    assert_eq!(v["false"]["median"], 4461.0);
}

#[test]
fn empty_er_graph() {
    let o = infodiff(&["generate", "er", "--n", "10", "--p", "0", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "10 0\n");
}

#[test]
fn generation_is_deterministic() {
    let run = || stdout(&infodiff(&["generate", "er", "--n", "40", "--p", "0.2", "--seed", "9"]));
    let first = run();
    assert_eq!(first, run());
    assert_ne!(first, stdout(&infodiff(&["generate", "er", "--n", "40", "--p", "0.2", "--seed", "10"])));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = infodiff(&["diffuse", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: usage: "), "{err}");
}

#[test]
fn bad_parameter_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_chain(dir.path());
    let o = infodiff(&["diffuse", "--graph", graph.to_str().unwrap(), "--p", "1.5", "--t", "0.5", "--ic", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: input: "), "{}", stderr(&o));
}

#[test]
fn missing_file_exits_two() {
    let o = infodiff(&["centrality", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: io: "), "{err}");
}

#[test]
fn centrality_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_chain(dir.path());
    let o = infodiff(&["centrality", "--graph", graph.to_str().unwrap(), "--measure", "degree"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "node,score\n0,1\n1,2\n2,2\n3,1\n");
}

#[test]
fn random_strategy_requires_seed() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_chain(dir.path());
    let o = infodiff(&["diffuse", "--graph", graph.to_str().unwrap(), "--p", "0.5", "--t", "0.5", "--strategy", "random", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn experiment_run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("cfg.json");
    std::fs::write(
        &config,
        r#"{"generator":{"type":"er","n":40,"edge_exist_prob":0.15},"ensemble_size":5,
            "strategies":["degree","page_rank"],
            "model":{"mode":"single","info_starter":2,"transmission_prob":0.5,"threshold":0.5},
            "master_rng_seed":1}"#,
    )
    .unwrap();
    let run = |out: &Path| {
        let o = infodiff(&["experiment", "run", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let printed = run(&a);
    assert_eq!(printed, run(&b));
    assert!(printed.lines().next().unwrap().starts_with("sweep_value,strategy,metric,p_value,degenerate"));
    for file in ["records.csv", "result.json", "comparisons.csv", "advantages.csv"] {
        assert!(a.join(file).is_file(), "{file} missing");
    }
    assert_eq!(std::fs::read(a.join("records.csv")).unwrap(), std::fs::read(b.join("records.csv")).unwrap());
    // 5 graphs x (2 strategies + random) + header
    assert_eq!(std::fs::read_to_string(a.join("records.csv")).unwrap().lines().count(), 16);
}

#[test]
fn preset_files_load() {
    for entry in std::fs::read_dir(repo_file("presets")).unwrap() {
        let path = entry.unwrap().path();
        let dir = tempfile::tempdir().unwrap();
        // a one-graph ensemble keeps each run short
        let mut cfg: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        cfg["ensemble_size"] = 1.into();
        let small = dir.path().join("p.json");
        std::fs::write(&small, cfg.to_string()).unwrap();
        let o = infodiff(&["experiment", "run", "--config", small.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--scale", "desk"]);
        assert!(o.status.success(), "{}: {}", path.display(), stderr(&o));
    }
}
