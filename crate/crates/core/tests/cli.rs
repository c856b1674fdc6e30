mod common;

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylcluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec(name: &str) -> String {
    common::fixture(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn node_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=") && !l.contains(" -- ")).count()
}

/// The report with its timing field removed.
fn without_timing(o: &Output) -> String {
    let text = stdout(o);
    match serde_json::from_str::<serde_json::Value>(text.trim()) {
        Ok(mut v) => {
            v.as_object_mut().map(|m| m.remove("elapsed_ms"));
            v.to_string()
        }
        Err(_) => text,
    }
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn mutate_prints_cluster_and_reduced_sequence() {
    let w = spec("weyl1.toml");
    let o = run(&["mutate", "--spec", &w, "1R", "1R"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("cluster: xi*x*xi^-1\n"));
    let o = run(&["mutate", "--spec", &w, "1R 1L"]);
    assert_eq!(stdout(&o), "cluster: x\norientations: 1\nreduced: []\n");
    let o = run(&["mutate", "--spec", &w]);
    assert!(stdout(&o).starts_with("cluster: x\n"));
}

#[test]
fn mutate_output_reparses() {
    let w = spec("weyl2.toml");
    let o = run(&["mutate", "--spec", &w, "1R 2L 1R", "--format", "json-lines"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let cluster = v["results"]["cluster"].as_array().unwrap();
    assert_eq!(cluster.len(), 2);
    for c in cluster {
        let text = c.as_str().unwrap();
        let t: weylcluster::preseed::ClusterTriple = text.parse().unwrap();
        assert_eq!(t.render(true), text);
    }
}

#[test]
fn mutate_errors_carry_columns() {
    let w = spec("weyl1.toml");
    let o = run(&["mutate", "--spec", &w, "1R 2R"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 4"), "{}", stderr(&o));
    let o = run(&["mutate", "--spec", &w, "1X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 1"));
}

#[test]
fn graph_sizes() {
    let o = run(&["graph", "--spec", &spec("weyl1.toml"), "--depth", "3"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph exchange {"));
    assert_eq!(node_count(&dot), 7);
    assert_eq!(dot.matches(" -- ").count(), 6);
    let o = run(&["graph", "--spec", &spec("weyl1.toml"), "--depth", "0"]);
    assert_eq!(node_count(&stdout(&o)), 1);
    let o = run(&["graph", "--spec", &spec("weyl2.toml"), "--depth", "2"]);
    assert_eq!(node_count(&stdout(&o)), 13);
}

#[test]
fn zigzag_summaries() {
    let o = run(&["zigzag", "eta"]);
    assert!(stdout(&o).contains("length 1 height 0"));
    let o = run(&["zigzag", "xi^-1 * eta"]);
    let out = stdout(&o);
    assert!(out.contains("length 2 height 1"));
    assert!(out.contains("left end xi^-1*eta@0"));
    assert!(out.contains("right end eta*eps^-1@2"));
    let o = run(&["zigzag", "xi^-1 * eta", "--variant1"]);
    assert!(stdout(&o).contains("length 1 height 0"));
    let o = run(&["zigzag", "xi^-1*eta", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph zigzag {"));
    assert_eq!(stdout(&o).matches("shape=box").count(), 2);
}

#[test]
fn zigzag_parse_error_has_position() {
    let o = run(&["zigzag", "xi^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 4: expected integer exponent"));
}

#[test]
fn verify_suites() {
    let w = spec("weyl1.toml");
    let o = run(&["verify", "gwa", "--spec", &w]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("status pass\n"));
    let o = run(&["verify", "weylline", "--spec", &w, "--bound", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("signs +-+-+-+-+-+\n"));
    let o = run(&["verify", "gwa", "--spec", &spec("quantum.toml")]);
    assert!(o.status.success());
}

#[test]
fn closed_form_discrepancy_does_not_fail() {
    let w = spec("weyl1.toml");
    for conv in ["literal", "weyl-eval"] {
        let o = run(&["verify", "closedform", "--spec", &w, "--convention", conv]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).ends_with("status discrepancy\n"));
    }
}

#[test]
fn unknown_suite_is_an_error() {
    let o = run(&["verify", "nope", "--spec", &spec("weyl1.toml")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite 'nope'"));
}

#[test]
fn failing_check_exits_one() {
    // the commutator pattern only holds for the Weyl binomial
    let o = run(&["verify", "weylline", "--spec", &spec("quantum.toml"), "--bound", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("status fail\n"));
}

#[test]
fn oracle_check_report() {
    let o = run(&["oracle-check", "--spec", &spec("weyl1.toml"), "--format", "json-lines"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["results"]["gwa"]["checks"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["weylline"]["entries"].as_array().unwrap().len(), 11);
}

#[test]
fn stepback_and_correspondence() {
    let w = spec("weyl1.toml");
    let o = run(&["stepback", "eps*eta^-1", "--spec", &w, "--count", "1"]);
    assert!(stdout(&o).contains("value t\n"));
    let o = run(&["correspondence", "--spec", &w, "--depth", "4"]);
    assert!(o.status.success());
    let o = run(&["correspondence", "--spec", &w, "--depth", "4", "--format", "json-lines"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn spec_errors() {
    let dir = std::env::temp_dir().join(format!("weylcluster-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "generators = [\"e\"]\ncolour = 1\n").unwrap();
    let o = run(&["graph", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
    let o = run(&["graph", "--spec", dir.join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let w = spec("weyl2.toml");
    for args in [
        vec!["graph", "--spec", &w, "--depth", "2"],
        vec!["orbit", "--spec", &w, "--depth", "3", "--format", "json-lines"],
        vec!["verify", "involution", "--spec", &w],
        vec!["zigzag", "xi^-1*eta", "--window", "6", "--format", "json-lines"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(without_timing(&a), without_timing(&b), "{args:?}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let w = spec("weyl1.toml");
    let o = Command::new(env!("CARGO_BIN_EXE_weylcluster"))
        .args(["verify", "involution", "--spec", &w, "--bound", "1", "--format", "json-lines"])
        .env(weylcluster::cli::SEED_ENV, "42")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["inputs"]["seed"], "42");
}
