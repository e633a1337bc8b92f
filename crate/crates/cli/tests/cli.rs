use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use wmrkit::io::{read_decisions, read_power_report, read_wmr_rules, CsvTable};

fn wmrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmrkit")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wmrkit(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PREDICTIONS: &str = "\
sample_id,true_label,feat_0,clf_0,clf_1,clf_2
a,x,0.1,x,x,y
b,y,0.9,y,y,y
c,x,0.2,x,y,y
d,y,0.8,y,x,y
";

const VALIDATION: &str = "\
sample_id,true_label,feat_0,clf_0,clf_1,clf_2
v1,x,0.1,x,x,y
v2,x,0.2,x,x,x
v3,y,0.9,y,x,y
v4,y,0.7,y,y,x
v5,x,0.3,x,y,y
";

#[test]
fn power_example_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let game = write(&dir, "g.toml", "weights = [2, 1, 1]\nquota = 2\n");
    let text = stdout(&["power", "--game", s(&game)]);
    assert!(text.contains("0,3,0.6,\n1,1,0.2,\n2,1,0.2,\n"), "{text}");
    let report = read_power_report(&text, "stdout").unwrap();
    assert_eq!(report.normalized, vec![0.6, 0.2, 0.2]);

    let mc = stdout(&["power", "--game", s(&game), "--index", "shapley", "--method", "mc", "--trials", "20000", "--seed", "9"]);
    let report = read_power_report(&mc, "stdout").unwrap();
    assert_eq!(report.trials, Some(20000));
    assert_eq!(report.raw.iter().sum::<u64>(), 20000);
    assert!(mc.contains("# seed=9\n"));
}

#[test]
fn wmr_enum_lists_three_rules_for_four_voters() {
    let text = stdout(&["wmr", "enum", "--n", "4"]);
    let rules = read_wmr_rules(&text, "stdout").unwrap();
    let weights: Vec<Vec<u32>> = rules.iter().map(|r| r.weights.clone()).collect();
    assert_eq!(weights, vec![vec![1, 0, 0, 0], vec![1, 1, 1, 0], vec![2, 1, 1, 1]]);
    assert!(rules.iter().all(|r| r.rule.is_decisive()));

    let net = stdout(&["wmr", "network", "--n", "4"]);
    let (_, rows) = CsvTable::parse(&net, "stdout", &["a", "b", "distance"]).unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn jury_example() {
    let text = stdout(&["jury", "--skills", "0.6,0.6,0.6"]);
    let (header, rows) = CsvTable::parse(&text, "stdout", &["quantity", "player", "value"]).unwrap();
    assert_eq!(header.get("seed"), Some("0"));
    let competence: Vec<&str> = rows.iter().filter(|(_, r)| r[0] == "competence").map(|(_, r)| r[2].as_str()).collect();
    assert_eq!(competence, vec!["0.648"]);
    assert!(text.contains("decisiveness,0,0.48\n"));
}

#[test]
fn jury_with_files_teams_and_optimal_weights() {
    let dir = TempDir::new().unwrap();
    let skills = write(&dir, "s.csv", "0.6,0.6,0.6\n0.6,0.6,0.6\n0.6,0.6,0.6\n");
    let teams = write(
        &dir,
        "t.toml",
        "[[team]]\nmembers = [0, 1, 2]\n[[team]]\nmembers = [3, 4, 5]\n[[team]]\nmembers = [6, 7, 8]\n",
    );
    let text = stdout(&["jury", "--skills-file", s(&skills), "--teams", s(&teams)]);
    assert!(text.contains("competence,,0.73343232\n"), "{text}");
    assert!(text.contains("indirect_competence,,0.715516416\n"), "{text}");

    let opt = stdout(&["jury", "--skills", "0.9,0.6,0.6", "--optimal"]);
    assert!(opt.contains("competence,,0.9\n"), "{opt}");

    let mc = stdout(&["jury", "--skills", "0.6,0.6,0.6", "--method", "mc", "--trials", "10000", "--seed", "1"]);
    assert!(mc.contains("competence_stderr"));
}

#[test]
fn efficiency_exact_and_ballots() {
    let text = stdout(&["efficiency", "--m", "3", "--voters", "3", "--scores", "borda"]);
    assert!(text.contains("with_winner,204\n") && text.contains("credit,186\n"), "{text}");

    let dir = TempDir::new().unwrap();
    let ballots = write(&dir, "b.csv", "A,B,C\nB,C,A\nC,A,B\n");
    let cycle = stdout(&["efficiency", "--ballots", s(&ballots)]);
    assert!(cycle.contains("# condorcet_winner=none\n"), "{cycle}");
}

#[test]
fn fuse_rules_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let preds = write(&dir, "p.csv", PREDICTIONS);
    let valid = write(&dir, "v.csv", VALIDATION);
    let costs = write(&dir, "c.csv", "true\\pred,x,y\nx,1,0\ny,0,1\n");

    let text = stdout(&["fuse", "--predictions", s(&preds), "--costs", s(&costs)]);
    let (header, rows) = read_decisions(&text, "stdout").unwrap();
    let decided: Vec<&str> = rows.iter().map(|r| r.decision.as_deref().unwrap()).collect();
    assert_eq!(decided, vec!["x", "y", "y", "y"]);
    assert_eq!(header.get("accuracy"), Some("0.75"));
    assert_eq!(header.get("expected_gain"), Some("0.75"));

    for rule in ["wmr", "adaptive", "sum", "product", "median", "trimmed:0.2"] {
        let text = stdout(&["fuse", "--predictions", s(&preds), "--validation", s(&valid), "--rule", rule, "--k", "3"]);
        let (_, rows) = read_decisions(&text, "stdout").unwrap();
        assert_eq!(rows.len(), 4, "{rule}");
    }
}

#[test]
fn report_aggregates_inputs() {
    let dir = TempDir::new().unwrap();
    let game = write(&dir, "g.toml", "weights = [2, 1, 1]\nquota = 2\n");
    let preds = write(&dir, "p.csv", PREDICTIONS);
    let text = stdout(&["report", "--game", s(&game), "--skills", "0.6,0.6,0.6", "--predictions", s(&preds)]);
    let (_, rows) = CsvTable::parse(&text, "stdout", &["section", "item", "value"]).unwrap();
    let find = |section: &str, item: &str| {
        rows.iter().find(|(_, r)| r[0] == section && r[1] == item).map(|(_, r)| r[2].clone())
    };
    assert_eq!(find("banzhaf", "0").as_deref(), Some("0.6"));
    assert_eq!(find("shapley", "0").as_deref(), Some("0.666666666667"));
    assert_eq!(find("jury", "competence_equal").as_deref(), Some("0.648"));
    assert_eq!(find("fusion_accuracy", "majority").as_deref(), Some("0.75"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let game = write(&dir, "g.toml", "weights = [3, 2, 2, 1, 1]\n");
    let preds = write(&dir, "p.csv", PREDICTIONS);
    let valid = write(&dir, "v.csv", VALIDATION);
    let runs: Vec<Vec<&str>> = vec![
        vec!["power", "--game", s(&game), "--method", "mc", "--trials", "50000", "--seed", "42"],
        vec!["power", "--game", s(&game), "--index", "shapley"],
        vec!["wmr", "enum", "--n", "5"],
        vec!["jury", "--skills", "0.6,0.7,0.8", "--method", "mc", "--trials", "50000", "--seed", "5"],
        vec!["efficiency", "--m", "4", "--voters", "5", "--mode", "mc", "--trials", "20000", "--seed", "8"],
        vec!["fuse", "--predictions", s(&preds), "--validation", s(&valid), "--rule", "adaptive", "--k", "2"],
    ];
    for args in runs {
        let a = wmrkit(&args);
        let b = wmrkit(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("rules.csv");
    let printed = stdout(&["wmr", "enum", "--n", "3"]);
    stdout(&["wmr", "enum", "--n", "3", "--output", s(&out)]);
    assert_eq!(fs::read_to_string(&out).unwrap(), printed);
}

#[test]
fn exit_codes_distinguish_failures() {
    assert_eq!(wmrkit(&["jury", "--skills", "0.6", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(wmrkit(&["fuse", "--predictions", "/nonexistent.csv", "--rule", "bogus"]).status.code(), Some(3));

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.csv", "0.6\n0.7,abc\n");
    let out = wmrkit(&["jury", "--skills-file", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.csv:2:2: expected a number, found \"abc\""), "{err}");

    let preds = write(&dir, "p.csv", PREDICTIONS);
    assert_eq!(wmrkit(&["fuse", "--predictions", s(&preds), "--rule", "bogus"]).status.code(), Some(2));

    let out = wmrkit(&["wmr", "enum", "--n", "8"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("at most 7"));
}
