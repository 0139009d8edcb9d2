use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupsparse")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn case_study(dir: &TempDir) -> (PathBuf, PathBuf) {
    let structure = write(dir, "cs.json", r#"{"ground_size": 11, "groups": [[1,2,3,4,5],[4,5,6,7,8],[7,8,9,10,11]]}"#);
    let signal = write(dir, "cs.csv", "0\n0\n1\n1\n1\n0\n1\n1\n1\n0\n0\n");
    (structure, signal)
}

#[test]
fn classify_reports_class_and_certificate() {
    let dir = TempDir::new().unwrap();
    let (structure, _) = case_study(&dir);
    assert_eq!(stdout(&["classify", "--structure", s(&structure)]), "LooplessPairwise, LooplessPairwiseTU\n");
    let looped = dir.path().join("g1.json");
    stdout(&["gen-structure", "--kind", "looped", "--out", s(&looped)]);
    assert_eq!(stdout(&["classify", "--structure", s(&looped)]), "General (loop G3-G4-G6-G5), Unknown\n");
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"ground_size": 3, "groups": [[1, 4]]}"#);
    let out = run(&["classify", "--structure", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let (structure, _) = case_study(&dir);
    let short = write(&dir, "short.csv", "1\n2\n");
    let out = run(&["solve", "--structure", s(&structure), "--signal", s(&short), "--groups", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_methods_agree_on_case_study() {
    let dir = TempDir::new().unwrap();
    let (structure, signal) = case_study(&dir);
    let base = ["solve", "--structure", s(&structure), "--signal", s(&signal)];
    let dp = stdout(&[&base[..], &["--groups", "2", "--method", "dp"]].concat());
    assert_eq!(dp.lines().nth(1).unwrap(), "dp,1;3,1;2;3;4;5;7;8;9;10;11,2,10,6.0,0.0");
    let lp = stdout(&[&base[..], &["--method", "lp:1"]].concat());
    assert!(lp.lines().nth(1).unwrap().starts_with("lp:1,1;3,"));
    let oracle = stdout(&[&base[..], &["--groups", "2", "--method", "oracle", "--format", "json"]].concat());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&oracle).unwrap();
    assert_eq!(rows[0]["objective"], 6.0);
    assert_eq!(rows[0]["error"], 0.0);
}

#[test]
fn dp_on_general_structure_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let looped = dir.path().join("g1.json");
    stdout(&["gen-structure", "--kind", "looped", "--out", s(&looped)]);
    let signal = write(&dir, "x.csv", "1\n1\n0\n0\n0\n0\n1\n1\n");
    let out = run(&["solve", "--structure", s(&looped), "--signal", s(&signal), "--groups", "2"]);
    assert_eq!(out.status.code(), Some(3));
    // the oracle handles it
    let ok = stdout(&["solve", "--structure", s(&looped), "--signal", s(&signal), "--groups", "2", "--method", "oracle"]);
    assert!(ok.lines().nth(1).unwrap().ends_with(",4.0,0.0"));
}

#[test]
fn pareto_case_study_is_concave() {
    let dir = TempDir::new().unwrap();
    let (structure, signal) = case_study(&dir);
    let csv = stdout(&["pareto", "--structure", s(&structure), "--signal", s(&signal)]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "G,f_of_G,on_hull,lambda_attaining,group_indices");
    assert_eq!(lines.len(), 4);
    let values: Vec<(&str, &str)> = lines[1..].iter().map(|l| {
        let f: Vec<&str> = l.split(',').collect();
        (f[1], f[2])
    }).collect();
    assert_eq!(values, vec![("4", "true"), ("6", "true"), ("6", "true")]);

    let zero = write(&dir, "zero.csv", &"0\n".repeat(11));
    let csv = stdout(&["pareto", "--structure", s(&structure), "--signal", s(&zero)]);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(1) == Some("0")));
}

#[test]
fn pareto_on_hierarchy_has_off_hull_points() {
    let dir = TempDir::new().unwrap();
    let haar = dir.path().join("h.csv");
    stdout(&["gen-signal", "--sparsity", "25", "--haar-out", s(&haar), "--out", s(&dir.path().join("y.csv"))]);
    // coefficients as a signal over the root-path structure of the Haar tree
    let coeffs: String = std::fs::read_to_string(&haar)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| format!("{}\n", l.split(',').nth(1).unwrap()))
        .collect();
    let coeffs = write(&dir, "c.csv", &coeffs);
    let groups: Vec<String> = (1..=64usize)
        .map(|i| {
            let mut path = vec![i];
            let mut v = i;
            while v > 1 {
                v = if v == 2 { 1 } else { (v - 1) / 2 + 1 };
                path.push(v);
            }
            path.sort();
            format!("{path:?}")
        })
        .collect();
    let structure = write(&dir, "tree.json", &format!(r#"{{"ground_size": 64, "groups": [{}]}}"#, groups.join(",")));
    assert_eq!(stdout(&["classify", "--structure", s(&structure)]), "Hierarchical, ConsecutiveOnesTU\n");
    let csv = stdout(&["pareto", "--structure", s(&structure), "--signal", s(&coeffs)]);
    assert!(csv.lines().skip(1).any(|l| l.split(',').nth(2) == Some("false")));
}

#[test]
fn haar_experiment_dp_dominates() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("haar.csv");
    stdout(&["haar-experiment", "--out", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut dp = BTreeMap::new();
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (k, err, viol): (usize, f64, usize) = (f[2].parse().unwrap(), f[3].parse().unwrap(), f[4].parse().unwrap());
        if f[0] == "dp" {
            dp.insert(k, err);
        } else {
            rows.push((f[0].to_string(), k, err, viol));
        }
    }
    let hier: Vec<_> = rows.iter().filter(|r| r.0 == "hierarchical-group-lasso").collect();
    assert!(hier.iter().all(|r| r.3 == 0));
    for r in &hier {
        if r.1 > 0 {
            assert!(dp[&r.1] <= r.2 + 1e-9, "K={}", r.1);
        }
    }
    let attained: BTreeSet<usize> = rows.iter().map(|r| r.1).collect();
    assert!((1..=25).any(|k| !attained.contains(&k)));
    assert!(rows.iter().any(|r| r.0 == "latent-group-lasso" && r.3 > 0));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&["gen-structure", "--kind", "loopless", "--groups", "20", "--seed", "9"]);
    let b = stdout(&["gen-structure", "--kind", "loopless", "--groups", "20", "--seed", "9"]);
    assert_eq!(a, b);
    let structure = write(&dir, "s.json", &a);
    let n = serde_json::from_str::<serde_json::Value>(&a).unwrap()["ground_size"].as_u64().unwrap() as usize;
    let signal = write(&dir, "x.csv", &(0..n).map(|i| format!("{}\n", (i * 7 % 5) as f64 - 2.0)).collect::<String>());
    let args = ["pareto", "--structure", s(&structure), "--signal", s(&signal), "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let x1 = stdout(&["gen-signal", "--length", "32", "--pieces", "5", "--seed", "2"]);
    assert_eq!(x1, stdout(&["gen-signal", "--length", "32", "--pieces", "5", "--seed", "2"]));
    assert_eq!(x1.lines().count(), 32);
}
