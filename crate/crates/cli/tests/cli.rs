use std::path::Path;
use std::process::{Command, Output};

use gbk_core::fano::{LemmaEntry, ScreenReport};
use gbk_core::theorem::{CrossReport, TheoremReport};
use serde_json::Value;

fn gbk(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbk"))
        .args(args)
        .env("GBK_CACHE_DIR", cache)
        .output()
        .expect("spawn gbk")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = gbk(dir.path(), args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}\n{stderr}"));
    (code, v)
}

#[test]
fn bott_on_the_wehler_bundle() {
    let (code, v) = json(&["bott", "twist(dual(wedge(3,sym(3,Q))),2)", "--grass", "2,5"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"3": "1"}));
}

#[test]
fn koszul_ideal_verdict() {
    let (code, v) = json(&[
        "koszul", "--E", "O(2)", "--F", "sym(3,Q)", "--target", "ideal", "--degree", "1", "--grass", "2,5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], serde_json::json!({"kind": "exact", "dim": "1"}));
    assert_eq!(v["table"]["R"], 4);
}

#[test]
fn theorem2_exit_codes() {
    let (code, v) = json(&["check", "thm2", "--F", "sym(4,Q)", "--grass", "1,4"]);
    assert_eq!(code, 1);
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w["group"] == "5.1b"));
    let (code, v) = json(&["check", "thm2", "--F", "sym(3,Q)", "--grass", "1,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn theorem1_on_a_sum_with_line_bundles() {
    let (code, v) = json(&["check", "thm1", "--F", "irr[1,1],O(1)", "--grass", "2,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["projectively_normal"], true);
    assert_eq!(v["connected_components_h0"], "1");
    assert_eq!(v["ambient_N"], 14);
}

#[test]
fn reports_round_trip() {
    let (_, stdout, _) = run(&["check", "thm1", "--F", "sym(3,Q)", "--grass", "2,5"]);
    let r: TheoremReport = serde_json::from_str(&stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout);

    let (_, stdout, _) = run(&["screen", "--F", "sym(3,Q)", "--grass", "2,5"]);
    let r: ScreenReport = serde_json::from_str(&stdout).unwrap();
    assert!(!r.is_fano);
    assert_eq!(r.det_coefficient.to_string(), "6");

    let (_, stdout, _) = run(&["crossval", "--beta", "3,0", "--grass", "2,5"]);
    let r: CrossReport = serde_json::from_str(&stdout).unwrap();
    assert!(!r.mismatches.is_empty());
}

#[test]
fn enumerate_emits_json_lines() {
    let (code, stdout, _) = run(&["enumerate", "--lemma54", "--k", "5"]);
    assert_eq!(code, 0);
    let entries: Vec<LemmaEntry> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(entries
        .iter()
        .any(|e| e.beta == vec![1, 1, 1, 0, 0] && (e.n_min, e.n_max) == (7, 10)));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let (code, _, stderr) = run(&["rank", "tensor(Q", "--grass", "2,5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte 8"), "{stderr}");
    let (code, _, _) = run(&["rank", "irr[1,2,3]", "--grass", "2,5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["rank", "Q"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["koszul", "--E", "O", "--grass", "2,5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["bott", "irr[0,1]", "--grass", "2,5"]);
    assert_eq!(code, 2);
}

#[test]
fn jobs_do_not_change_output() {
    let args = |jobs: &'static str| {
        vec![
            "check",
            "thm2",
            "--F",
            "irr[2,1,0]",
            "--grass",
            "3,7",
            "--no-cache",
            "--jobs",
            jobs,
        ]
    };
    let (_, one, _) = run(&args("1"));
    let (_, many, _) = run(&args("8"));
    assert_eq!(one, many);
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["decompose", "wedge(3,sym(2,Q))", "--grass", "3,6"];
    let cold = gbk(dir.path(), &args).stdout;
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = gbk(dir.path(), &args).stdout;
    let mut bypass: Vec<&str> = args.to_vec();
    bypass.push("--no-cache");
    let uncached = gbk(dir.path(), &bypass).stdout;
    assert_eq!(cold, warm);
    assert_eq!(cold, uncached);
}

#[test]
fn table_format_carries_the_same_numbers() {
    let (_, v) = json(&["hilbert", "--F", "O(4)", "--range", "-2..3", "--grass", "1,4"]);
    let (_, table, _) = run(&[
        "hilbert", "--F", "O(4)", "--range", "-2..3", "--grass", "1,4", "--format", "table",
    ]);
    let rows: Vec<(i64, String)> = table
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().to_string())
        })
        .collect();
    let want: Vec<(i64, String)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["r"].as_i64().unwrap(), x["chi"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(rows, want);

    let (_, table, _) = run(&[
        "bott",
        "twist(dual(wedge(3,sym(3,Q))),2)",
        "--grass",
        "2,5",
        "--format",
        "table",
    ]);
    assert_eq!(table.trim(), "{3: 1}");
}

#[test]
fn rank_dual_and_decompose() {
    let (_, v) = json(&["rank", "wedge(2,sym(3,Q))", "--grass", "2,5"]);
    assert_eq!(v["rank"], "6");
    let (_, v) = json(&["dual", "sym(3,Q)", "--grass", "2,5"]);
    let terms = v["decomposition"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["weight"], serde_json::json!([0, -3, 0, 0, 0]));
    let (_, v) = json(&["euler", "--E", "O(0)", "--F", "O(4)", "--grass", "1,4"]);
    assert_eq!(v["euler"], "2");
}
