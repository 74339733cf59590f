mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::set;
use posimod::cli::InstanceFile;
use posimod::instances::{InstanceDescriptor, WeightedGraph};
use posimod::oracle::parse_value;
use posimod::SubsetMask;
use serde_json::Value as Json;
use tempfile::TempDir;

struct Run {
    code: i32,
    lines: Vec<Json>,
    stderr: String,
}

fn posimod(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_posimod")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    Run {
        code: out.status.code().unwrap(),
        lines: stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, file: &InstanceFile) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, file.to_json()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn witness(report: &Json) -> SubsetMask {
    SubsetMask::from_elements(report["witness"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize))
}

/// The reported witness has the reported value on a fresh oracle.
fn revalidate(path: &Path, report: &Json) {
    let oracle = InstanceFile::load(path).unwrap().instance.build().unwrap();
    let value = parse_value(report["value"].as_str().unwrap()).unwrap();
    assert_eq!(oracle.evaluate(witness(report)).unwrap(), value);
}

fn fixtures() -> (TempDir, Vec<(&'static str, PathBuf)>) {
    let dir = TempDir::new().unwrap();
    let s = set(&[0, 1, 2, 3]);
    let files = vec![
        ("hardness_min", InstanceFile::new(InstanceDescriptor::HardnessMin { n: 8, k: 2, s })),
        ("example1", InstanceFile::new(InstanceDescriptor::Example1 { n: 8, s })),
        (
            "path",
            InstanceFile::new(InstanceDescriptor::CutGraph {
                graph: WeightedGraph::unit(3, &[(0, 1), (1, 2)]).unwrap(),
            }),
        ),
        ("capped", InstanceFile::new(InstanceDescriptor::Cardinality { n: 3, cap: Some(2) })),
        ("hardness_max", InstanceFile::new(InstanceDescriptor::HardnessMaxEven { n: 6, s: Some(s) })),
        ("cardinality", InstanceFile::new(InstanceDescriptor::Cardinality { n: 4, cap: None })),
    ];
    let paths = files.iter().map(|(name, f)| (*name, write(&dir, &format!("{name}.json"), f))).collect();
    (dir, paths)
}

fn fixture<'a>(paths: &'a [(&str, PathBuf)], name: &str) -> &'a Path {
    &paths.iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn verify_exit_codes() {
    let (dir, paths) = fixtures();
    let r = posimod(&["verify", p(fixture(&paths, "hardness_min"))]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.lines[0]["status"], "ok");

    let r = posimod(&["verify", p(fixture(&paths, "example1")), "--law", "monotone"]);
    assert_eq!(r.code, 1);
    let v = &r.lines[0]["violation"];
    assert_eq!(v["law"], "monotone");
    assert_eq!(v["x"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["y"], serde_json::json!([0, 1]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let r = posimod(&["verify", p(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error"));

    let r = posimod(&["verify", p(fixture(&paths, "example1")), "--law", "convex"]);
    assert_eq!(r.code, 2);
}

#[test]
fn min_algorithms() {
    let (_dir, paths) = fixtures();
    let ex = fixture(&paths, "example1");
    let r = posimod(&["min", p(ex), "--algorithm", "general"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.lines[0]["value"], "0");
    assert_eq!(witness(&r.lines[0]), set(&[0, 1, 2, 3]));
    assert_eq!(r.lines[0]["algorithm"], "min-posimodular");
    revalidate(ex, &r.lines[0]);

    let path = fixture(&paths, "path");
    let r = posimod(&["min", p(path), "--algorithm", "d3"]);
    assert_eq!(r.lines[0]["value"], "0");
    assert_eq!(witness(&r.lines[0]), SubsetMask::full(3));
    revalidate(path, &r.lines[0]);

    let capped = fixture(&paths, "capped");
    for alg in ["auto", "brute", "d3", "general"] {
        let r = posimod(&["min", p(capped), "--algorithm", alg]);
        assert_eq!(r.code, 0, "{alg}: {}", r.stderr);
        assert_eq!(r.lines[0]["value"], "1");
        revalidate(capped, &r.lines[0]);
    }
    assert_eq!(posimod(&["min", p(capped)]).lines[0]["algorithm"], "contraction-d3");

    // d3 refuses a range bound of 8
    let r = posimod(&["min", p(fixture(&paths, "hardness_min")), "--algorithm", "d3"]);
    assert_eq!(r.code, 2);
}

#[test]
fn max_extreme_enum() {
    let (_dir, paths) = fixtures();
    let hm = fixture(&paths, "hardness_max");
    let r = posimod(&["max", p(hm)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.lines[0]["value"], "4");
    revalidate(hm, &r.lines[0]);
    assert_eq!(posimod(&["max", p(hm), "--brute"]).lines[0]["value"], "4");

    let r = posimod(&["extreme", p(fixture(&paths, "path"))]);
    let sets = r.lines[0]["sets"].as_array().unwrap();
    assert_eq!(sets.len(), 4);

    let r = posimod(&["enum-min", p(fixture(&paths, "cardinality"))]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines.len(), 4);
    assert!(r.lines.iter().all(|l| l["value"] == "1" && l["witness"].as_array().unwrap().len() == 1));
    let r = posimod(&["enum-min", p(fixture(&paths, "cardinality")), "--limit", "2"]);
    assert_eq!(r.lines.len(), 2);
}

#[test]
fn lowerbound_and_transcript() {
    let r = posimod(&["lowerbound", "8", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.lines[0]["value"], "14");
    assert_eq!(posimod(&["lowerbound", "4", "2"]).lines[0]["value"], "1");
    assert_eq!(posimod(&["lowerbound", "3", "2"]).code, 2);

    let dir = TempDir::new().unwrap();
    let queries: Vec<Vec<usize>> = posimod::subset::combinations(8, 3).take(13).map(|x| x.to_vec()).collect();
    let path = dir.path().join("t.json");
    std::fs::write(&path, serde_json::json!({ "n": 8, "queries": queries }).to_string()).unwrap();
    let r = posimod(&["lowerbound", "8", "2", "--transcript", p(&path)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = witness(&r.lines[0]);
    assert_eq!(s.len(), 4);
    assert!(!queries.iter().any(|q| q.iter().all(|&v| s.contains(v))));

    // every 3-set covers every 4-set
    let all: Vec<Vec<usize>> = posimod::subset::combinations(8, 3).map(|x| x.to_vec()).collect();
    std::fs::write(&path, serde_json::json!({ "n": 8, "queries": all }).to_string()).unwrap();
    let r = posimod(&["lowerbound", "8", "2", "--transcript", p(&path)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.lines[0]["status"], "covered");
}

#[test]
fn stats_and_flags() {
    let (_dir, paths) = fixtures();
    let r = posimod(&["stats", p(fixture(&paths, "capped"))]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = &r.lines[0]["details"];
    assert_eq!(d["minimal_unreachable"], 1);
    assert!(d["closures"].as_u64().unwrap() <= d["closure_bound"].as_u64().unwrap());

    let out = Command::new(env!("CARGO_BIN_EXE_posimod"))
        .args(["--pretty", "min", p(fixture(&paths, "capped"))])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 1);
    let parsed: Json = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["value"], "1");

    let memo = posimod(&["min", p(fixture(&paths, "example1")), "--algorithm", "general"]);
    let raw = posimod(&["--count-raw", "min", p(fixture(&paths, "example1")), "--algorithm", "general"]);
    assert!(raw.lines[0]["oracle_calls"].as_u64() >= memo.lines[0]["oracle_calls"].as_u64());
}

#[test]
fn explicit_table_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("table.json");
    let text = r#"{
        "schema_version": 1,
        "range_bound": 2,
        "instance": {
            "family": "explicit_table",
            "n": 2,
            "table": [["", 0], ["0", 2], [2, 0], ["0,1", "0"]]
        }
    }"#;
    std::fs::write(&path, text).unwrap();
    let r = posimod(&["verify", p(&path)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.lines[0]["violation"]["x"], serde_json::json!([0, 1]));
    assert_eq!(r.lines[0]["violation"]["y"], serde_json::json!([1]));

    std::fs::write(&path, text.replace("\"schema_version\": 1", "\"schema_version\": 7")).unwrap();
    assert_eq!(posimod(&["verify", p(&path)]).code, 2);
}
