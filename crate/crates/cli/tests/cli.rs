use std::path::Path;
use std::process::{Command, Output};

use porc_cli::{Document, SCHEMA_VERSION};
use serde_json::{json, Map, Value};

fn porc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_porc"))
        .args(args)
        .env_remove("PORC_CAP_GROUP_SIZE")
        .env_remove("PORC_CAP_MODULE_SIZE")
        .env_remove("PORC_FORMAT")
        .env_remove("PORC_OUT")
        .env_remove("PORC_THREADS")
        .output()
        .unwrap()
}

fn document(args: &[&str]) -> Document {
    let out = porc(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    Document::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn counts(doc: &Document) -> Vec<&str> {
    doc.results.iter().map(|r| r["count"].as_str().unwrap()).collect()
}

#[test]
fn census_examples() {
    assert_eq!(
        counts(&document(&["census", "--n", "3", "--primes", "3,5,7"])),
        ["5", "5", "5"]
    );
    assert_eq!(counts(&document(&["census", "--n", "1", "--primes", "2"])), ["1"]);
    assert_eq!(
        counts(&document(&["census", "--n", "2", "--primes", "2,3"])),
        ["2", "2"]
    );
    let doc = document(&["census", "--n", "3", "--primes", "5", "--engine", "naive"]);
    assert_eq!(counts(&doc), ["5"]);
    assert_eq!(doc.diagnostics["engine"], "naive");
}

#[test]
fn module_examples() {
    let hall = document(&["hall", "--lambda", "1,1", "--mu", "1", "--nu", "1", "--q", "2"]);
    assert_eq!(counts(&hall), ["3"]);
    let aut = document(&["autcount", "--lambda", "1,1", "--q", "2"]);
    assert_eq!(counts(&aut), ["6"]);
    let formula = document(&["autcount", "--lambda", "2,1", "--q", "4", "--method", "formula"]);
    let counted = document(&["autcount", "--lambda", "2,1", "--q", "4"]);
    assert_eq!(counts(&formula), counts(&counted));
    let t = document(&["typeof", "--q", "3", "--matrix", "1,0;0,1"]);
    assert_eq!(t.results[0]["dims"], json!([2]));
    assert_eq!(t.results[0]["columns"], json!([{"degree": 1, "partitions": ["(1,1)"]}]));
    let o = document(&["oracle", "--n", "3", "--primes", "3"]);
    assert_eq!(counts(&o), ["5"]);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["census", "--n", "1,2,3", "--primes", "2,3"][..],
        &["typeof", "--q", "4", "--matrix", "2,0;0,3", "--matrix", "1"][..],
        &["hall", "--lambda", "2,1", "--mu", "1", "--nu", "2", "--q", "3"][..],
    ] {
        let out = porc(args);
        let text = String::from_utf8(out.stdout).unwrap();
        let doc = Document::from_json(&text).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        assert_eq!(doc.to_json(), text);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["census", "--n", "4", "--primes", "3,5"];
    let one = porc(&[&args[..], &["--threads", "1"]].concat());
    let four = porc(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let out = porc(&[
        "census",
        "--n",
        "3",
        "--primes",
        "3,5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,p,count\n3,3,5\n3,5,5\n");
}

fn synthetic(path: &Path, f: impl Fn(u64) -> i64) {
    let results = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]
        .iter()
        .map(|&p| json!({"n": 4, "p": p, "count": f(p).to_string()}))
        .collect();
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command: "census".into(),
        inputs: json!({}),
        results,
        diagnostics: Map::new(),
        columns: Vec::new(),
    };
    std::fs::write(path, doc.to_json()).unwrap();
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn porc_fit_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let input = path.to_str().unwrap();

    synthetic(&path, |_| 7);
    let doc = document(&["porc-fit", "--input", input, "--modulus", "1", "--degmax", "2"]);
    assert_eq!(doc.results[0]["degree"], 0);
    assert_eq!(doc.results[0]["coefficients"], json!(["7/1"]));

    synthetic(&path, |p| gcd(p - 1, 3) as i64);
    let doc = document(&["porc-fit", "--input", input, "--modulus", "3", "--degmax", "0"]);
    let classes: Vec<(u64, Value)> = doc
        .results
        .iter()
        .map(|r| (r["residue"].as_u64().unwrap(), r["coefficients"].clone()))
        .collect();
    assert_eq!(classes, [(1, json!(["3/1"])), (2, json!(["1/1"]))]);
    assert_eq!(doc.diagnostics["status"], "fitted");

    synthetic(&path, |p| gcd(p - 1, 4) as i64 + p as i64);
    let doc = document(&["porc-fit", "--input", input, "--modulus", "2", "--degmax", "1"]);
    assert_eq!(doc.diagnostics["status"], "rejected");
    assert!(doc.results.is_empty());
    let doc = document(&["porc-fit", "--input", input, "--degmax", "1"]);
    assert_eq!(doc.results[0]["modulus"], 4);
    assert_eq!(doc.results[0]["formula"], "p + 4");
}

#[test]
fn porc_fit_refuses_thin_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    synthetic(&path, |p| p as i64);
    let out = porc(&[
        "porc-fit",
        "--input",
        path.to_str().unwrap(),
        "--modulus",
        "12",
        "--degmax",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc = Document::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.diagnostics["error"]["kind"], "refusal");
}

#[test]
fn exit_codes() {
    let refused = porc(&["oracle", "--n", "6", "--primes", "3", "--cap-module-size", "10"]);
    assert_eq!(refused.status.code(), Some(3));
    let doc = Document::from_json(std::str::from_utf8(&refused.stdout).unwrap()).unwrap();
    assert_eq!(doc.diagnostics["error"]["kind"], "refusal");
    assert!(doc.diagnostics["error"]["estimate"].is_string());

    assert_eq!(
        porc(&["hall", "--lambda", "1", "--mu", "1", "--nu", "", "--q", "6"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(porc(&["census", "--n", "3", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(
        porc(&["census", "--n", "3", "--primes", "3", "--cap-group-size", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn caps_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_porc"))
        .args(["oracle", "--n", "6", "--primes", "3"])
        .env("PORC_CAP_MODULE_SIZE", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selftest_runs_selected_criteria() {
    let doc = document(&["selftest", "--ids", "1,7"]);
    let ids: Vec<u64> = doc.results.iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 7]);
    assert!(doc.results.iter().all(|r| r["passed"] == true));
}
