//! End-to-end runs of the `subindex` binary.

use std::process::{Command, Output};
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subindex"))
        .args(args)
        .env_remove("SUBINDEX_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn schema() -> &'static JSONSchema {
    static S: OnceLock<JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../report.schema.json");
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        JSONSchema::compile(&v).expect("schema compiles")
    })
}

/// Runs with JSON output, checks exit 0 and the schema, returns the report.
fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    if let Err(errs) = schema().validate(&v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    v
}

fn text(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn dl_infinity_of_z10_generator_pair() {
    let v = json(&["group", "--spec", "Z10", "--subset", "0,1", "--analysis", "dlinf"]);
    assert_eq!(v["result"]["dl_infinity"], 4);
    assert_eq!(v["result"]["diameter"], 5);
    assert_eq!(v["paper_anchor"], "difference length and Cayley diameter");
}

#[test]
fn z6_is_unstable_with_witness() {
    let v = json(&["classify", "--spec", "Z6", "--quiet"]);
    let r = &v["result"];
    assert_eq!(r["verdict"], "unstable");
    assert_eq!(r["two_sided_stable"], false);
    let idx: Vec<u64> = r["counterexample"]["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(idx.iter().any(|&x| x != idx[0]));
}

#[test]
fn positive_squares_have_subindices_three_and_four() {
    let v = json(&["zset", "--sequence", "squares", "--from", "1", "--op", "rsfa", "--radius", "50"]);
    let r = &v["result"];
    assert_eq!((r["lower"].as_u64(), r["upper"].as_u64()), (Some(3), Some(4)));
    assert_eq!(r["status"], "Proven");
    assert!(r["witnesses_min"].as_array().unwrap().contains(&serde_json::json!([0, 1, 2])));
}

#[test]
fn z8_spectrum_as_csv() {
    let out = text(&["classify", "--spec", "Z8", "--quiet", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("spectrum,value"));
    let sub: Vec<u64> = lines
        .filter_map(|l| l.strip_prefix("subindex,"))
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(sub, [1, 2, 3, 4, 8]);
}

#[test]
fn fibonacci_certificate_rows() {
    let out = text(&["seq", "--analysis", "fibonacci", "--lo", "10", "--hi", "20", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let col = headers.iter().position(|h| h == "certified").unwrap();
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| &r[col] == "true"));
}

#[test]
fn empty_witness_list_is_valid_json() {
    // A finite Dif has no finite subfactor, so both witness lists are empty.
    let v = json(&["zset", "--dif", "mod 1: ; flips: 0,1,-1", "--op", "rsfa"]);
    assert_eq!(v["result"]["witnesses_min"], serde_json::json!([]));
    assert_eq!(v["result"]["lower"], "aleph0");
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["classify", "--spec", "Z2xZ8", "--seed", "7", "--quiet", "--exhaustive-limit", "8"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["subset", "--spec", "D8", "--subset", "0,1,4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_keys_are_sorted() {
    fn check(v: &Value) {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                let mut sorted = keys.clone();
                sorted.sort();
                assert_eq!(keys, sorted);
                m.values().for_each(check);
            }
            Value::Array(a) => a.iter().for_each(check),
            _ => {}
        }
    }
    check(&json(&["subset", "--spec", "S3", "--subset", "0,1"]));
}

#[test]
fn every_command_validates_against_schema() {
    let runs: &[&[&str]] = &[
        &["group", "--spec", "S4"],
        &["group", "--spec", "Z12", "--subset", "0,1,5", "--analysis", "dlinf", "--side", "both"],
        &["group", "--spec", "D8", "--subset", "0,1", "--analysis", "dif", "--side", "both"],
        &["group", "--spec", "Z8", "--subset", "0,1", "--analysis", "complement", "--adjoin-identity"],
        &["group", "--spec", "Z6", "--subset", "0,1", "--analysis", "generating"],
        &["group", "--spec", "Z12", "--subset", "0,1,2", "--analysis", "cover"],
        &["group", "--spec", "A4", "--subset", "0,1", "--analysis", "pack", "--side", "both"],
        &["subset", "--spec", "Z6", "--subset", "0,1", "--op", "rsfa", "--mode", "first-min"],
        &["subset", "--spec", "Z4^2", "--subset", "0,1", "--op", "subf1"],
        &["subset", "--spec", "Z8", "--subset", "0,4", "--op", "singleton"],
        &["classify", "--spec", "Q8", "--quiet"],
        &["classify", "--spec", "Z32", "--quiet", "--samples", "200"],
        &["zset", "--sequence", "kth_powers", "--k", "2", "--op", "infer"],
        &["zset", "--sequence", "squares", "--op", "infer", "--transform", "identity", "--window", "5000"],
        &["zset", "--epset", "mod 3: 0", "--op", "dif"],
        &["zset", "--epset", "mod 4: 0 ; flips: 1", "--op", "union", "--other", "mod 6: 0"],
        &["zset", "--epset", "mod 4: 0", "--op", "scale", "--m", "-3"],
        &["zset", "--epset", "mod 4: 0", "--op", "shift", "--t", "-1"],
        &["zset", "--sequence", "squares", "--from", "1", "--op", "verify", "--b", "0,1,2"],
        &["zset", "--epset", "mod 3: 0", "--op", "scaling", "--m", "-2"],
        &["zset", "--op", "squares-complement", "--from", "3"],
        &["zset", "--op", "intervals", "--n", "3"],
        &["seq", "--sequence", "factorials"],
        &["seq", "--sequence", "squares", "--analysis", "gaps"],
        &["seq", "--sequence", "powers", "--k", "3", "--analysis", "growth"],
        &["seq", "--sequence", "kth_powers", "--k", "2", "--analysis", "dlinf"],
        &["seq", "--analysis", "pow2", "--lo", "2", "--hi", "12"],
        &["seq", "--analysis", "maillet", "--even-bound", "100", "--prime-bound", "1000"],
        &["verify", "--op", "multiplicativity", "--spec", "Z12", "--subgroup", "0,3,6,9", "--subset", "0,3"],
        &["verify", "--op", "complement-index", "--spec", "D8"],
        &["verify", "--op", "singleton", "--spec", "Z6", "--subset", "0,3"],
        &["verify", "--op", "product", "--spec", "Z2", "--subset", "0", "--spec2", "Z3", "--subset2", "0,1"],
        &["verify", "--op", "gcd-law", "--a", "4", "--b", "6"],
        &["verify", "--op", "pervasive", "--n", "4"],
    ];
    for args in runs {
        json(args);
    }
}

#[test]
fn verification_results() {
    let v = json(&["verify", "--op", "gcd-law", "--a", "6", "--b", "9"]);
    assert_eq!((v["result"]["lower"].as_u64(), v["result"]["holds"].as_bool()), (Some(3), Some(true)));
    let v = json(&["verify", "--op", "pervasive", "--n", "4"]);
    assert_eq!(v["result"]["lower"], 5);
    let v = json(&["zset", "--op", "squares-complement", "--from", "0"]);
    assert_eq!(v["result"]["dif"], "mod 4: 0,1,3 ; flips: ");
    let v = json(&["seq", "--sequence", "factorials"]);
    assert_eq!(v["result"]["verdict"]["by"], "d");
    let v = json(&["zset", "--epset", "mod 3: 0", "--op", "scaling", "--m", "-2"]);
    assert_eq!(v["result"]["holds"], true);
}

#[test]
fn bfile_input() {
    let dir = std::env::temp_dir().join(format!("subindex-bfile-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("squares.txt");
    let body: String = (0..=400u64).map(|n| format!("{n} {}\n", n * n)).collect();
    std::fs::write(&path, format!("# squares\n{body}")).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["seq", "--bfile", p, "--analysis", "screen"]);
    assert_eq!(v["input"]["sequence"], "squares");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // 2: invalid input.
    assert_eq!(run(&["group", "--spec", "Q7"]).status.code(), Some(2));
    assert_eq!(run(&["group", "--spec", "Z4", "--subset", "0,9"]).status.code(), Some(2));
    assert_eq!(run(&["group", "--spec", "Z4", "--unknown-flag"]).status.code(), Some(2));
    assert_eq!(run(&["zset", "--epset", "mod 0: 1", "--op", "dif"]).status.code(), Some(2));
    assert_eq!(run(&["subset", "--spec", "Z4", "--subset", "0", "--cap", "0"]).status.code(), Some(2));
    // 1: computational cap.
    assert_eq!(run(&["subset", "--spec", "Z20", "--subset", "0", "--cap", "10"]).status.code(), Some(1));
    assert_eq!(run(&["group", "--spec", "Z100", "--subset", "0,1", "--analysis", "cover"]).status.code(), Some(1));
    let out = run(&["zset", "--dif", "mod 4: 0,1,3", "--op", "rsfa", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("radius"));
    let capped = Command::new(env!("CARGO_BIN_EXE_subindex"))
        .args(["group", "--spec", "S5"])
        .env("SUBINDEX_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
}

#[test]
fn progress_goes_to_stderr_only() {
    let out = run(&["classify", "--spec", "Z2^3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("progress:"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "stable");
}
