use std::process::{Command, Output};

use serde_json::Value;

const REFERENCE: &str = "p=3,n=5,mod=1,2,0,0,0,1";

fn gapn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapn")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_x11() {
    let out = gapn(&["check", "--field", REFERENCE, "--mono", "11"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["is_gapn"], true);
    assert_eq!(v["is_gab"], false);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["value_set"], serde_json::json!([-54, -36, -27, -9, 0, 18, 27, 45]));
    assert_eq!(v["fourier_sum"]["equality"], true);
    assert_eq!(v["fourier_sum"]["value"], "42869574");
    assert_eq!(v["function"]["field"], REFERENCE);
}

#[test]
fn check_x17() {
    let v = json(&gapn(&["check", "--field", REFERENCE, "--mono", "17"]));
    assert_eq!(v["is_gapn"], false);
    assert_eq!(v["is_gab"], true);
    assert_eq!(v["fourier_sum"]["equality"], false);
    assert_eq!(v["max_count"], 6);
}

#[test]
fn check_linear_over_prime_field() {
    // over F_p every count is at most p, so even x is GAPN
    let v = json(&gapn(&["check", "--field", "p=3,n=1,mod=1,1", "--mono", "1"]));
    assert_eq!(v["is_gapn"], true);
    assert_eq!(v["degree"], 1);
    let v = json(&gapn(&["check", "--field", "p=3,n=2", "--mono", "1"]));
    assert_eq!(v["is_gapn"], false);
    assert_eq!(v["multiset"]["9"], 8);
}

#[test]
fn check_named_constructions() {
    for args in [
        vec!["--inverse"],
        vec!["--gold", "2"],
        vec!["--binomial", "1"],
        vec!["--general-gold", "2,2"],
        vec!["--poly", "11:1"],
    ] {
        let mut all = vec!["check", "--field", REFERENCE];
        all.extend(args.iter().copied());
        let out = gapn(&all);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(json(&out)["is_gapn"], true, "{args:?}");
    }
}

#[test]
fn lut_input_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let check = gapn(&["check", "--field", REFERENCE, "--mono", "11"]);
    let report = json(&check);
    let lut: Vec<u64> = {
        let f = gapn_core::report::FunctionRepr::from_json(&report["function"]).unwrap();
        f.table().values().iter().map(|v| v.0 as u64).collect()
    };
    let plain = dir.path().join("x11.txt");
    std::fs::write(&plain, lut.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).unwrap();
    let out_path = dir.path().join("report.json");
    let out = gapn(&[
        "check",
        "--field",
        REFERENCE,
        "--lut",
        plain.to_str().unwrap(),
        "--json",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, json(&out));
    assert_eq!(written["is_gapn"], true);
    assert_eq!(written["degree"], 3);
    assert_eq!(written["value_set"], report["value_set"]);

    let as_json = dir.path().join("x11.json");
    std::fs::write(&as_json, written["function"].to_string()).unwrap();
    let again = json(&gapn(&["check", "--field", REFERENCE, "--lut", as_json.to_str().unwrap()]));
    assert_eq!(again["value_set"], report["value_set"]);
}

#[test]
fn exit_codes() {
    assert_eq!(gapn(&["check", "--field", "p=4,n=1", "--mono", "1"]).status.code(), Some(2));
    assert_eq!(gapn(&["check", "--field", "p=3,n=2,mod=1,0,0", "--mono", "1"]).status.code(), Some(2));
    assert_eq!(gapn(&["check", "--field", REFERENCE, "--poly", "oops"]).status.code(), Some(2));
    assert_eq!(gapn(&["check", "--field", REFERENCE]).status.code(), Some(2));
    assert_eq!(gapn(&["check", "--field", REFERENCE, "--mono", "3", "--inverse"]).status.code(), Some(2));
    assert_eq!(gapn(&["check", "--field", "p=3,n=9", "--mono", "1"]).status.code(), Some(3));
    assert_eq!(gapn(&["search", "--field", "p=3,n=8"]).status.code(), Some(3));
    let out = gapn(&["check", "--field", "p=3,n=2", "--lut", "/nonexistent/table"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

fn search_lines(field: &str) -> Vec<Value> {
    let out = gapn(&["search", "--field", field]);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn search_reference_field() {
    let lines = search_lines(REFERENCE);
    let find = |d: u64| lines.iter().find(|v| v["coset"].as_array().unwrap().contains(&d.into())).unwrap();
    assert_eq!(find(11)["is_gapn"], true);
    assert_eq!(find(17)["is_gapn"], false);
    assert_eq!(find(17)["is_gab"], true);
    assert_eq!(find(241)["is_gapn"], true);
    assert_eq!(find(241)["d"], 161);
    let ds: Vec<u64> = lines.iter().map(|v| v["d"].as_u64().unwrap()).collect();
    let mut sorted = ds.clone();
    sorted.sort_unstable();
    assert_eq!(ds, sorted);
}

#[test]
fn search_char_2() {
    let lines = search_lines("p=2,n=5");
    let apn: Vec<Vec<u64>> = lines
        .iter()
        .filter(|v| v["is_gapn"] == true)
        .map(|v| v["coset"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect())
        .collect();
    for d in [3u64, 5, 15] {
        assert!(apn.iter().any(|c| c.contains(&d)), "x^{d} should be APN");
    }
    // Gold, Welch and Kasami cosets plus the inverse
    assert_eq!(apn.len(), 5);
}

#[test]
fn search_empty_range() {
    assert!(search_lines("p=3,n=1").is_empty());
    assert!(search_lines("p=2,n=1").is_empty());
}

#[test]
fn search_is_reproducible() {
    let a = gapn(&["search", "--field", "p=3,n=4", "--threads", "1"]);
    let b = gapn(&["search", "--field", "p=3,n=4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dualarc_commands() {
    let out = gapn(&["dualarc", "--field", REFERENCE, "--gold", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pairwise_ok"], true);
    assert_eq!(v["triples_ok"], true);
    assert!(v["m_set"].as_array().unwrap().len() >= 4);
    assert_eq!(v["subspaces"][0]["basis"].as_array().unwrap().len(), 5);

    let out = gapn(&["dualarc", "--field", REFERENCE, "--mono", "11", "--munu", "monomial-inverse", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let again = gapn(&["dualarc", "--field", REFERENCE, "--mono", "11", "--munu", "monomial-inverse", "--seed", "3"]);
    assert_eq!(out.stdout, again.stdout);

    assert_eq!(gapn(&["dualarc", "--field", REFERENCE, "--inverse"]).status.code(), Some(4));
    assert_eq!(gapn(&["dualarc", "--field", "p=3,n=1", "--mono", "1"]).status.code(), Some(4));
    assert_eq!(gapn(&["dualarc", "--field", REFERENCE, "--mono", "11", "--m-set", "0,1,2"]).status.code(), Some(4));
    let ok = gapn(&["dualarc", "--field", REFERENCE, "--mono", "11", "--m-set", "0,1,3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["m_set"], serde_json::json!([0, 1, 3]));
}
