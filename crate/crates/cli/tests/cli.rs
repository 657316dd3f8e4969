use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tcw(args: &[&str], stdin: &str) -> Output {
    tcw_env(args, stdin, &[])
}

fn tcw_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tcw"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let o = tcw(args, stdin);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn projective_space_chern_numbers() {
    let fan = ok(&["gen", "cpn", "3"], "");
    assert_eq!(
        ok(&["chern", "--dim", "3"], &fan),
        "{\"c1^3\":64,\"c1*c2\":24,\"c3\":4}\n"
    );
}

#[test]
fn genus_output() {
    let fan = ok(&["gen", "cpn", "2"], "");
    let v: Value = serde_json::from_str(&ok(&["chern", "--genus"], &fan)).unwrap();
    assert_eq!(v["todd"], 1);
    assert_eq!(v["chi_y"], serde_json::json!([1, -1, 1]));
}

#[test]
fn classify_rejects_the_wrong_c1_cubed() {
    let o = tcw(
        &[
            "classify",
            "--dim",
            "3",
            "--chern",
            r#"{"c1^3":62,"c1*c2":24,"c3":4}"#,
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "NotRepresentable");
}

#[test]
fn divisibility_in_dimension_three() {
    let v: Value = serde_json::from_str(&ok(&["divisibility", "--dim", "3"], "")).unwrap();
    assert_eq!(
        v["congruences"],
        serde_json::json!(["c1^3 ≡ 0 mod 2", "c1*c2 ≡ 0 mod 24", "c3 ≡ 0 mod 2"])
    );
}

#[test]
fn gen_chern_classify_reproduces_the_family() {
    let grid: Vec<(Vec<String>, &str)> = [
        (vec!["cpn", "1"], "1"),
        (vec!["cpn", "2"], "2"),
        (vec!["cpn", "3"], "3"),
        (vec!["cpn", "4"], "4"),
        (vec!["kleinschmidt", "3", "0"], "3"),
        (vec!["kleinschmidt", "3", "2"], "3"),
        (vec!["kleinschmidt", "4", "1"], "4"),
        (vec!["kleinschmidt", "4", "1", "2"], "4"),
        (vec!["sigma_a", "-3"], "3"),
        (vec!["sigma_a", "0"], "3"),
        (vec!["sigma_a", "4"], "3"),
        (vec!["delta_ab", "0", "0"], "4"),
        (vec!["delta_ab", "2", "-1"], "4"),
    ]
    .into_iter()
    .map(|(a, d)| (a.into_iter().map(String::from).collect(), d))
    .collect();
    for (args, dim) in grid {
        let mut gen = vec!["gen"];
        gen.extend(args.iter().map(String::as_str));
        let fan = ok(&gen, "");
        let chern = ok(&["chern"], &fan);
        let verdict: Value =
            serde_json::from_str(&ok(&["classify", "--dim", dim], &chern)).unwrap();
        assert_eq!(verdict["status"], "Representable", "{args:?}");
        let spec = &verdict["witness"]["spec"];
        assert_eq!(spec["family"], args[0].as_str(), "{args:?}");
        let params: Vec<i64> = args[1..].iter().map(|p| p.parse().unwrap()).collect();
        assert_eq!(spec["params"], serde_json::json!(params), "{args:?}");
        assert_eq!(spec["blowups"], serde_json::json!([]), "{args:?}");
        let fan_json: Value = serde_json::from_str(&fan).unwrap();
        assert_eq!(verdict["witness"]["fan"], fan_json, "{args:?}");
    }
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        vec!["gen", "delta_ab", "1", "1"],
        vec!["divisibility", "--dim", "4"],
        vec!["obstructions", "--dim", "4"],
        vec![
            "classify",
            "--dim",
            "3",
            "--chern",
            r#"{"c1^3":40,"c1*c2":24,"c3":10}"#,
        ],
    ] {
        assert_eq!(ok(&args, ""), ok(&args, ""), "{args:?}");
    }
}

#[test]
fn fan_tools() {
    let fan = ok(&["gen", "cpn", "3"], "");
    let check: Value = serde_json::from_str(&ok(&["check"], &fan)).unwrap();
    assert_eq!(check["complete"], true);
    assert_eq!(check["projective"], true);
    let blown = ok(&["blowup"], &fan);
    assert_eq!(
        ok(&["chern"], &blown),
        "{\"c1^3\":56,\"c1*c2\":24,\"c3\":6}\n"
    );
    let g: Value = serde_json::from_str(&ok(&["gvector"], &blown)).unwrap();
    assert_eq!(g["g"], serde_json::json!([1, 1]));
    let edge = ok(&["blowup", "--cone", "0,1"], &fan);
    assert_eq!(
        ok(&["chern"], &edge),
        "{\"c1^3\":54,\"c1*c2\":24,\"c3\":6}\n"
    );
    for oracle in [vec![], vec!["--ring"]] {
        let mut args = vec!["eval-monomial", "--rays", "0,0,0"];
        args.extend(oracle);
        assert_eq!(ok(&args, &fan), "{\"value\":1}\n");
    }
}

#[test]
fn fan_from_file() {
    let fan = ok(&["gen", "sigma_a", "1"], "");
    let path = std::env::temp_dir().join(format!("tcw-test-{}.json", std::process::id()));
    std::fs::write(&path, &fan).unwrap();
    let out = ok(&["chern", "--file", path.to_str().unwrap()], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out, "{\"c1^3\":50,\"c1*c2\":24,\"c3\":8}\n");
}

#[test]
fn polytope_input() {
    let p = r#"{"dim":2,"facets":[{"normal":[1,0],"offset":0},{"normal":[0,1],"offset":0},{"normal":[-1,-1],"offset":1}]}"#;
    let fan = ok(&["gen", "polytope"], p);
    assert_eq!(ok(&["chern"], &fan), "{\"c1^2\":9,\"c2\":3}\n");
}

#[test]
fn g_vectors_and_obstructions() {
    let v: Value =
        serde_json::from_str(&ok(&["gcheck", "--dim", "4", "--g", "1,3,2"], "")).unwrap();
    assert_eq!(v["f"], serde_json::json!([8, 24, 32, 16]));
    let v: Value =
        serde_json::from_str(&ok(&["gcheck", "--dim", "4", "--g", "1,2,4"], "")).unwrap();
    assert_eq!(v["valid"], false);
    let v: Value =
        serde_json::from_str(&ok(&["obstructions", "--dim", "4", "--g", "1,0,0"], "")).unwrap();
    assert_eq!(
        v["relations"],
        serde_json::json!(["c4 = 5", "c1*c3 = 50", "c1^4 = 3*c2^2 + 4*c1^2*c2 - 675"])
    );
}

#[test]
fn hattori_stong_reports_failures() {
    let v: Value = serde_json::from_str(&ok(
        &[
            "hattori-stong",
            "--dim",
            "3",
            "--chern",
            r#"{"c1^3":64,"c1*c2":24,"c3":4}"#,
        ],
        "",
    ))
    .unwrap();
    assert_eq!(v["passed"], true);
    let v: Value = serde_json::from_str(&ok(
        &["hattori-stong", "--dim", "3"],
        r#"{"c1^3":64,"c1*c2":12,"c3":4}"#,
    ))
    .unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn selftest_passes() {
    let v: Value = serde_json::from_str(&ok(&["selftest"], "")).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() >= 10);
}

#[test]
fn error_codes() {
    let o = tcw(&["gen", "kleinschmidt", "3", "2", "1"], "");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["code"], "PARAM_ORDER");
    let o = tcw(
        &["chern"],
        "{\"dim\":2,\"rays\":[[1,0],[0,1]],\"max_cones\":[[0,1],[0,1]]}",
    );
    assert_eq!(o.status.code(), Some(2));
    let o = tcw(&["frobnicate"], "");
    assert_eq!(o.status.code(), Some(64));
    let o = tcw(&["classify"], "");
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn budget_is_honoured() {
    let fan = ok(&["gen", "delta_ab", "0", "0"], "");
    let o = tcw_env(
        &["eval-monomial", "--ring", "--rays", "0,0,0,0"],
        &fan,
        &[("TCW_BUDGET", "10")],
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["code"], "ORACLE_BUDGET_EXCEEDED");
    let o = tcw_env(&["check"], &fan, &[("TCW_BUDGET", "lots")]);
    assert_eq!(o.status.code(), Some(64));
}
