use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use rootsub_cli::InputDescription;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn preset(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "presets", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootsub")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn weights(v: &Value) -> Vec<Vec<i64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r["weight"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
        .collect()
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 8] = [
        (&["roots", &fixture("orthant2.txt")], 0),
        (&["dual", &fixture("degenerate.txt")], 2),
        (&["classify", &fixture("not-toric.txt")], 3),
        (&["classify", &fixture("f1.txt"), "--box", "0"], 4),
        (&["classify", &fixture("orthant2.txt")], 2),
        (&["roots", &fixture("orthant2.txt"), "--filter-dominant"], 2),
        (&["roots", "/nonexistent/input.txt"], 2),
        (&["verify"], 0),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if code != 0 {
            assert!(out.stdout.is_empty());
            assert!(String::from_utf8_lossy(&out.stderr).starts_with("rootsub: "));
        }
    }
}

#[test]
fn input_echo_round_trips() {
    for name in ["orthant3.txt", "so3.txt", "f1.txt", "f1-horospherical.txt", "f1-gbar.txt", "line.txt", "act.txt"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = InputDescription::parse(&text).unwrap();
        let echo = InputDescription::parse(&parsed.render()).unwrap();
        assert_eq!(echo, parsed, "{name}");
    }
    let v = json(&["roots", &fixture("so3.txt"), "--json"]);
    let echoed = InputDescription::parse(v["input"].as_str().unwrap()).unwrap();
    let original = InputDescription::parse(&std::fs::read_to_string(fixture("so3.txt")).unwrap()).unwrap();
    assert_eq!(echoed, original);
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rootsub"))
        .args(["roots", "-", "--json", "--box", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"kind: cone\nrank: 1\ngenerators:\n1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["box_bound"], 2);
    assert_eq!(weights(&v["results"]["rays"][0]["roots"]), vec![vec![-1]]);
}

#[test]
fn so3_dominant_roots() {
    let v = json(&["roots", &fixture("so3.txt"), "--filter-dominant", "--json"]);
    let all: Vec<Vec<i64>> =
        v["results"]["rays"].as_array().unwrap().iter().flat_map(|r| weights(&r["roots"])).collect();
    assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0], vec![3, -1], vec![4, -2]]);
}

#[test]
fn box_flag_overrides_file() {
    let v = json(&["roots", &fixture("orthant2.txt"), "--box", "1", "--json"]);
    assert_eq!(v["box_bound"], 1);
    assert_eq!(v["results"]["grid"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_f1() {
    let v = json(&["classify", &fixture("f1.txt"), "--json"]);
    let r = &v["results"]["rank-one"];
    let pairings: Vec<i64> =
        r["rays"].as_array().unwrap().iter().map(|x| x["pairing_with_alpha"].as_i64().unwrap()).collect();
    assert_eq!(pairings, vec![-1, 0, 1]);
    assert_eq!(weights(&r["horizontal"]), (0..=5).map(|c| vec![c, c, -1]).collect::<Vec<_>>());
    assert_eq!(r["g_stable_divisors"].as_array().unwrap().len(), 1);

    let h = json(&["classify", &fixture("f1-horospherical.txt"), "--json"]);
    let h = &h["results"]["horospherical"];
    assert_eq!(h["horizontal"], r["horizontal"]);
    assert_eq!(h["g_saturated_in_box"], false);
    assert_eq!(h["horizontal_exact"], true);
}

#[test]
fn presets_classify() {
    for name in ["sl2-torus.txt", "gl2-horospherical.txt"] {
        let out = run(&["classify", &preset(name)]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn act_with_flags() {
    let v = json(&["act", &fixture("act.txt"), "--root", "0 -1", "--element", "1 0 2", "--parameter", "-3", "--json"]);
    let r = &v["results"];
    assert_eq!(r["nilpotency"][0]["index"], 3);
    // (y - 3)^2 = y^2 - 6y + 9.
    let exp: Vec<(Vec<i64>, i64)> = r["exponential"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["weight"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect(),
                t["coefficient"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(exp, vec![(vec![0, 0], 9), (vec![0, 1], -6), (vec![0, 2], 1)]);
}

#[test]
fn act_rational_coefficients() {
    let v = json(&["act", &fixture("act.txt"), "--json"]);
    let coefs: Vec<&str> =
        v["results"]["exponential"].as_array().unwrap().iter().filter_map(|t| t["coefficient"].as_str()).collect();
    assert_eq!(coefs, vec!["1/8", "3/4", "3/2"]);
}

#[test]
fn verify_json_is_deterministic() {
    let a = run(&["verify", "--json"]);
    let b = run(&["verify", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
}
