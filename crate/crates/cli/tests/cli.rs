use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_slopes");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Null => {}
        other => out.push(other.to_string()),
    }
}

fn temp_file(tag: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("slopes-{tag}-{}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn pretty_mode_reports_the_same_values() {
    let cases: &[&[&str]] = &[
        &["lens-cw", "7", "2"],
        &["surgery-cw", "2", "5", "3"],
        &["d-inv", "5", "2", "1"],
        &["moser", "5", "2", "3", "-2"],
        &["hyp-consts", "--sys", "0.01"],
        &["twist-slopes", "--l", "2", "--m", "1"],
        &[
            "find-slopes",
            "--C",
            "8",
            "--q",
            "11",
            "--count",
            "2",
            "--limit",
            "1000000",
        ],
    ];
    for args in cases {
        let v = json(args);
        let mut pretty_args = args.to_vec();
        pretty_args.push("--pretty");
        let pretty = String::from_utf8(run(&pretty_args).stdout).unwrap();
        let mut values = Vec::new();
        leaves(&v, &mut values);
        for value in values {
            assert!(
                pretty.contains(&value),
                "{args:?}: {value} missing from\n{pretty}"
            );
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lens-cw", "4", "2"]).status.code(), Some(2));
    assert_eq!(run(&["lens-cw", "4"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "find-slopes",
            "--C",
            "10",
            "--q",
            "7",
            "--count",
            "1",
            "--limit",
            "10"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["hyp-consts", "--sys", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "alex-twist",
            "--link",
            "nowhere",
            "--component",
            "1",
            "--k",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );

    let cert = String::from_utf8(
        run(&[
            "find-slopes",
            "--C",
            "10",
            "--q",
            "13",
            "--count",
            "1",
            "--limit",
            "100000",
        ])
        .stdout,
    )
    .unwrap();
    let path = temp_file("exit", &cert);
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&["verify-cert", p, "--C", "10", "--q", "13"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify-cert", p, "--C", "10", "--q", "17"])
            .status
            .code(),
        Some(1)
    );

    let tampered = cert.replace("\"4201\"", "\"4213\"");
    let path2 = temp_file("tampered", &tampered);
    let out = run(&[
        "verify-cert",
        path2.to_str().unwrap(),
        "--C",
        "10",
        "--q",
        "13",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], Value::Bool(false));
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(path2);
}

#[test]
fn negative_arguments_and_flags() {
    assert_eq!(
        json(&["moser", "3", "2", "1", "-1"])["fibers"],
        serde_json::json!([-7, 2, 3])
    );
    assert_eq!(
        json(&[
            "alex-twist",
            "--link",
            "L9a20",
            "--component",
            "2",
            "--k",
            "-1"
        ])["k"],
        -1
    );
    assert_eq!(
        json(&["twist-slopes", "--l", "0", "--m", "1", "--n", "-3"])["pairs"][0]["slope"],
        "-1/3"
    );
    assert_eq!(json(&["d-inv", "5", "1", "0", "--v", "1,1"])["d"], "-1/1");
    let torus = json(&[
        "find-slopes",
        "--C",
        "10",
        "--q",
        "13",
        "--torus",
        "2,3",
        "--count",
        "1",
        "--limit",
        "100000",
    ]);
    let names: Vec<&str> = torus["certificates"][0]["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"torus_case_excluded"));
    assert_eq!(
        run(&[
            "find-slopes",
            "--C",
            "10",
            "--q",
            "13",
            "--q1mod4",
            "--count",
            "1",
            "--limit",
            "100000"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "find-slopes",
            "--C",
            "10",
            "--q",
            "19",
            "--q1mod4",
            "--count",
            "1",
            "--limit",
            "100000"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn links_load_from_files() {
    let fixtures = String::from_utf8(run(&["fixtures"]).stdout).unwrap();
    assert!(fixtures.lines().count() >= 8);
    let path = temp_file("fixtures", &fixtures);
    let from_file = json(&[
        "distinct-matrix",
        "--link",
        path.to_str().unwrap(),
        "--range",
        "4",
        "4",
    ]);
    let builtin = json(&["distinct-matrix", "--link", "L9a20", "--range", "4", "4"]);
    assert_eq!(from_file, builtin);
    assert_eq!(
        builtin["equal_pairs"],
        serde_json::json!([[-1, -1], [1, 1]])
    );
    let _ = std::fs::remove_file(path);
}

#[test]
fn twist_outputs_agree() {
    let k1 = json(&[
        "alex-twist",
        "--link",
        "L9a20",
        "--component",
        "2",
        "--k",
        "1",
    ]);
    let j1 = json(&[
        "alex-twist",
        "--link",
        "L9a20",
        "--component",
        "1",
        "--k",
        "1",
    ]);
    assert_eq!(k1["alexander"], j1["alexander"]);
    let k0 = json(&[
        "alex-twist",
        "--link",
        "L9a20",
        "--component",
        "2",
        "--k",
        "0",
    ]);
    assert_eq!(k0["alexander"], "1");
}
