mod common;

use common::{data, run_cli};
use std::process::Command;

#[test]
fn dim_prints_the_table_value() {
    assert_eq!(run_cli(&["dim", "--theory", "jb", "3"]), (0, "18\n".into(), String::new()));
    let (code, out, _) = run_cli(&["dim", "--table", "--theory", "jb", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("4 96"), "{out}");
}

#[test]
fn binary_dim() {
    let o = Command::new(env!("CARGO_BIN_EXE_jbalg")).args(["dim", "--theory", "jb", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "18");
}

#[test]
fn binary_reports_usage_errors() {
    let o = Command::new(env!("CARGO_BIN_EXE_jbalg")).arg("frobnicate").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn normal_form_text_and_json() {
    let (code, out, _) = run_cli(&["nf", "--gens", "x1,x2", "{x1,x2}"]);
    assert_eq!((code, out.trim()), (0, "-1/1 {x2,x1}"));
    let (code, out, _) = run_cli(&["--json", "nf", "--gens", "x1,x2", "{x1,x2}"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["coeff"], "-1/1");
    assert_eq!(v[0]["monomial"][0]["word"], "{x2,x1}");
}

#[test]
fn syntax_errors_have_positions() {
    let (code, _, err) = run_cli(&["nf", "--gens", "x1", "{x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 4"), "{err}");
    let (code, _, err) = run_cli(&["--json", "nf", "--gens", "x1", "{x1"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert!(v["error"].as_str().unwrap().contains("column 4"));
}

#[test]
fn degree_limit() {
    let o = Command::new(env!("CARGO_BIN_EXE_jbalg"))
        .args(["dim", "--theory", "jb", "3"])
        .env("JB_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn free_identities() {
    let jacobi = "{?a,{?b,?c}} - {{?a,?b},?c} - {?b,{?a,?c}}";
    assert_eq!(run_cli(&["check-identity", "--free", "--theory", "genp", jacobi]).0, 0);
    let (code, out, _) = run_cli(&["check-identity", "--free", "--theory", "jb", jacobi]);
    assert_eq!(code, 1);
    assert!(out.starts_with("false\nresidual:"), "{out}");
    // two odd arguments: {a,b} = {b,a}
    let odd = "{?a,?b} - {?b,?a}";
    assert_eq!(run_cli(&["check-identity", "--free", "--theory", "gp", "--odd", "a,b", odd]).0, 0);
    assert_eq!(run_cli(&["check-identity", "--free", "--theory", "gp", "{?a,?b} + {?b,?a}"]).0, 0);
}

#[test]
fn concrete_commands() {
    let w3 = data("wronskian3.json");
    assert_eq!(run_cli(&["validate", &w3]).0, 0);
    assert_eq!(run_cli(&["check-identity", "--algebra", &w3, "{?a,?b} + {?b,?a}"]).0, 0);
    let (code, out, _) = run_cli(&["kantor-check", "--algebra", &w3]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("agreement: true"));
    let (code, out, _) = run_cli(&["kantor-check", "--algebra", &data("unital-gp.json"), "--jorskob"]);
    assert_eq!(code, 1, "{out}");
    // {e0,e1} = -e1 in the table
    let (code, out, _) = run_cli(&["eval", "--algebra", &w3, "--bind", "a=1", "--bind", "b=t", "{?a,?b}"]);
    assert_eq!((code, out.trim()), (0, "-1/1 t"));
    assert_eq!(run_cli(&["validate", "/nonexistent.json"]).0, 2);
}

#[test]
fn farkas_command() {
    let (code, out, _) = run_cli(&["farkas", "--input", "{?x,?y}"]);
    assert_eq!((code, out.trim()), (0, "1/1 D(y)"));
    let (code, out, _) = run_cli(&["--json", "farkas", "--input", "<<?a,?b>,?c> ?d", "--trace"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert!(v["result"]["terms"].is_array());
}
