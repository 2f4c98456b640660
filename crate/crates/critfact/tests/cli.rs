//! Command-line front end: field options, JSON output and exit codes.

use std::io::Write;
use std::process::{Command as Proc, Stdio};

use critfact::cli::{exit_code, parse_field_spec, run, Command, RunConfig};
use critfact::error::Error;
use serde_json::Value;

fn cfg(field: &str) -> RunConfig {
    RunConfig {
        field: field.into(),
        ..RunConfig::default()
    }
}

fn bin(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut child = Proc::new(env!("CARGO_BIN_EXE_critfact"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

#[test]
fn field_specs() {
    assert!(parse_field_spec("q").unwrap().is_rationals());
    let f = parse_field_spec("p=7").unwrap();
    assert!(f.is_prime_field());
    assert_eq!(f.characteristic(), 7);
    let f = parse_field_spec("p=2,k=3").unwrap();
    assert_eq!(f.size_u64(), Some(8));
    let f = parse_field_spec("p=2,k=3,m=t^3+t+1").unwrap();
    assert_eq!(f.size_u64(), Some(8));
    for bad in ["p=6", "r=3", "p", "p=2,k=2,m=t^2+1"] {
        let e = parse_field_spec(bad).unwrap_err();
        assert_eq!(exit_code(&e), 2, "{bad}");
    }
}

#[test]
fn factor_json() {
    let v = run(Command::Factor, "(y^2-x^3)*(y+x)", &cfg("q")).unwrap();
    let mut fs: Vec<String> = v["result"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    fs.sort();
    assert_eq!(fs, vec!["-x^3+y^2".to_string(), "y+x".to_string()]);
    assert!(v.get("trace").is_none());
}

#[test]
fn trace_is_optional() {
    let mut c = cfg("q");
    c.trace = true;
    let v = run(Command::Count, "(y^2-x^3)*(y^2+x^3)", &c).unwrap();
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["trace"]["d_y"], 4);
}

#[test]
fn absolute_json() {
    let v = run(Command::AbsFactor, "y^4-2*x^2", &cfg("q")).unwrap();
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["pairs"][0]["q"], "z^2-2");
    let v = run(Command::AbsCount, "y^2-x", &cfg("p=3")).unwrap();
    assert_eq!(v["result"]["count"], 1);
}

#[test]
fn polytope_json() {
    let v = run(Command::Polytope, "y^2-x^3", &cfg("q")).unwrap();
    assert_eq!(v["result"]["s_F"], 1);
    assert_eq!(v["result"]["nondegenerate"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&Error::Internal("x".into())), 1);
    assert_eq!(exit_code(&Error::InvalidField("x".into())), 2);
    assert_eq!(exit_code(&Error::Inseparable), 3);
    assert_eq!(exit_code(&Error::SmallCharacteristic(3)), 4);
    let e = run(Command::AbsFactor, "y^2-x^2-1", &cfg("p=3")).unwrap_err();
    assert_eq!(exit_code(&e), 4);
}

#[test]
fn binary_round_trip() {
    let (code, v) = bin(&["irreducible", "y^2-x^3"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["irreducible"], true);
    let (code, v) = bin(&["factor", "-", "--field", "p=5"], Some("y^2-x^2\n"));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["factors"].as_array().unwrap().len(), 2);
    let (code, v) = bin(&["factor", "y^2-"], None);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "syntax");
    let (code, v) = bin(&["absfactor", "y^2-x^2-1", "--field", "p=3"], None);
    assert_eq!(code, 4);
    assert_eq!(v["error"], "small_characteristic");
}
