use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/cli-output.schema.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&v).expect("schema compiles")
}

fn pommiez(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_pommiez")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {text:?}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn outputs_validate_and_exit_codes_match() {
    let schema = schema();
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "--g0", "1", "--f", "exp(z)"], 0),
        (&["classify", "--g0", "1+z", "--f", "(1+z)*exp(2*z)"], 0),
        (&["classify", "--g0", "exp(z)", "--f", "exp(z) - exp(2*z)", "--squares", "3"], 0),
        (&["orbit", "--g0", "exp(2*z)", "--f", "z^3*exp(2*z)", "--len", "5", "--mode", "exact"], 0),
        (&["orbit", "--g0", "1-z", "--f", "z-1", "--len", "3", "--mode", "taylor"], 0),
        (&["apply", "--g0", "exp(z)", "--f", "z^2", "--op", "T", "--z", "1", "--order", "4"], 0),
        (&["apply", "--g0", "1+z", "--f", "z^2", "--op", "Ttilde", "--z", "1/3"], 0),
        (&["apply", "--f", "exp(i*z)", "--op", "D", "--z", "0"], 0),
        (&["apply", "--f", "exp(z)", "--op", "M"], 0),
        (&["apply", "--g0", "exp(z)", "--f", "z*exp(z)", "--op", "pommiez"], 0),
        (&["duhamel", "--v", "exp(z)", "--w", "exp(-z)"], 0),
        (&["omega", "--f", "exp(z)", "--x", "1", "--z", "1/2"], 0),
        (&["omega", "--f", "z^2", "--x", "1+z", "--z", "3"], 0),
        (&["pair", "--x", "z^2", "--h", "exp(3*z)"], 0),
        (&["identities", "--suite", "lemma1", "--trials", "10", "--seed", "1"], 0),
        (&["invariance", "--g0", "exp(z)", "--n", "3", "--f", "z*exp(z)"], 0),
        (&["apply", "--g0", "2", "--f", "z", "--op", "pommiez"], 1),
        (&["invariance", "--g0", "1+z+exp(z)", "--n", "3"], 1),
        (&["invariance", "--g0", "(1+z)^5*exp(z)", "--n", "2"], 1),
        (&["apply", "--f", "z", "--op", "T"], 1),
        (&["pair", "--x", "exp(z)", "--h", "1"], 1),
        (&["duhamel", "--v", "exp(z^2)", "--w", "1"], 2),
        (&["duhamel", "--v", "1 +", "--w", "1"], 2),
    ];
    for (args, code) in cases {
        let (got, v) = pommiez(args);
        assert_eq!(got, *code, "{args:?} -> {v}");
        let msgs: Vec<String> = match schema.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errs) => errs.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{args:?} -> {v} violates schema: {msgs:?}");
    }
}

#[test]
fn usage_errors_exit_two_without_json() {
    for args in [&["identities", "--suite", "nope"][..], &["frobnicate"], &["apply", "--op", "T"]] {
        let out = Command::new(env!("CARGO_BIN_EXE_pommiez")).args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn spec_examples() {
    let (_, v) = pommiez(&["classify", "--g0", "1", "--f", "exp(z)"]);
    assert_eq!(v["verdict"], "Cyclic");
    let (_, v) = pommiez(&["identities", "--suite", "eq2", "--trials", "100", "--seed", "7"]);
    assert_eq!(v, serde_json::json!({"suite": "eq2", "passed": 100, "failed": 0}));
    let (_, v) = pommiez(&["orbit", "--g0", "exp(2*z)", "--f", "z^3*exp(2*z)", "--len", "5", "--mode", "exact"]);
    let orbit = v["orbit"].as_array().unwrap();
    assert_eq!(&orbit[4..], &[Value::from("0"), Value::from("0")]);
}

#[test]
fn global_flags_apply() {
    let (_, v) = pommiez(&["--precision", "256", "apply", "--g0", "exp(z)", "--f", "z", "--op", "T", "--z", "1"]);
    assert_eq!(v["jet"][0]["prec"], 256);
    let (code, v) = pommiez(&["--search-radius", "5/2", "--tol", "40", "classify", "--g0", "1", "--f", "2-exp(z)"]);
    assert_eq!(code, 0);
    assert!(v["verdict"].is_string());
}
