use std::process::Command;

use serde_json::Value;

use fqk::cli::{run, Outcome, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, SCHEMA};

fn no_env(_: &str) -> Option<String> {
    None
}

fn fqk(args: &[&str]) -> Outcome {
    run(std::iter::once("fqk").chain(args.iter().copied()), &no_env)
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = fqk(&full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema", "command", "input", "payload", "checks"]);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    v
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "180"]);
    let groups = v["payload"]["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 4);
    assert_eq!(
        groups[1]["elementary_divisors"],
        serde_json::json!([2, 2, 9, 5])
    );
    assert_eq!(groups[1]["group"], "Z_2 × Z_90");
    assert_eq!(json(&["classify", "7"])["payload"]["count"], 1);
    assert_eq!(json(&["classify", "64"])["payload"]["count"], 11);
}

#[test]
fn pauli_examples() {
    let v = json(&["pauli", "2", "--check"]);
    assert_eq!(v["payload"]["order"], 8);
    assert_eq!(v["payload"]["center_size"], 2);
    let v = json(&["pauli", "3"]);
    assert_eq!(
        v["payload"]["Q"],
        serde_json::json!(["w^0 0 0", "0 w^1 0", "0 0 w^2"])
    );
    assert!(v["checks"].as_array().unwrap().is_empty());
    let v = json(&["pauli", "5", "--check"]);
    assert_eq!(v["payload"]["order"], 125);
}

#[test]
fn weyl_equiv_mad_grading_examples() {
    assert_eq!(json(&["weyl", "4"])["payload"]["basis_size"], 16);
    let v = json(&["equiv", "6"]);
    assert_eq!(v["payload"]["permutation"], "(1 4)");
    assert_eq!(v["payload"]["image"], serde_json::json!([0, 4, 2, 3, 1, 5]));
    let v = json(&["mad", "6"]);
    let names: Vec<&str> = v["payload"]["descriptors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["P3⊗P2⊗D(1)", "P3⊗D(2)", "P2⊗D(3)", "D(6)"]);

    let v = json(&["grading", "4", "2,2,m=1"]);
    assert_eq!(v["payload"]["subspace_count"], 16);
    let subspaces = v["payload"]["subspaces"].as_array().unwrap();
    assert!(subspaces.iter().all(|s| s["dim"] == 1));
    // closure table is the group law of Z_2^4 on the (a,b)(c,d) labels
    let label = |i: usize| -> Vec<u64> {
        subspaces[i]["label"]
            .as_str()
            .unwrap()
            .chars()
            .filter_map(|c| c.to_digit(10).map(u64::from))
            .collect()
    };
    let closure = v["payload"]["closure"].as_array().unwrap();
    for (x, row) in closure.iter().enumerate() {
        for (y, z) in row.as_array().unwrap().iter().enumerate() {
            let sum: Vec<u64> = label(x)
                .iter()
                .zip(label(y))
                .map(|(a, b)| (a + b) % 2)
                .collect();
            assert_eq!(label(z.as_u64().unwrap() as usize), sum);
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "180"][..],
        &["pauli", "4", "--check"],
        &["equiv", "12"],
        &["grading", "6", "3,m=2", "--format", "json"],
    ] {
        assert_eq!(fqk(args), fqk(args));
    }
}

#[test]
fn text_and_json_carry_the_same_data() {
    let text = fqk(&["classify", "180"]).stdout;
    let v = json(&["classify", "180"]);
    for g in v["payload"]["groups"].as_array().unwrap() {
        assert!(text.contains(&format!("group: {}", g["group"].as_str().unwrap())));
        assert!(text.contains(&format!("notation: {}", g["notation"].as_str().unwrap())));
    }
    let text = fqk(&["grading", "2", "m=2"]).stdout;
    assert!(
        text.contains("label: E(0,1)") && text.contains("- [1, -, 0]"),
        "{text}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(fqk(&["classify", "-3"]).code, EXIT_USAGE);
    assert_eq!(fqk(&["pauli"]).code, EXIT_USAGE);
    assert_eq!(fqk(&["equiv", "1"]).code, EXIT_USAGE);
    assert_eq!(fqk(&["grading", "6", "6"]).code, EXIT_USAGE);
    let out = fqk(&["grading", "6", "2,2"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("product constraint"), "{}", out.stderr);
    assert_eq!(fqk(&["weyl", "100"]).code, EXIT_RESOURCE);
    assert_eq!(
        fqk(&["grading", "8", "m=8", "--max-subspaces", "20"]).code,
        EXIT_RESOURCE
    );
    assert_eq!(fqk(&["classify", "2000000"]).code, EXIT_RESOURCE);
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_fqk");
    let out = Command::new(bin).args(["mad", "8"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("name: D(8)"), "{stdout}");

    let out = Command::new(bin)
        .args(["pauli", "9"])
        .env("FQK_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_RESOURCE));
    let out = Command::new(bin)
        .args(["pauli", "9", "--max-n", "9"])
        .env("FQK_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}
