use std::path::PathBuf;

use bfv_cli::{run, Outcome};

fn bfv(args: &[&str]) -> Outcome {
    run(std::iter::once("bfv").chain(args.iter().copied()))
}

fn write_doc(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bfv-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn value<'a>(out: &'a Outcome, key: &str) -> &'a str {
    let prefix = format!("{key}=");
    out.stdout.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no `{key}` in\n{}", out.stdout))
}

#[test]
fn master_on_so3_reports_zero_residual() {
    let out = bfv(&["master", "--preset", "so3-classical"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("residual = 0"));
}

#[test]
fn master_fails_on_corrupted_structure_constant() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/presets/so3-classical.json")).unwrap();
    let bad = src.replacen("[1, 2, 3, -1]", "[1, 2, 3, -2]", 1);
    assert_ne!(src, bad);
    let path = write_doc("so3-bad.json", &bad);
    let out = bfv(&["master", "--scenario", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(out.code, 1);
    assert_eq!(value(&out, "check.master_equation"), "fail");
}

#[test]
fn bialgebra_extension_reaches_bound() {
    let out = bfv(&["extend", "--preset", "aff1-bialgebra", "--kmax", "2", "--ansatz-degree", "4", "--format", "machine"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(value(&out, "terms").parse::<usize>().unwrap() >= 2);
    assert!(value(&out, "residual_bound").parse::<i32>().unwrap() <= -2);
}

#[test]
fn classical_extension_is_two_terms() {
    let out = bfv(&["extend", "--preset", "so3-classical", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "terms"), "1");
    assert_eq!(value(&out, "exact"), "true");
}

#[test]
fn abelian_probe_table_is_zero() {
    let out = bfv(&["probe-h0", "--preset", "abelian-translation", "--degree", "3", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "table_zero"), "true");
    assert_eq!(value(&out, "dim_h0"), "4");
    for line in out.stdout.lines().filter(|l| l.starts_with("l2(")) {
        assert!(line.ends_with("=0"), "{line}");
    }
}

#[test]
fn so3_probe_has_the_reduced_bracket() {
    let out = bfv(&["probe-h0", "--preset", "so3-classical", "--degree", "2", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "table_zero"), "false");
}

#[test]
fn machine_output_is_deterministic() {
    for cmd in ["validate", "lift", "jacobi", "brackets"] {
        let a = bfv(&[cmd, "--preset", "quasi-chi", "--format", "machine"]);
        let b = bfv(&[cmd, "--preset", "quasi-chi", "--format", "machine"]);
        assert_eq!(a, b, "{cmd}");
        assert!(a.stdout.lines().all(|l| l.contains('=')), "{cmd}");
    }
}

#[test]
fn every_preset_validates() {
    let list = bfv(&["presets", "--format", "machine"]);
    let names: Vec<&str> = list.stdout.lines().filter_map(|l| l.strip_prefix("preset.")).map(|l| l.split('=').next().unwrap()).collect();
    assert_eq!(names.len(), 6);
    for name in names {
        let out = bfv(&["validate", "--preset", name]);
        assert_eq!(out.code, 0, "{name}: {}", out.stdout);
    }
}

#[test]
fn quasi_jacobi_has_nonzero_jacobiators() {
    let out = bfv(&["jacobi", "--preset", "quasi-chi", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_ne!(value(&out, "jacobiator_nonzero"), "0");
    assert_eq!(value(&out, "residual_nonzero"), "0");
}

#[test]
fn brackets_on_arguments() {
    let out = bfv(&["brackets", "--preset", "abelian-translation", "--arg", "1 * x1", "--arg", "1 * x2", "--format", "machine"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(value(&out, "l2(1 * x1, 1 * x2)"), "1");
    let out = bfv(&["brackets", "--preset", "abelian-translation", "--arg", "1 * e1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("NotInLagrangian"));
}

#[test]
fn truncated_series_is_inconclusive() {
    let out = bfv(&["brackets", "--preset", "aff1-bialgebra", "--kmax", "0", "--arg", "1 * x1", "--arg", "1 * x2", "--arg", "1 * c1"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("TruncationExceeded"));
}

#[test]
fn bch_to_order_three() {
    let out = bfv(&["bch", "--preset", "group-valued-so3", "--order", "3", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "check.bch_transport"), "pass");
    let out = bfv(&["bch", "--preset", "so3-classical"]);
    assert_eq!(out.code, 2);
}

#[test]
fn document_errors_exit_with_usage_code() {
    let parse = write_doc("parse.json", r#"{ "kind": "bialgebra", "n": 2, "pi": "1 * q1 e2", "lie": { "dim_g": 2 } }"#);
    let out = bfv(&["charge", "--scenario", parse.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("ParseError"), "{}", out.stderr);

    let schema = write_doc("schema.json", r#"{ "kind": "bialgebra", "n": 2, "pi": "0", "lie": { "dim_g": 2 }, "colour": 1 }"#);
    let out = bfv(&["charge", "--scenario", schema.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("SchemaError") && out.stderr.contains("colour"), "{}", out.stderr);

    assert_eq!(bfv(&["master"]).code, 2);
    assert_eq!(bfv(&["master", "--preset", "nope"]).code, 2);
    assert_eq!(bfv(&["frobnicate"]).code, 2);
    assert_eq!(bfv(&["--help"]).code, 0);
}

#[test]
fn odd_square_normalizes_to_zero() {
    let doc = write_doc(
        "odd.json",
        r#"{ "kind": "bialgebra", "n": 2, "pi": "1 * e1 e1", "psi": ["1 * e1", "1 * e2"],
             "lie": { "dim_g": 2, "dim_h": 0 } }"#,
    );
    let out = bfv(&["lift", "--scenario", doc.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert_eq!(value(&out, "lift"), "0");
}

#[test]
fn undecided_membership_exits_three() {
    let doc = write_doc(
        "pair.json",
        r#"{ "kind": "generalized_pair", "n": 3, "pi": "-1 * e1 e2 - 1 * x1 e2 e3",
             "psi": ["1 * e1"], "J0": ["1 * x2"], "lie": { "dim_g": 1 } }"#,
    );
    let out = bfv(&["validate", "--scenario", doc.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(out.code, 3, "{}", out.stdout);
    assert_eq!(value(&out, "check.compatibility"), "undecided");
}
