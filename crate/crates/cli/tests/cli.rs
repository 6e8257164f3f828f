use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn padic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against a golden file; `UPDATE_GOLDEN=1` rewrites it instead.
fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_without_elapsed(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&raw)
        .expect("schema compiles")
}

fn assert_schema_valid(doc: &Value) {
    let compiled = schema();
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("schema violations:\n{}", msgs.join("\n"));
    };
}

const SQRT2: &[&str] = &[
    "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "9", "--method", "olver", "--verify",
    "3",
];
const NO_SEEDS: &[&str] = &["solve", "--poly", "x^2-2", "--prime", "5", "--digits", "4"];
const IDENTITY: &[&str] = &[
    "solve",
    "--poly",
    "x",
    "--prime",
    "3",
    "--digits",
    "4",
    "--digit-style",
    "lsd-list",
];

#[test]
fn sqrt2_in_z7_golden() {
    let out = padic(SQRT2);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("3 + 1·7 + 2·7^2 + 6·7^3 + 1·7^4 + 2·7^5 + 1·7^6 + 2·7^7 + 4·7^8"));
    assert!(text.contains("oracle      OK mod 7^3"));
    check_golden("solve_sqrt2_z7.txt", &text);
}

#[test]
fn no_simple_roots_exits_2() {
    let out = padic(NO_SEEDS);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    check_golden("solve_no_seeds_z5.stderr", &stderr(&out));
}

#[test]
fn identity_in_z3_golden() {
    let out = padic(IDENTITY);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("root        [0, 0, 0, 0]"));
    assert!(text.contains("iterations  1"));
    check_golden("solve_identity_z3.txt", &text);
}

#[test]
fn compare_golden() {
    let args = [
        "compare", "--poly", "x^2+x+2", "--prime", "2", "--digits", "64", "--verify", "8",
    ];
    let out = padic(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    check_golden("compare_2adic.txt", &stdout(&out));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let compare = [
        "compare", "--poly", "x^3-x-1", "--prime", "5", "--digits", "40", "--verify", "4",
    ];
    for args in [SQRT2, NO_SEEDS, IDENTITY, &compare[..]] {
        let a = padic(args);
        let b = padic(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_matches_golden_and_schema() {
    let mut args = SQRT2.to_vec();
    args.extend(["--format", "json"]);
    let out = padic(&args);
    assert_eq!(out.status.code(), Some(0));
    let full: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_schema_valid(&full);
    let doc = json_without_elapsed(&out);
    let digits: Vec<u64> = doc["runs"][0]["digits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    assert_eq!(digits, [3, 1, 2, 6, 1, 2, 1, 2, 4]);
    assert_eq!(doc["runs"][0]["verified"], Value::Bool(true));
    check_golden(
        "solve_sqrt2_z7.json",
        &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
    );

    let again = json_without_elapsed(&padic(&args));
    assert_eq!(doc, again);
}

#[test]
fn json_schema_covers_every_outcome() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "compare", "--poly", "x^2+x+2", "--prime", "2", "--digits", "100", "--format", "json",
        ],
        vec![
            "solve", "--poly", "x^3-2", "--prime", "5", "--digits", "30", "--method", "all",
            "--format", "json",
        ],
        vec![
            "solve",
            "--poly",
            "x^2-2",
            "--prime",
            "2305843009213693951",
            "--digits",
            "3",
            "--seed",
            "0",
            "--format",
            "json",
        ],
        vec![
            "solve",
            "--poly",
            "x^3 - x^2 - x + 1",
            "--prime",
            "3",
            "--digits",
            "5",
            "--format",
            "json",
        ],
        vec![
            "solve", "--poly", "x", "--prime", "3", "--digits", "4", "--format", "json",
        ],
    ];
    for args in cases {
        let out = padic(&args);
        if out.stdout.is_empty() {
            continue;
        }
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_schema_valid(&doc);
    }
    // A document with an unknown top-level key must be rejected.
    let mut doc: Value = serde_json::from_slice(
        &padic(&[
            "solve", "--poly", "x", "--prime", "3", "--digits", "2", "--format", "json",
        ])
        .stdout,
    )
    .unwrap();
    doc.as_object_mut()
        .unwrap()
        .insert("extra".into(), Value::Null);
    assert!(!schema().is_valid(&doc));
}

#[test]
fn big_prime_requires_seed() {
    let out = padic(&[
        "solve",
        "--poly",
        "x^2-2",
        "--prime",
        "2305843009213693951",
        "--digits",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--seed"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_1() {
    let cases: [&[&str]; 6] = [
        &["solve", "--poly", "x^2-2", "--prime", "8", "--digits", "4"],
        &["solve", "--poly", "x^2-2", "--prime", "7", "--digits", "0"],
        &["solve", "--poly", "x^^2", "--prime", "7", "--digits", "4"],
        &["solve", "--poly", "0", "--prime", "7", "--digits", "4"],
        &[
            "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "4", "--verify", "5",
        ],
        &[
            "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "20", "--verify", "9",
            "--budget", "1000",
        ],
    ];
    for args in cases {
        let out = padic(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn parse_error_reports_column() {
    let out = padic(&[
        "solve", "--poly", "x^2 - 2y", "--prime", "7", "--digits", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("column 8"), "{}", stderr(&out));
}

#[test]
fn invalid_seed_exits_2() {
    let out = padic(&[
        "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "4", "--seed", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_seed_is_reduced() {
    let out = padic(&[
        "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "4", "--seed", "-4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("seed 3 (olver)"));
}

#[test]
fn singular_residues_are_reported() {
    let out = padic(&[
        "solve",
        "--poly",
        "x^3 - x^2 - x + 1",
        "--prime",
        "3",
        "--digits",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("singular residues (not lifted): 1"));
}

#[test]
fn ascii_series() {
    let out = padic(&[
        "solve", "--poly", "x^2-2", "--prime", "7", "--digits", "3", "--seed", "3", "--ascii",
    ]);
    assert!(stdout(&out).contains("3 + 1*7 + 2*7^2"), "{}", stdout(&out));
}
