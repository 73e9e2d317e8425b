//! Runs the built `parafact` binary end to end.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parafact"))
        .args(args)
        .env_remove("PARAFACT_MAX_COSETS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_conditions() {
    let a3 = run(&["check", &fixture("a3_cluster.pres")]);
    assert_eq!(a3.status.code(), Some(0));
    let text = stdout(&a3);
    assert!(text.contains("involutions: true"));
    assert!(text.contains("even: true"));
    assert_eq!(text.matches("relator ").count(), 8);

    let klein = run(&["check", &fixture("klein.pres")]);
    assert_eq!(klein.status.code(), Some(1));
    assert!(stdout(&klein).contains("even: false"));
}

#[test]
fn order_of_fixtures() {
    let o = run(&["order", &fixture("a3_cluster.pres")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "order: 24\n");
    assert_eq!(
        stdout(&run(&["order", &fixture("klein.pres")])),
        "order: 4\n"
    );
    let index = run(&[
        "order",
        &fixture("a3_cluster.pres"),
        "--subgroup",
        "t1",
        "--subgroup",
        "t2",
    ]);
    assert!(stdout(&index).contains('4'));
}

#[test]
fn malformed_input_exits_2() {
    let bad = scratch("bad.pres", "gens: a b\nrel: a c\n");
    let o = run(&["order", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");

    let missing = run(&["order", "/nonexistent/file.pres"]);
    assert_eq!(missing.status.code(), Some(2));

    let word = run(&["descents", &fixture("a3_cluster.pres"), "--word", "t9"]);
    assert_eq!(word.status.code(), Some(2));
}

#[test]
fn infinite_group_hits_the_coset_limit() {
    let dihedral = scratch("dinf.pres", "gens: a b\nrel: a a\nrel: b b\n");
    let o = run(&["order", dihedral.to_str().unwrap(), "--max-cosets", "200"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());

    let via_env = Command::new(env!("CARGO_BIN_EXE_parafact"))
        .args(["order", dihedral.to_str().unwrap()])
        .env("PARAFACT_MAX_COSETS", "150")
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&via_env.stderr).contains("150"));
}

#[test]
fn factorize_lists_both_factorisations() {
    let o = run(&[
        "factorize",
        &fixture("a3_cluster.pres"),
        "--I",
        "t1,t2",
        "--word",
        "t2 t3 t1 t2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = v.to_string();
    assert!(
        text.contains("t2 t3") && text.contains("t1 t2 t3"),
        "{text}"
    );
}

#[test]
fn klein_factorisation_fails() {
    let o = run(&[
        "factorize",
        &fixture("klein.pres"),
        "--I",
        "i",
        "--word",
        "j",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn commands_are_deterministic() {
    let a3 = fixture("a3_cluster.pres");
    let cases: Vec<Vec<&str>> = vec![
        vec!["table", &a3],
        vec!["lengths", &a3],
        vec!["scan", &a3],
        vec!["dot", &a3, "--images", "(1,2);(2,3);(2,4)"],
        vec!["coset", &a3, "--I", "t1,t2", "--word", "t1 t2 t3"],
        vec!["reproduce", "--format", "json"],
    ];
    for args in cases {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn dot_has_24_nodes_and_36_edges() {
    let text = stdout(&run(&["dot", &fixture("a3_cluster.pres")]));
    assert!(text.starts_with("graph cayley {"));
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 36);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_start().starts_with('n') && !l.contains(" -- "))
            .count(),
        24
    );
}

#[test]
fn scan_summary() {
    let o = run(&["scan", &fixture("a3_cluster.pres")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with("SUMMARY"));
    assert!(summary.contains("witnesses=12"));
    assert!(summary.contains("violations=0"));
}

#[test]
fn quiver_command_emits_a_presentation() {
    let o = run(&["quiver", &fixture("a3_cycle.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    let emitted = scratch("from_quiver.pres", &stdout(&o));
    assert_eq!(
        stdout(&run(&["order", emitted.to_str().unwrap()])),
        "order: 24\n"
    );
}

#[test]
fn reproduce_text_and_json_agree() {
    let text = run(&["reproduce"]);
    let json = run(&["reproduce", "--format", "json"]);
    assert_eq!(text.status.code(), Some(0));
    assert_eq!(json.status.code(), Some(0));

    let from_text: BTreeSet<String> = stdout(&text)
        .lines()
        .filter(|l| !l.starts_with("RESULT"))
        .map(str::to_owned)
        .collect();
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    let from_json: BTreeSet<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let tag = if c["passed"].as_bool().unwrap() {
                "PASS"
            } else {
                "FAIL"
            };
            format!(
                "{tag} {}: {}",
                c["name"].as_str().unwrap(),
                c["detail"].as_str().unwrap()
            )
        })
        .collect();
    assert_eq!(from_text, from_json);
    assert!(stdout(&text).ends_with(&format!("RESULT PASS ({} checks)\n", from_text.len())));
}

#[test]
fn corrupted_fixture_fails_reproduce() {
    let o = run(&["reproduce", "--corrupt-fixture"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL pi-homomorphism"));
}

#[test]
fn output_flag_writes_a_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("order.txt");
    let _ = std::fs::remove_file(&path);
    let o = run(&[
        "order",
        &fixture("klein.pres"),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "order: 4\n");
}
