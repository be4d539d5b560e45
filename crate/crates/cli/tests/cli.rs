//! End-to-end tests of the `ptnf` binary: output lines, exit codes, and the
//! `infer | recon` pipeline contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_ptnf");

/// The running example: a normal form exercising every inference case.
const EXAMPLE: &str = r"2 (\. 1) 1 \. (1 1)";
const EXAMPLE_TYPING: &str = r"a1.((a2->a2)->a1->((a3/\(a3->a4))->a4)->a0).nil |- a0";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("the binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("the binary runs");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("the input is written");
    child.wait_with_output().expect("the binary exits")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?} with stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn parse_prints_the_canonical_form() {
    let out = run(&["parse", r"\.((1) 2)"]);
    assert_eq!(stdout_of(&out).trim(), r"\. (1 2)");
}

#[test]
fn parse_reads_standard_input_when_the_argument_is_omitted() {
    let out = run_with_stdin(&["parse"], r"\. (1 2)");
    assert_eq!(stdout_of(&out).trim(), r"\. (1 2)");
}

#[test]
fn parse_errors_exit_with_code_two() {
    let out = run(&["parse", "(("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "nothing on stdout on failure");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("parse error:"), "got: {err}");
}

#[test]
fn normalize_reduces_to_the_normal_form() {
    let out = run(&["normalize", r"(\. 1) (\. 1)"]);
    assert_eq!(stdout_of(&out).trim(), r"\. 1");
}

#[test]
fn normalize_reports_fuel_exhaustion_as_a_domain_failure() {
    // Omega loops forever; one unit of fuel cannot finish it.
    let out = run(&["normalize", "--fuel", "1", r"(\. (1 1)) (\. (1 1))"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("fail:"), "got: {err}");
}

#[test]
fn infer_prints_the_typing_and_a_matching_derivation() {
    let out = run(&["infer", EXAMPLE]);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(EXAMPLE_TYPING));
    let derivation = lines.next().expect("a derivation line");
    assert!(derivation.starts_with("(->e"), "got: {derivation}");
    assert!(derivation.contains(&format!("\"{EXAMPLE}\"")), "the root node carries the term");
    assert_eq!(lines.next(), None);
}

#[test]
fn infer_rejects_a_redex_unless_asked_to_normalize_first() {
    let redex = r"(\. 1) (\. 1)";
    let out = run(&["infer", redex]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["infer", "--normalize-first", redex]);
    assert_eq!(stdout_of(&out).lines().next(), Some("nil |- a0->a0"));
}

#[test]
fn infer_then_recon_reproduces_the_input_term() {
    for term in [EXAMPLE, "1", r"\. 1", r"\. (1 1)", r"1 (\. 1) 2"] {
        let inferred = run(&["infer", term]);
        let typing_line = stdout_of(&inferred).lines().next().expect("a typing line").to_owned();
        let back = run_with_stdin(&["recon"], &typing_line);
        assert_eq!(stdout_of(&back).trim(), term, "round trip through {typing_line}");
    }
}

#[test]
fn infer_then_recon_round_trips_every_enumerated_normal_form() {
    // The same pipeline through the textual interface, over the whole
    // default-budget enumeration.
    for nf in ptnf::enum_beta_nfs(&ptnf::EnumBudget::default()) {
        let text = ptnf::syntax::print_term(&nf);
        let inferred = run(&["infer", &text]);
        let typing_line = stdout_of(&inferred).lines().next().expect("a typing line").to_owned();
        let back = run_with_stdin(&["recon"], &typing_line);
        assert_eq!(stdout_of(&back).trim(), text, "round trip through {typing_line}");
    }
}

#[test]
fn recon_failures_use_the_stable_tags() {
    let cases = [
        ("nil |- a0", "no-FO"),
        ("a0.a0.nil |- a0", "multiple-FO"),
        (r"(a0/\(a1->a0)).nil |- a0", "head-var-reoccurs"),
        ("a2.nil |- a0->a0", "leftover-nonempty"),
        (
            r"(a1->(a2->a3)->a4).((a1->a4)->(a3->a2)->a0).nil |- a0",
            "non-principal-argument",
        ),
    ];
    for (typing, tag) in cases {
        let out = run(&["recon", typing]);
        assert_eq!(out.status.code(), Some(1), "for {typing}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.trim(), format!("fail: {tag}"), "for {typing}");
    }
}

#[test]
fn analyze_reports_the_five_predicates_and_final_occurrences() {
    let out = run(&["analyze", EXAMPLE_TYPING]);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "closed: true",
            "fc: true",
            "mc: true",
            "complete: true",
            "principal: true",
            "fo: [2: ((a2->a2)->a1->((a3/\\(a3->a4))->a4)->a0)]",
        ]
    );
}

#[test]
fn analyze_refuses_entries_wider_than_its_cap() {
    let wide = format!("({}).nil |- a0", ["a0"; 9].join(r"/\"));
    let out = run(&["analyze", &wide]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("width 9") && err.contains("cap of 8"), "got: {err}");
}

#[test]
fn analyze_separates_complete_from_principal() {
    let out = run(&["analyze", r"(a1->(a2->a3)->a4).((a1->a4)->(a3->a2)->a0).nil |- a0"]);
    let text = stdout_of(&out);
    assert!(text.contains("complete: true"), "got: {text}");
    assert!(text.contains("principal: false"), "got: {text}");
}

#[test]
fn check_validates_a_derivation_from_standard_input() {
    let out = run_with_stdin(&["check", "--system", "smr"], r#"(var_r ("1" "a0.nil" "a0"))"#);
    assert_eq!(stdout_of(&out).trim(), "a0.nil |- a0");
}

#[test]
fn check_enforces_the_leaf_shape_of_the_restricted_system() {
    // A leaf whose type has a width-two arrow source is a var instance but
    // not a var_r instance.
    let leaf = r#"(var ("1" "((a0/\a1)->a2).nil" "(a0/\a1)->a2"))"#;
    let ok = run_with_stdin(&["check", "--system", "sm"], leaf);
    assert_eq!(stdout_of(&ok).trim(), r"((a0/\a1)->a2).nil |- (a0/\a1)->a2");
    let rejected = run_with_stdin(&["check", "--system", "smr"], leaf);
    assert_eq!(rejected.status.code(), Some(1));
    let err = String::from_utf8_lossy(&rejected.stderr);
    assert!(err.contains("var_r"), "got: {err}");
}

#[test]
fn check_round_trips_the_inferred_derivation() {
    let inferred = run(&["infer", EXAMPLE]);
    let text = stdout_of(&inferred);
    let derivation = text.lines().nth(1).expect("a derivation line");
    for system in ["smr", "sm"] {
        let out = run_with_stdin(&["check", "--system", system], derivation);
        assert_eq!(stdout_of(&out).trim(), EXAMPLE_TYPING, "under {system}");
    }
}

#[test]
fn sr_demo_explains_the_counterexample() {
    let out = run(&["sr-demo"]);
    let text = stdout_of(&out);
    assert!(text.contains("w.w.a1.nil |- a0->a0"), "got: {text}");
    assert!(text.contains("not derivable"), "got: {text}");
}

#[test]
fn selftest_passes_within_a_small_budget() {
    let out = run(&["selftest", "--max-size", "4", "--max-index", "2"]);
    let text = stdout_of(&out);
    assert!(text.contains("violations: none"), "got: {text}");
}
