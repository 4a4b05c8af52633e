//! End-to-end tests of the `k2ham` binary: exit codes, stream filtering,
//! determinism across thread counts, and certificate round trips.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use k2ham::certificate::Certificate;

const PETERSEN_G6: &str = "IheA@GUAo";
const K4_G6: &str = "C~";
const Q3_G6: &str = "Gr`HOk";

fn k2ham(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_k2ham"))
        .args(args)
        .env_remove("K2HAM_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn named_graphs_are_emitted_as_graph6() {
    let out = k2ham(&["named", "petersen"], "");
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), PETERSEN_G6);

    let list = k2ham(&["named", "--list"], "");
    assert!(list.status.success());
    assert!(stdout_of(&list).contains("gp(n,k)"));
}

#[test]
fn check_answers_and_expectations() {
    let ok = k2ham(&["check", "petersen", "--pred", "k2hypo"], "");
    assert!(ok.status.success());
    assert_eq!(stdout_of(&ok).trim(), "k2hypo(petersen) = true");

    // A correct --expect keeps exit 0; a wrong one is exit 1.
    let expected = k2ham(
        &["check", "petersen", "--pred", "hamiltonian", "--expect", "false"],
        "",
    );
    assert!(expected.status.success());
    let mismatch = k2ham(
        &["check", "petersen", "--pred", "hamiltonian", "--expect", "true"],
        "",
    );
    assert_eq!(mismatch.status.code(), Some(1));
}

#[test]
fn exit_codes_cover_the_failure_taxonomy() {
    // Usage errors: unknown predicate token.
    let usage = k2ham(&["check", "petersen", "--pred", "mystery"], "");
    assert_eq!(usage.status.code(), Some(2));

    // Parse errors: a graph argument that is neither named nor graph6.
    let parse = k2ham(&["check", "-", "--pred", "hamiltonian"], "not-a-graph\n");
    assert_eq!(parse.status.code(), Some(3));

    // Precondition errors: dot product with adjacent "independent" edges.
    let precondition = k2ham(
        &[
            "build", "dot", "petersen", "petersen", "--ab", "0,1", "--cd", "1,2", "--xy", "0,1",
        ],
        "",
    );
    assert_eq!(precondition.status.code(), Some(4));
    assert!(stderr_of(&precondition).contains("independent"));

    // Undecided: a one-node budget cannot settle hypohamiltonicity.
    let undecided = k2ham(
        &["check", "petersen", "--pred", "hypo", "--budget", "1"],
        "",
    );
    assert_eq!(undecided.status.code(), Some(5));
    assert!(stdout_of(&undecided).contains("undecided"));
}

#[test]
fn filter_keeps_survivors_in_input_order() {
    let stream = format!("{PETERSEN_G6}\n{K4_G6}\n{Q3_G6}\n");
    let out = k2ham(&["filter", "--pred", "k2hypo"], &stream);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), format!("{PETERSEN_G6}\n"));
    assert!(stderr_of(&out).contains("summary: total=3 matched=1 undecided=0 malformed=0"));
}

#[test]
fn filter_output_is_identical_across_job_counts() {
    let mut stream = String::new();
    for line in [PETERSEN_G6, K4_G6, Q3_G6, "DQc", "D~{", PETERSEN_G6, Q3_G6] {
        stream.push_str(line);
        stream.push('\n');
    }
    let one = k2ham(&["filter", "--pred", "hamiltonian", "--jobs", "1"], &stream);
    let four = k2ham(&["filter", "--pred", "hamiltonian", "--jobs", "4"], &stream);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);

    // The K2HAM_JOBS variable is honored too, and cannot change the bytes.
    let via_env = Command::new(env!("CARGO_BIN_EXE_k2ham"))
        .args(["filter", "--pred", "hamiltonian"])
        .env("K2HAM_JOBS", "3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map(|mut child| {
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(stream.as_bytes())
                .unwrap();
            child.wait_with_output().unwrap()
        })
        .unwrap();
    assert_eq!(via_env.stdout, one.stdout);
}

#[test]
fn filter_count_mode_and_empty_streams() {
    // K4 and K5 are hamiltonian; the 5-vertex tree between them is not.
    let counted = k2ham(
        &["filter", "--pred", "hamiltonian", "--count"],
        "C~\nDQc\nD~{\n",
    );
    assert!(counted.status.success());
    assert_eq!(stdout_of(&counted).trim(), "2");

    let empty = k2ham(&["filter", "--pred", "hamiltonian", "--count"], "");
    assert!(empty.status.success());
    assert_eq!(stdout_of(&empty).trim(), "0");
    assert!(stderr_of(&empty).contains("total=0"));
}

#[test]
fn strict_mode_aborts_on_malformed_lines() {
    let stream = format!("{K4_G6}\n???bogus\n{PETERSEN_G6}\n");
    // Lenient: the bad line is reported and skipped, the rest still flows.
    let lenient = k2ham(&["filter", "--pred", "hamiltonian"], &stream);
    assert!(lenient.status.success());
    assert_eq!(stdout_of(&lenient), format!("{K4_G6}\n"));
    assert!(stderr_of(&lenient).contains("malformed=1"));

    // Strict: same stream is a parse failure.
    let strict = k2ham(&["filter", "--pred", "hamiltonian", "--strict"], &stream);
    assert_eq!(strict.status.code(), Some(3));
    assert!(stderr_of(&strict).contains("line 2"));
}

#[test]
fn strict_mode_surfaces_undecided_as_exit_5() {
    let out = k2ham(
        &["filter", "--pred", "hypo", "--strict", "--budget", "1"],
        &format!("{PETERSEN_G6}\n"),
    );
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr_of(&out).contains("undecided=1"));
}

#[test]
fn build_output_pipes_back_into_check() {
    let built = k2ham(
        &["build", "glue", "petersen/0", "petersen/7"],
        "",
    );
    assert!(built.status.success());
    let glued = stdout_of(&built);
    assert!(!glued.trim().is_empty());

    let checked = k2ham(
        &["check", "-", "--pred", "k2hypo", "--expect", "true"],
        &glued,
    );
    assert!(checked.status.success(), "stderr: {}", stderr_of(&checked));
}

#[test]
fn certify_emits_replayable_json() {
    let out = k2ham(&["certify", "petersen", "--pred", "k2"], "");
    assert!(out.status.success());
    let cert = Certificate::from_json(&stdout_of(&out)).unwrap();
    let report = cert.validate().unwrap();
    assert_eq!(report.witnesses_replayed, 15);

    // A false claim is refused with the mismatch exit code.
    let refused = k2ham(&["certify", "k(4)", "--pred", "hypo"], "");
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn certificates_flow_through_filter_mode() {
    let stream = format!("{Q3_G6}\n{PETERSEN_G6}\n");
    let out = k2ham(&["filter", "--pred", "k2", "--certificates"], &stream);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "both graphs are K2-hamiltonian");
    for line in lines {
        let cert = Certificate::from_json(line).unwrap();
        cert.validate().unwrap();
    }
}

#[test]
fn cell_report_matches_the_documented_shape() {
    let out = k2ham(&["cell", "j18", "--level", "k2"], "");
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.trim_end().ends_with("suitable ✓ k1 ✓ k2 ✓"));

    // A rotated quadruple loses suitability and says so per property.
    let rotated = k2ham(&["cell", "j18", "--outer", "8,2,0,5"], "");
    assert!(rotated.status.success());
    assert!(stdout_of(&rotated).contains("suitable ✗"));
}

#[test]
fn grinberg_reports_profile_and_sigma() {
    let faces = k2ham(&["grinberg", "j18+ad"], "");
    assert!(faces.status.success());
    let text = stdout_of(&faces);
    assert!(text.contains("grinbergian obstruction: true"), "{text}");

    let sigma = k2ham(&["grinberg", "k4", "--cycle", "0,1,2,3"], "");
    assert!(sigma.status.success());
    assert_eq!(stdout_of(&sigma).trim(), "sigma = 0");
}
