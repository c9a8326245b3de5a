//! End-to-end tests of the `nzflow` binary: each test writes documents to
//! a temporary directory, runs subcommands against them, and checks
//! stdout, stderr, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nzflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .output()
        .expect("run binary")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).expect("write file");
    path
}

fn path_str(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

const THETA: &str = "nzflow 2 3\ne 0 1 2\ne 1 1 2\ne 2 1 2\n";
const THETA_FLOW: &str = "flow 3\nf 0 1 1 1 -5\nf 1 1 1 1 1\nf 2 0 1 4 4\n";

#[test]
fn solve_then_verify_round_trips() {
    let dir = TempDir::new().expect("tempdir");
    for algo in ["one", "two"] {
        let graph = nzflow(&["gen", "petersen"]);
        assert_eq!(code(&graph), 0);
        let graph_path = write(&dir, "petersen.graph", &stdout(&graph));

        let solved = nzflow(&["solve", path_str(&graph_path), "--algo", algo]);
        assert_eq!(code(&solved), 0, "stderr: {}", stderr(&solved));
        assert!(stdout(&solved).starts_with("flow 15\n"));
        let flow_path = write(&dir, "petersen.flow", &stdout(&solved));

        let verified = nzflow(&["verify", path_str(&graph_path), path_str(&flow_path)]);
        assert_eq!(code(&verified), 0, "stdout: {}", stdout(&verified));
        assert_eq!(stdout(&verified), "ok\n");
    }
}

#[test]
fn solve_both_checks_agreement_and_prints_one_document() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(&dir, "k4.graph", &stdout(&nzflow(&["gen", "k4"])));
    let both = nzflow(&["solve", path_str(&graph_path), "--algo", "both"]);
    assert_eq!(code(&both), 0);
    let single = nzflow(&["solve", path_str(&graph_path), "--algo", "one"]);
    assert_eq!(stdout(&both), stdout(&single));
    assert!(stderr(&both).contains("both constructions produced verified flows"));
}

#[test]
fn solve_is_deterministic() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(
        &dir,
        "random.graph",
        &stdout(&nzflow(&[
            "gen",
            "random-2ec",
            "--n",
            "12",
            "--m",
            "19",
            "--seed",
            "3",
        ])),
    );
    for algo in ["one", "two"] {
        let first = nzflow(&["solve", path_str(&graph_path), "--algo", algo]);
        let second = nzflow(&["solve", path_str(&graph_path), "--algo", algo]);
        assert_eq!(code(&first), 0);
        assert_eq!(stdout(&first), stdout(&second));
    }
}

#[test]
fn solve_rejects_bridged_and_disconnected_graphs() {
    let dir = TempDir::new().expect("tempdir");
    // Two triangles joined by a bridge.
    let bridged = write(
        &dir,
        "bridged.graph",
        "nzflow 6 7\ne 0 1 2\ne 1 2 3\ne 2 3 1\ne 3 4 5\ne 4 5 6\ne 5 6 4\ne 6 1 4\n",
    );
    let output = nzflow(&["solve", path_str(&bridged)]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("cannot solve"));

    let split = write(
        &dir,
        "split.graph",
        "nzflow 4 4\ne 0 1 2\ne 1 1 2\ne 2 3 4\ne 3 3 4\n",
    );
    let output = nzflow(&["solve", path_str(&split)]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("cannot solve"));
}

#[test]
fn parse_and_io_problems_exit_with_code_two() {
    let dir = TempDir::new().expect("tempdir");
    let bad = write(&dir, "bad.graph", "nzflow 2 1\ne 0 1 7\n");
    let output = nzflow(&["solve", path_str(&bad)]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("line 2"));

    let missing = dir.path().join("absent.graph");
    let output = nzflow(&["solve", path_str(&missing)]);
    assert_eq!(code(&output), 2);

    let output = nzflow(&["solve"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn verify_reports_witnesses_for_bad_flows() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(&dir, "theta.graph", THETA);
    let good = write(&dir, "good.flow", THETA_FLOW);
    let output = nzflow(&["verify", path_str(&graph_path), path_str(&good)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "ok\n");

    // Internally consistent lines that do not balance on this graph.
    let unbalanced = write(
        &dir,
        "unbalanced.flow",
        "flow 3\nf 0 1 1 1 1\nf 1 1 1 1 1\nf 2 0 2 2 2\n",
    );
    let output = nzflow(&["verify", path_str(&graph_path), path_str(&unbalanced)]);
    assert_eq!(code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("vertex 1: ternary boundary 1"), "got: {text}");
    assert!(text.contains("vertex 2: ternary boundary 2"), "got: {text}");
    assert!(
        text.contains("integer values do not balance"),
        "got: {text}"
    );

    // Values on edges the graph does not have, and edges with no value.
    let misaddressed = write(
        &dir,
        "misaddressed.flow",
        "flow 3\nf 0 1 1 1 1\nf 1 1 1 1 1\nf 9 0 1 4 -2\n",
    );
    let output = nzflow(&["verify", path_str(&graph_path), path_str(&misaddressed)]);
    assert_eq!(code(&output), 1);
    let text = stdout(&output);
    assert!(text.contains("edge 2: no value"), "got: {text}");
    assert!(text.contains("edge 9: not in the graph"), "got: {text}");
}

#[test]
fn verify_rejects_inconsistent_documents_at_parse_time() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(&dir, "theta.graph", THETA);
    // mod-6 column disagrees with the parity column.
    let inconsistent = write(
        &dir,
        "inconsistent.flow",
        "flow 3\nf 0 1 1 4 4\nf 1 1 1 1 1\nf 2 0 1 4 -2\n",
    );
    let output = nzflow(&["verify", path_str(&graph_path), path_str(&inconsistent)]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("line 2"));
}

#[test]
fn convert_recomputes_the_derived_columns() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(&dir, "theta.graph", THETA);
    // Same pair as THETA_FLOW but with a non-canonical integer column:
    // all-positive representatives are consistent line by line yet
    // unbalanced, and conversion replaces them.
    let skewed = write(
        &dir,
        "skewed.flow",
        "flow 3\nf 0 1 1 1 1\nf 1 1 1 1 1\nf 2 0 1 4 4\n",
    );
    let output = nzflow(&["convert", path_str(&graph_path), path_str(&skewed)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), THETA_FLOW);

    let converted = write(&dir, "converted.flow", &stdout(&output));
    let verified = nzflow(&["verify", path_str(&graph_path), path_str(&converted)]);
    assert_eq!(code(&verified), 0);

    // A pair that is not a flow converts to nothing.
    let broken = write(
        &dir,
        "broken.flow",
        "flow 3\nf 0 1 1 1 1\nf 1 1 1 1 1\nf 2 0 2 2 2\n",
    );
    let output = nzflow(&["convert", path_str(&graph_path), path_str(&broken)]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("not a nowhere-zero flow"));
}

#[test]
fn oracle_decides_small_instances() {
    let dir = TempDir::new().expect("tempdir");
    let square = write(
        &dir,
        "square.graph",
        &stdout(&nzflow(&["gen", "cycle", "--n", "4"])),
    );
    let output = nzflow(&["oracle", "--k", "2", path_str(&square)]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("exists\n"), "got: {text}");
    assert!(text.contains("f 0 1"), "got: {text}");

    // Three parallel edges admit no mod-2 flow: the boundary of an
    // all-ones assignment is odd, and any zero is forbidden. A negative
    // answer is still a successful decision.
    let theta_path = write(&dir, "theta.graph", THETA);
    let output = nzflow(&["oracle", "--k", "2", path_str(&theta_path)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "none\n");

    let output = nzflow(&["oracle", "--k", "3", path_str(&theta_path)]);
    assert_eq!(code(&output), 0);

    let output = nzflow(&["oracle", "--k", "9", path_str(&theta_path)]);
    assert_eq!(code(&output), 2);
}

#[test]
fn oracle_refuses_large_cycle_spaces() {
    let dir = TempDir::new().expect("tempdir");
    let big = write(
        &dir,
        "big.graph",
        &stdout(&nzflow(&[
            "gen",
            "random-2ec",
            "--n",
            "20",
            "--m",
            "40",
            "--seed",
            "0",
        ])),
    );
    let output = nzflow(&["oracle", "--k", "6", path_str(&big)]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("exceeds the enumeration limit"));
}

#[test]
fn gen_writes_parseable_documents() {
    let petersen = nzflow(&["gen", "petersen"]);
    assert_eq!(code(&petersen), 0);
    assert!(stdout(&petersen).starts_with("nzflow 10 15\n"));

    let cycle = nzflow(&["gen", "cycle", "--n", "5"]);
    assert!(stdout(&cycle).starts_with("nzflow 5 5\n"));

    let first = nzflow(&["gen", "random-cubic", "--n", "10", "--seed", "7"]);
    let second = nzflow(&["gen", "random-cubic", "--n", "10", "--seed", "7"]);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));

    let unknown = nzflow(&["gen", "banana"]);
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("unknown family"));

    let missing_param = nzflow(&["gen", "theta"]);
    assert_eq!(code(&missing_param), 2);
    assert!(stderr(&missing_param).contains("needs --m"));

    let bad_param = nzflow(&["gen", "cycle", "--n", "1"]);
    assert_eq!(code(&bad_param), 2);
}

#[test]
fn reduce_traces_the_decomposition() {
    let dir = TempDir::new().expect("tempdir");
    // Two triangles sharing a vertex.
    let bowtie = write(
        &dir,
        "bowtie.graph",
        "nzflow 5 6\ne 0 1 2\ne 1 2 3\ne 2 3 1\ne 3 3 4\ne 4 4 5\ne 5 5 3\n",
    );
    let output = nzflow(&["reduce", path_str(&bowtie)]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("reduce 5 6\n"), "got: {text}");
    assert!(text.contains("step split v="), "got: {text}");
    assert!(text.contains("leaf small"), "got: {text}");
    assert!(
        text.lines().last().expect("summary").starts_with("steps "),
        "got: {text}"
    );

    let petersen = write(
        &dir,
        "petersen.graph",
        &stdout(&nzflow(&["gen", "petersen"])),
    );
    let output = nzflow(&["reduce", path_str(&petersen)]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("leaf cubic3ec n=10 m=15"), "got: {text}");
    assert!(text.ends_with("steps 0 leaves 1\n"), "got: {text}");

    let bridged = write(
        &dir,
        "bridged.graph",
        "nzflow 6 7\ne 0 1 2\ne 1 2 3\ne 2 3 1\ne 3 4 5\ne 4 5 6\ne 5 6 4\ne 6 1 4\n",
    );
    let output = nzflow(&["reduce", path_str(&bridged)]);
    assert_eq!(code(&output), 1);
    assert!(stderr(&output).contains("cannot reduce"));
}

#[test]
fn dot_export_writes_a_labelled_drawing() {
    let dir = TempDir::new().expect("tempdir");
    let graph_path = write(&dir, "k4.graph", &stdout(&nzflow(&["gen", "k4"])));
    let dot_path = dir.path().join("k4.dot");
    let output = nzflow(&["solve", path_str(&graph_path), "--dot", path_str(&dot_path)]);
    assert_eq!(code(&output), 0);
    let dot = std::fs::read_to_string(&dot_path).expect("dot file");
    assert!(dot.starts_with("digraph nzflow {\n"), "got: {dot}");
    assert!(dot.contains("label=\"e0: "), "got: {dot}");
    assert!(dot.ends_with("}\n"), "got: {dot}");
}
