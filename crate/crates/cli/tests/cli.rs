//! End-to-end tests of the `dsem` binary: exit codes, output schema, and
//! byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dsem() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dsem"))
}

fn toy_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/toy.conllu")
}

fn run(args: &[&str]) -> Output {
    dsem().args(args).output().expect("binary runs")
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

/// Build the toy lexicon into the given directory and return its path.
fn build_toy(dir: &Path) -> PathBuf {
    let lexicon = dir.join("toy.dsem");
    let corpus = toy_corpus();
    let output = run(&[
        "build",
        corpus.to_str().unwrap(),
        "--relations",
        "nsubj,obj",
        "--dim",
        "8",
        "-o",
        lexicon.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    lexicon
}

/// Write the hand-built four-dimensional lexicon to disk.
fn write_fixture(dir: &Path) -> PathBuf {
    let path = dir.join("fixture.dsem");
    dsem_core::fixtures::semantics_lexicon().save(&path).unwrap();
    path
}

#[test]
fn build_prints_summary_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = dir.path().join("toy.dsem");
    let corpus = toy_corpus();
    let args = [
        "build",
        corpus.to_str().unwrap(),
        "--relations",
        "nsubj,obj",
        "--dim",
        "8",
        "-o",
        lexicon.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("words 12"));
    assert!(text.contains("space_dim 81"));
    assert!(text.contains("word book rank 3 entropy 1.500000000"));
    assert!(text.contains("word reserve rank 1 entropy 0.000000000"));
    let first_bytes = std::fs::read(&lexicon).unwrap();

    let second = run(&args);
    assert_eq!(stdout(&second), text);
    assert_eq!(std::fs::read(&lexicon).unwrap(), first_bytes);
}

#[test]
fn build_rejects_empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.conllu");
    std::fs::write(&empty, "").unwrap();
    let output = run(&[
        "build",
        empty.to_str().unwrap(),
        "-o",
        dir.path().join("out.dsem").to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("no documents"));
}

#[test]
fn build_reports_parse_errors_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conllu");
    std::fs::write(&bad, "1\tdogs\tdog\tNOUN\t_\t_\t2\tnsubj\t_\n").unwrap();
    let output = run(&[
        "build",
        bad.to_str().unwrap(),
        "-o",
        dir.path().join("out.dsem").to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("line 1"));
}

#[test]
fn build_fails_on_unwritable_output() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = toy_corpus();
    let output = run(&[
        "build",
        corpus.to_str().unwrap(),
        "--relations",
        "nsubj,obj",
        "--dim",
        "4",
        "-o",
        dir.path().join("missing/sub/dir/out.dsem").to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 3);
}

#[test]
fn build_respects_max_dim_capacity() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = toy_corpus();
    let output = dsem()
        .args([
            "build",
            corpus.to_str().unwrap(),
            "--relations",
            "nsubj,obj",
            "--dim",
            "8",
            "-o",
            dir.path().join("out.dsem").to_str().unwrap(),
        ])
        .env("DSEM_MAX_DIM", "10")
        .output()
        .expect("binary runs");
    assert_eq!(code(&output), 3);
    assert!(stderr(&output).contains("exceeds"));
}

#[test]
fn self_similarity_is_exactly_one() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let output = run(&[
        "query",
        lexicon.to_str().unwrap(),
        "similarity",
        "book",
        "book",
    ]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).contains("value 1.000000000"));
}

#[test]
fn entropy_of_single_sense_word_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let output = run(&["query", lexicon.to_str().unwrap(), "entropy", "reserve"]);
    assert_eq!(code(&output), 0);
    assert!(stdout(&output).contains("value 0.000000000"));
}

#[test]
fn toy_queries_match_hand_values() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let lex = lexicon.to_str().unwrap();

    let similarity = run(&["query", lex, "similarity", "book", "schedule"]);
    assert!(stdout(&similarity).contains("value 0.853553391"));

    let entails = run(&["query", lex, "entails", "book", "schedule"]);
    assert!(stdout(&entails).contains("value 0.500000000"));

    let reversed = run(&["query", lex, "entails", "schedule", "book"]);
    assert!(stdout(&reversed).contains("value inf"));

    let mutinfo = run(&["query", lex, "mutinfo", "reserve", "--pair", "nsubj,obj"]);
    assert!(stdout(&mutinfo).contains("value 2.000000000"));
}

#[test]
fn fixture_disambiguation_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = write_fixture(dir.path());
    let output = run(&[
        "query",
        fixture.to_str().unwrap(),
        "disambiguate",
        "schedule",
        "book",
    ]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    let hash = dsem_core::fixtures::semantics_lexicon().content_crc();
    let expected = format!(
        "measure disambiguate\n\
         args schedule book\n\
         lexicon_hash {hash:08x}\n\
         seed 0\n\
         value 0.378000000\n\
         sense 0 sense_probability 0.500000000 probability 0.640000000\n\
         sense 1 sense_probability 0.250000000 probability 0.120000000\n\
         sense 2 sense_probability 0.150000000 probability 0.080000000\n\
         sense 3 sense_probability 0.100000000 probability 0.160000000\n"
    );
    assert_eq!(text, expected);
}

#[test]
fn json_output_has_the_stable_schema() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = write_fixture(dir.path());
    let output = run(&[
        "query",
        fixture.to_str().unwrap(),
        "similarity",
        "book",
        "schedule",
        "--format",
        "json",
    ]);
    assert_eq!(code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(stdout(&output).trim()).unwrap();
    assert_eq!(parsed["measure"], "similarity");
    assert_eq!(parsed["args"][0], "book");
    assert_eq!(parsed["seed"], 0);
    let value = parsed["value"].as_f64().unwrap();
    assert!((value - 0.954014966).abs() < 1e-9);

    // Infinity is carried as the string "inf".
    let inf = run(&[
        "query",
        fixture.to_str().unwrap(),
        "entails",
        "book",
        "book",
        "--format",
        "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(stdout(&inf).trim()).unwrap();
    assert_eq!(parsed["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn correlate_reports_full_decomposition_on_small_spaces() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("entangled.dsem");
    dsem_core::fixtures::entangled_lexicon().save(&path).unwrap();
    let output = run(&[
        "query",
        path.to_str().unwrap(),
        "correlate",
        "reserve",
        "--sense",
        "0",
        "--pair",
        "nsubj,obj",
        "--restarts",
        "4",
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("total 2.000000000"));
    assert!(text.contains("quantum 1.000000"));
    assert!(text.contains("classical "));
    assert!(text.contains("converged true"));
}

#[test]
fn correlate_above_cap_keeps_total_and_omits_quantum() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let output = run(&[
        "query",
        lexicon.to_str().unwrap(),
        "correlate",
        "reserve",
        "--sense",
        "0",
        "--pair",
        "nsubj,obj",
    ]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("total 2.000000000"));
    assert!(text.contains("quantum omitted"));
}

#[test]
fn topk_ranks_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let args = [
        "query",
        lexicon.to_str().unwrap(),
        "topk",
        "book",
        "-k",
        "3",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    let text = stdout(&first);
    assert!(text.contains("rank 1 word schedule value 0.853553391"));
    assert!(text.contains("rank 2 word reserve value 0.603553391"));
    assert_eq!(stdout(&run(&args)), text);
}

#[test]
fn unknown_word_exits_four_with_suggestions() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let output = run(&["query", lexicon.to_str().unwrap(), "entropy", "bok"]);
    assert_eq!(code(&output), 4);
    let message = stderr(&output);
    assert!(message.contains("bok"));
    assert!(message.contains("book"));
}

#[test]
fn malformed_flags_exit_one() {
    let output = run(&["query"]);
    assert_eq!(code(&output), 1);

    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let bad_pair = run(&[
        "query",
        lexicon.to_str().unwrap(),
        "mutinfo",
        "book",
        "--pair",
        "nsubj",
    ]);
    assert_eq!(code(&bad_pair), 1);
}

#[test]
fn missing_lexicon_file_is_an_io_error() {
    let output = run(&["query", "/nonexistent/lexicon.dsem", "entropy", "book"]);
    assert_eq!(code(&output), 3);
}

#[test]
fn corrupt_lexicon_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let lexicon = build_toy(dir.path());
    let mut bytes = std::fs::read(&lexicon).unwrap();
    let middle = bytes.len() / 2;
    bytes[middle] ^= 1;
    let corrupt = dir.path().join("corrupt.dsem");
    std::fs::write(&corrupt, bytes).unwrap();
    let output = run(&["query", corrupt.to_str().unwrap(), "entropy", "book"]);
    assert_eq!(code(&output), 2);
    assert!(stderr(&output).contains("checksum"));
}

#[test]
fn selftest_passes_and_is_seed_deterministic() {
    let args = ["selftest", "--seed", "7", "--restarts", "2"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("check entropy-nonnegativity: PASS"));
    assert!(text.contains("check bell-entanglement: PASS"));
    assert!(text.contains("checks passed"));

    let second = run(&args);
    assert_eq!(stdout(&second), text);
}

#[test]
fn injected_entropy_fault_fails_the_nonnegativity_check() {
    let output = run(&[
        "selftest",
        "--restarts",
        "2",
        "--inject-fault",
        "entropy-sign",
    ]);
    assert_eq!(code(&output), 5);
    let text = stdout(&output);
    assert!(text.contains("check entropy-nonnegativity: FAIL"));
    assert!(stderr(&output).contains("entropy-nonnegativity"));
}
