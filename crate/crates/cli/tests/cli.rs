use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wfilt_core::catalog;
use wfilt_core::io::report::Report;
use wfilt_core::io::Document;

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> PathBuf {
    examples().join(format!("{name}.json"))
}

fn wfilt(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wfilt")).args(args).arg(file).output().expect("binary runs")
}

fn machine(args: &[&str], file: &Path) -> (i32, Report) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = wfilt(&all, file);
    let rep =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), rep)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wfilt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn golden_files_match_the_catalog() {
    for (name, doc) in catalog::all() {
        let on_disk = std::fs::read_to_string(example(name)).unwrap_or_else(|_| panic!("missing {name}.json"));
        assert_eq!(on_disk, doc.to_canonical_string(), "{name}.json is stale; run the regenerate example");
    }
}

#[test]
fn documents_round_trip_byte_for_byte() {
    for (name, _) in catalog::all() {
        let text = std::fs::read_to_string(example(name)).unwrap();
        let doc = Document::parse_str(&text).unwrap();
        assert_eq!(doc.to_canonical_string(), text, "{name}");
    }
}

#[test]
fn weight_of_cstar_cstar() {
    let out = wfilt(&["weight"], &example("cstar_cstar_p1xp1"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Gr_2^W H^1 = Q^2 (rank 2)"), "{text}");
}

#[test]
fn decalage_on_the_zero_complex() {
    let (code, rep) = machine(&["verify", "--check", "decalage"], &example("empty"));
    assert_eq!(code, 0);
    assert!(!rep.verdicts.is_empty() && rep.passed());
}

#[test]
fn singularity_of_the_nodal_torus() {
    let out = wfilt(&["singularity"], &example("nodal_punctured_torus"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Gr_0^L H^1 = Q (rank 1)"), "{text}");
    assert!(text.contains("Gr_1^L H^1 = Q^3 (rank 3)"), "{text}");
}

#[test]
fn failed_verdict_exits_one() {
    // Three points over an empty corner: commutes, not exact.
    let id = r#"{"rows": 1, "cols": 1, "entries": [[1]]}"#;
    let text = format!(
        r#"{{"schema": 1, "kind": "square", "ring": "Q", "options": {{}},
            "payload": {{"type": "explicit", "hx": [[0, 1]], "hxt": [[0, 1]], "hy": [[0, 1]], "hyt": [],
                        "maps": [{{"map": "f", "degree": 0, "matrix": {id}}},
                                 {{"map": "i", "degree": 0, "matrix": {id}}}]}}}}"#
    );
    let path = scratch("broken_square.json", &text);
    let (code, rep) = machine(&["verify", "--check", "mv"], &path);
    assert_eq!(code, 1);
    assert!(!rep.passed());
}

#[test]
fn bad_input_exits_two() {
    let path = scratch("malformed.json", "{\"schema\": 1, \"kind\": ");
    assert_eq!(wfilt(&["report"], &path).status.code(), Some(2));
    let path = scratch(
        "schema2.json",
        &std::fs::read_to_string(example("empty")).unwrap().replace("\"schema\": 1", "\"schema\": 2"),
    );
    assert_eq!(wfilt(&["report"], &path).status.code(), Some(2));
    // Wrong kind for the subcommand.
    let out = wfilt(&["singularity"], &example("projective_plane"));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(wfilt(&["verify", "--check", "mv"], &example("empty")).status.code(), Some(2));
}

#[test]
fn machine_reports_reparse() {
    for (name, _) in catalog::all() {
        let (code, rep) = machine(&["report"], &example(name));
        assert_eq!(code, 0, "{name}");
        let again: Report = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
        assert_eq!(again.verdicts, rep.verdicts, "{name}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let file = example("node_times_cstar_resolution");
    let one = wfilt(&["--format", "machine", "report"], &file);
    let two = Command::new(env!("CARGO_BIN_EXE_wfilt"))
        .env("WFILT_THREADS", "2")
        .args(["--format", "machine", "report"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(one.stdout, two.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_wfilt"))
        .env("WFILT_THREADS", "lots")
        .args(["report"])
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("WFILT_THREADS"));
}

#[test]
fn pages_of_a_filtered_complex() {
    let (code, rep) = machine(&["pages", "--r", "1"], &example("filtered_random"));
    assert_eq!(code, 0);
    assert_eq!(rep.assemblies[0].pages.len(), 1);
    assert_eq!(rep.assemblies[0].pages[0].r, 1);
}
