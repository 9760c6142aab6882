use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn trisect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisect"))
        .args(args)
        .output()
        .unwrap()
}

fn trisect_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trisect"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_line() {
    let o = trisect(&["invariants", "corpus:cp2_lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g=1 k=0 chi=3 H1=0\n");
    let o = trisect(&["invariants", "corpus:cp2_lines_achiral"]);
    assert_eq!(stdout(&o), "g=5 k=2 chi=1 H1=Z\n");
}

#[test]
fn corpus_list_and_show() {
    let o = trisect(&["corpus", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("genus1_truncated") && text.contains("invalid"));

    let o = trisect(&["corpus", "show", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E:2:"), "{}", stderr(&o));

    let o = trisect(&["corpus", "show", "cp2_conics", "--entry"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["params"]["g"], 10);
}

#[test]
fn shown_pencil_can_be_checked_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("genus1.json");
    let o = trisect(&["corpus", "show", "genus1_pencil"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let o = trisect(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["l"], 12);
}

#[test]
fn truncated_pencil_is_rejected() {
    let o = trisect(&["check", "corpus:genus1_truncated"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], false);
    let mono = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "monodromy")
        .unwrap();
    assert_eq!(mono["details"]["deviation"], serde_json::json!([[0, 0], [-1, 0]]));
    assert!(stderr(&o).contains("E:1:check monodromy failed"));

    for args in [
        &["trisect", "corpus:genus1_truncated"][..],
        &["trisect", "corpus:genus1_truncated", "--force"][..],
    ] {
        let o = trisect(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(stderr(&o).starts_with("E:1:"));
    }
}

#[test]
fn trisect_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    let o = trisect(&["trisect", "corpus:quadric_pencil", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let from_stdout = trisect(&["trisect", "corpus:quadric_pencil"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), from_stdout);

    let o = trisect(&["verify", "corpus:quadric_pencil", "-d", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certification"], "HOMOLOGY-CERTIFIED");
    assert_eq!(v["euler_diagram"], 4);

    // a diagram for a different pencil
    let o = trisect(&["verify", "corpus:cp2_lines", "-d", p]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_diagram_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let mut d: Value = serde_json::from_slice(&trisect(&["trisect", "corpus:cp2_lines"]).stdout).unwrap();
    d["families"][0][0]["class"] = serde_json::json!([2, 0]);
    std::fs::write(&path, serde_json::to_vec(&d).unwrap()).unwrap();
    let o = trisect(&["verify", "corpus:cp2_lines", "-d", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certification"], "NOT-CERTIFIED");
    assert!(stderr(&o).contains("E:1:check cut_system[1] failed"));
}

#[test]
fn bad_input_exits_2() {
    let o = trisect_stdin(&["check", "-"], b"{ not json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E:2:"));

    let o = trisect_stdin(&["check", "-"], br#"{"h": 1, "b": 0, "cycles": []}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("base locus must be nonempty"), "{}", stderr(&o));

    let o = trisect(&["check", "/nonexistent/pencil.json"]);
    assert_eq!(o.status.code(), Some(2));

    let o = trisect(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E:2:"));
}

#[test]
fn pencil_from_stdin() {
    let json = trisect(&["corpus", "show", "cp2_lines"]).stdout;
    let o = trisect_stdin(&["invariants", "-"], &json);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "g=1 k=0 chi=3 H1=0\n");
}

#[test]
fn render_draws_every_curve() {
    let o = trisect(&["render", "corpus:cp2_conics"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<path class=\"curve").count(), 30);
    assert!(svg.contains("homology-schematic"));
}

#[test]
fn help_exits_0() {
    let o = trisect(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("trisect"));
}
