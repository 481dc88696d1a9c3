use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use z5lab::families::{build, FamilyDescriptor};
use z5lab::gcg::{self, GcgDocument};
use z5lab::propcheck::random_triangulation;

fn z5lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z5lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, doc: &GcgDocument) -> String {
    let path = dir.join(name);
    fs::write(&path, gcg::write(doc)).unwrap();
    path.to_str().unwrap().to_string()
}

/// Broken wheel on four vertices whose only free outer vertex forbids 3 and 4,
/// with the principal path coloured 0 1 2: no extension exists.
fn stuck_broken_wheel() -> GcgDocument {
    let (g, p) = build(&FamilyDescriptor::BrokenWheel(4)).unwrap();
    let mut doc = GcgDocument::plain(g);
    doc.colors.forbid(2, &[3, 4]).unwrap();
    for (v, c) in p.as_array().into_iter().zip([0, 1, 2]) {
        doc.colors.precolor(v, c).unwrap();
    }
    doc
}

#[test]
fn count_on_a_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.gcg", &GcgDocument::plain(random_triangulation(3, 0).unwrap()));
    let out = z5lab(&["count", &k3]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "colorings: 60\n");
    let out = z5lab(&["enumerate", &k3, "--limit", "4"]);
    assert!(stdout(&out).ends_with("listed: 4\n"));
    assert_eq!(z5lab(&["validate", &k3]).status.code(), Some(0));
}

#[test]
fn extend3_emits_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bw4.gcg", &stuck_broken_wheel());
    let cert = dir.path().join("cert.gcg");
    let out = z5lab(&["extend3", &input, "--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("obstruction: (broken 4)"));
    let doc = gcg::parse(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(doc.descriptor.as_deref(), Some("(broken 4)"));
    assert_eq!(stdout(&z5lab(&["count", cert.to_str().unwrap()])), "colorings: 0\n");

    let mut fine = stuck_broken_wheel();
    fine.colors.clear_precolor(1);
    fine.colors.precolor(1, 3).unwrap();
    let input = write(dir.path(), "fine.gcg", &fine);
    let out = z5lab(&["extend3", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("coloring: "));
}

#[test]
fn check_is_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.txt");
    let args = ["check", "lemma1", "--n-max", "8", "--seed", "7", "--samples", "3"];
    let out = z5lab(&[&args[..], &["--report", report.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().last(), Some("PASS"));
    assert!(text.contains("# seed 7\n"));
    let body = |s: String| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    let again = z5lab(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(body(text), body(stdout(&again)));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(z5lab(&[]).status.code(), Some(1));
    assert_eq!(z5lab(&["count"]).status.code(), Some(1));
    assert_eq!(z5lab(&["check", "lemma9"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let square = dir.path().join("square.gcg");
    fs::write(&square, "gcg v1\nn 4\nrot 0 1 3\nrot 1 2 0\nrot 2 3 1\nrot 3 0 2\nouter 4 0 1 2 3\n").unwrap();
    let out = z5lab(&["validate", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation"));
    assert_eq!(z5lab(&["count", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn family_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.gcg");
    let out = z5lab(&["family", "gen", "(glue (wheel 5) (broken 4))", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = z5lab(&["family", "recognize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("descriptor: "));
    let k3 = write(dir.path(), "k3.gcg", &GcgDocument::plain(random_triangulation(6, 3).unwrap()));
    let out = z5lab(&["lemma1-alpha", &k3, "--no-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("alpha: "));
}
