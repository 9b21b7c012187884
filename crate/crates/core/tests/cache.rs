use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str], env_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tckit"));
    cmd.args(args).env_remove("TCKIT_CACHE");
    if let Some(d) = env_dir {
        cmd.env("TCKIT_CACHE", d);
    }
    cmd.output().unwrap()
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gb"))
        .collect();
    v.sort();
    v
}

#[test]
fn cache_dir_flag_writes_entries() {
    let dir = tempfile::tempdir().unwrap();
    let plane = data("plane2.ring");
    let first = run(&["gb", &plane, "--cache-dir", dir.path().to_str().unwrap()], None);
    assert_eq!(first.status.code(), Some(0));
    let files = entries(dir.path());
    assert!(!files.is_empty());
    for f in &files {
        assert!(fs::read_to_string(f).unwrap().starts_with("tckit-gb v1 "));
    }
    let second = run(&["gb", &plane, "--cache-dir", dir.path().to_str().unwrap()], None);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(entries(dir.path()), files);
}

#[test]
fn env_variable_selects_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fc-member", &data("cone2.ring"), "--u", "x^2"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(!entries(dir.path()).is_empty());
}

#[test]
fn corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let plane = data("plane2.ring");
    let clean = run(&["gb", &plane], None);
    run(&["gb", &plane], Some(dir.path()));
    for f in entries(dir.path()) {
        fs::write(&f, "tckit-gb v1 wrong\ngarbage ^^\n").unwrap();
    }
    let again = run(&["gb", &plane], Some(dir.path()));
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(again.stdout, clean.stdout);
    for f in entries(dir.path()) {
        assert!(!fs::read_to_string(&f).unwrap().contains("garbage"));
    }
}

#[test]
fn unusable_directory_still_answers() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    fs::write(&file, "").unwrap();
    let out = run(&["gb", &data("plane2.ring"), "--cache-dir", file.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
}
