//! Byte-exact comparisons of CLI output against committed golden files.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tableaux"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn check(golden: &str, args: &[&str]) {
    let (code, text) = run(args);
    assert_eq!(code, 0, "{args:?}");
    let path = root().join("golden").join(golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(
        text == want,
        "{golden} differs from output of {args:?}:\n{text}"
    );
}

#[test]
fn gallery_reports() {
    for name in tableaux::gallery::names() {
        check(&format!("analyze-{name}.txt"), &["analyze", name]);
    }
}

#[test]
fn materialized_example_analyzes_like_the_gallery() {
    let dir = std::env::temp_dir().join(format!("tableaux-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("wave.toml");
    let (code, _) = run(&["examples", "wave", "--out", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    check("analyze-wave.txt", &["analyze", file.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn moduli_exports() {
    check(
        "moduli-320.m2",
        &[
            "moduli",
            "-r",
            "3",
            "-n",
            "3",
            "--chars",
            "3,2,0",
            "--format",
            "macaulay2",
        ],
    );
    check(
        "moduli-210.sing",
        &[
            "moduli", "-r", "2", "-n", "3", "--chars", "2,1,0", "--format", "singular",
        ],
    );
    check(
        "moduli-210.sage",
        &[
            "moduli", "-r", "2", "-n", "3", "--chars", "2,1,0", "--format", "sage",
        ],
    );
    check(
        "moduli-full.m2",
        &["moduli", "-r", "2", "-n", "2", "--chars", "2,2"],
    );
}

#[test]
fn eikonal_verdicts() {
    let data = root().join("data");
    for (name, bound) in [
        ("coordinate", "3"),
        ("cone", "3"),
        ("sheared", "2"),
        ("twisted", "3"),
    ] {
        let path = data.join(format!("{name}.toml"));
        check(
            &format!("eikonal-{name}.txt"),
            &["eikonal", path.to_str().unwrap(), "--bound", bound],
        );
    }
}

#[test]
fn example_listing() {
    let (code, text) = run(&["examples"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 8);
}
