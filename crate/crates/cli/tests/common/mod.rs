#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn conformance() -> Vec<String> {
    read_fixture("conformance.txt").lines().map(String::from).collect()
}

/// The 30-row fixture catalogue as an SQLite file.
pub fn fixture_db() -> tempfile::TempPath {
    let path = tempfile::NamedTempFile::new().unwrap().into_temp_path();
    rusqlite::Connection::open(&path)
        .unwrap()
        .execute_batch(&read_fixture("catalogue.sql"))
        .unwrap();
    path
}

/// Runs the built binary.
pub fn quiring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiring")).args(args).output().unwrap()
}

/// Runs the command line in process; returns (status, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("quiring").chain(args.iter().copied());
    let code = quiring_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}
