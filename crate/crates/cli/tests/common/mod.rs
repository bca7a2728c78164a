#![allow(dead_code)]

use std::path::{Path, PathBuf};

use proptest::test_runner::{Config, RngSeed};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Every file of the corpus, sorted by name.
pub fn corpus() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("ine" | "ext")))
        .collect();
    v.sort();
    v
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line in-process. `args` excludes the program name.
pub fn run(args: &[&str], stdin: &str) -> Outcome {
    let mut all = vec!["redund"];
    all.extend_from_slice(args);
    let mut input = stdin.as_bytes();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = redund::cli::run(all, &mut input, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn data(name: &str) -> String {
    data_dir().join(name).display().to_string()
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}
