//! Shared by the acceptance runner and the CLI tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

pub fn fixture_paths() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("fixtures directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "ring"))
        .collect();
    paths.sort();
    paths
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// (golden name, arguments after the program name, expected exit code)
pub fn golden_cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
    vec![
        ("spec-zx2-1", s(&["spec", "gallery:zx2-1"]), 0),
        ("ideals-ising", vec!["ideals".into(), fixture("ising.ring")], 0),
        ("ideals-left-m2", s(&["ideals", "gallery:m2-block", "--side", "l"]), 0),
        ("check-two-idem-prime", s(&["check", "gallery:two-idem", "--ideal", "", "--prop", "prime"]), 1),
        ("check-two-idem-prime-oracle", s(&["check", "gallery:two-idem", "--ideal", "", "--prop", "prime", "--mode", "oracle"]), 1),
        ("check-nilpotent-semiprime", s(&["check", "gallery:nilpotent", "--ideal", "", "--prop", "semiprime"]), 1),
        ("check-zx2-x-cprime", s(&["check", "gallery:zx2-x", "--ideal", "x", "--prop", "cprime"]), 0),
        ("closure-rep-s3", s(&["closure", "gallery:rep-s3", "--gens", "d"]), 0),
        ("minimal-primes-two-idem", s(&["minimal-primes", "gallery:two-idem", "--ideal", ""]), 0),
        ("quotient-zx2-x", s(&["quotient", "gallery:zx2-x", "--ideal", "x"]), 0),
        ("topology-zx2-x-zariski", s(&["topology", "gallery:zx2-x", "--style", "zariski"]), 0),
        ("topology-zx2-x-balmer", s(&["topology", "gallery:zx2-x", "--style", "balmer"]), 0),
        ("twocat-mixed-3obj", s(&["twocat", "gallery:mixed-3obj", "--classify-cprimes"]), 0),
        ("monomial-prime-x2", s(&["monomial", "--vars", "2", "--twist", "0,0;1,0", "--prime", "2,0"]), 1),
        ("monomial-face-prime", s(&["monomial", "--vars", "3", "--prime", "1,0,0;0,0,1"]), 0),
        ("monomial-truncate", s(&["monomial", "--vars", "2", "--truncate", "2"]), 0),
        ("monomial-face-quotient", s(&["monomial", "--vars", "3", "--face", "1"]), 0),
        ("gallery-list", s(&["gallery"]), 0),
        ("oracle-ising", s(&["oracle", "gallery:ising", "--samples", "200"]), 0),
        ("validate-nilpotent-square", vec!["validate".into(), fixture("nilpotent-square.ring")], 0),
        ("error-unknown-label", s(&["check", "gallery:zx2-1", "--ideal", "nope", "--prop", "prime"]), 2),
        ("error-guard", s(&["spec", "gallery:verlinde-sl2-24"]), 3),
    ]
}

pub fn run(args: &[String]) -> zplus::cli::CommandResult {
    zplus::cli::run_command(std::iter::once("zplus".to_string()).chain(args.iter().cloned()))
}
