//! Exit-code contract and report determinism for the command line tool.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_fdz"));
    assert!(p.exists(), "binary missing at {p:?}");
    p = p.canonicalize().unwrap();
    p
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

const FIXTURE: &str = "kind: ring\nrank: 3\nperiods: 0 0 2\ntorsion 3:\nmult 1 1: 3 1\n";
const ZRING: &str = "kind: ring\nrank: 1\nperiods: 0\nmult 1 1: 1 1\n";
const ZERO2: &str = "kind: ring\nrank: 3\nperiods: 0 0 2\ntorsion 3:\n";
const Z6: &str = "kind: scalar_ring\nrank: 1\nperiods: 6\ntorsion 1:\nmult 1 1: 1 1\none: 1\n";

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fdz-cli-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_exit_codes() {
    let dir = tempdir("validate");
    let good = write(&dir, "r1.ring", FIXTURE);
    let out = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // Shape violation: torsion coefficient at k <= i.
    let shape = write(
        &dir,
        "shape.ring",
        "kind: ring\nrank: 3\nperiods: 0 0 2\ntorsion 3: 1 1\n",
    );
    let out = run(&["validate", shape.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // Semantic violation: torsion relation breaks bilinearity.
    let semantic = write(
        &dir,
        "semantic.ring",
        "kind: ring\nrank: 2\nperiods: 2 0\ntorsion 1:\nmult 1 1: 2 1\n",
    );
    let out = run(&["validate", semantic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("violated"), "{text}");

    let out = run(&["validate", dir.join("missing.ring").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_report_mentions_fixture_values() {
    let dir = tempdir("invariants");
    let r1 = write(&dir, "r1.ring", FIXTURE);
    let out = run(&["invariants", r1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("e: 2"), "{text}");
    assert!(text.contains("regular: false"));
    assert!(text.contains("tame: false"));
    assert!(text.contains("width exact: 1"));
    assert!(text.contains("breakpoints: 1 2 4 4"));
}

#[test]
fn iso_and_equiv_exit_codes() {
    let dir = tempdir("pair");
    let r1 = write(&dir, "r1.ring", FIXTURE);
    let zero2 = write(&dir, "zero2.ring", ZERO2);
    let zring = write(&dir, "z.ring", ZRING);

    let out = run(&["iso", r1.to_str().unwrap(), r1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["iso", r1.to_str().unwrap(), zero2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("square"), "{text}");

    let out = run(&["equiv", r1.to_str().unwrap(), zring.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn twin_generate_certify_and_equiv() {
    let dir = tempdir("twin");
    let r1 = write(&dir, "r1.ring", FIXTURE);
    let twin = dir.join("twin3.ring");
    let out = run(&[
        "twin",
        r1.to_str().unwrap(),
        "--d",
        "3",
        "--output",
        twin.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("begin certificate"));

    // The emitted presentation feeds back into equiv with a certificate.
    let out = run(&["equiv", r1.to_str().unwrap(), twin.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("kind: equivalent"), "{text}");

    // Extract the certificate block and check it through certify.
    let cert_text: String = report
        .lines()
        .skip_while(|l| *l != "begin certificate")
        .skip(1)
        .take_while(|l| *l != "end certificate")
        .map(|l| format!("{l}\n"))
        .collect();
    let cert = write(&dir, "twin3.cert", &cert_text);
    let out = run(&[
        "certify",
        r1.to_str().unwrap(),
        twin.to_str().unwrap(),
        "--witness",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // Twin of a regular ring is an input error.
    let zring = write(&dir, "z.ring", ZRING);
    let out = run(&["twin", zring.to_str().unwrap(), "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("M = N"), "{text}");
}

#[test]
fn primes_subcommand() {
    let dir = tempdir("primes");
    let z6 = write(&dir, "z6.scalar", Z6);
    let out = run(&["primes", z6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("characteristics: 2 3"), "{text}");
    assert!(text.contains("verified: true"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempdir("determinism");
    let r1 = write(&dir, "r1.ring", FIXTURE);
    let a = run(&["invariants", r1.to_str().unwrap()]);
    let b = run(&["invariants", r1.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn round_trip_canonical_files() {
    // parse -> serialize -> parse is the identity on canonical files; the
    // twin output is such a file.
    let dir = tempdir("roundtrip");
    let r1 = write(&dir, "r1.ring", FIXTURE);
    let twin = dir.join("twin5.ring");
    let out = run(&[
        "twin",
        r1.to_str().unwrap(),
        "--d",
        "5",
        "--output",
        twin.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&twin).unwrap();
    let parsed = fdz::format::parse_presentation(&text).unwrap();
    assert_eq!(fdz::format::serialize_presentation(&parsed), text);
}
