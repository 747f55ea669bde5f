//! End-to-end tests of the binary: exit codes, JSON round-trips, and
//! byte-level determinism across runs.

use std::process::{Command, Output};

use ptilde::report::{CharacterReport, HwmodReport, OrbitReport, SemiInvariantReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptilde"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn describe_reports_the_parabolic_split() {
    let o = run(&["describe", "--type", "A2", "--pi-prime", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim r = 4"), "{s}");
    assert!(s.contains("dim m = 2"), "{s}");

    // empty π′ is the Borel
    let o = run(&["describe", "--type", "A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim m = 1"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["describe", "--type", "A2", "--pi-prime", "1,2"][..],
        &["describe", "--type", "H9"][..],
        &["describe", "--type", "A2", "--pi-prime", "7"][..],
        &["hwmod", "--type", "A2", "--pi-prime", "1", "--lambda", "1"][..],
        &["nonsense"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exit_codes_track_confirmation() {
    let o = run(&["verify", "--type", "A1", "--trunc", "8", "--max-degree", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: confirmed"));

    // a polynomial ceiling of 0 cannot confirm the degree-2 weight
    let o = run(&["verify", "--type", "A1", "--trunc", "2", "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("overall: incomplete"));
}

#[test]
fn resource_ceiling_exits_two() {
    let o = run(&[
        "hwmod", "--type", "A2", "--pi-prime", "1", "--lambda", "9,9",
        "--dim-ceiling", "200",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_round_trip() {
    let o = run(&[
        "orbits", "--type", "B2", "--pi-prime", "1", "--trunc", "12",
        "--seed", "7", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rep: OrbitReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.orbits.len(), 2);
    assert_eq!(rep.orbits[0].delta_fundamental, vec!["0", "2"]);
    assert_eq!(rep.orbits[1].delta_fundamental, vec!["0", "2"]);
    assert!(rep.free_generation.confirmed);
    assert!(rep.random_check.unwrap().confirmed);

    let o = run(&["lower-bound", "--type", "A1", "--trunc", "8", "--format", "json"]);
    let rep: CharacterReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.entries.len(), 5);

    let o = run(&["verify", "--type", "A2", "--pi-prime", "1", "--trunc", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: SemiInvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.confirmed);

    let o = run(&[
        "hwmod", "--type", "A2", "--pi-prime", "1", "--lambda", "0,1",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rep: HwmodReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.invariant_dim, 0);
    assert!(!rep.in_semigroup);
    assert!(rep.consistent);
}

#[test]
fn identical_config_gives_identical_bytes() {
    for args in [
        &["orbits", "--type", "A3", "--pi-prime", "1,2", "--trunc", "12", "--seed", "17", "--format", "json"][..],
        &["verify", "--type", "B2", "--pi-prime", "2", "--trunc", "8", "--format", "json"][..],
        &["hwmod", "--type", "B2", "--pi-prime", "1", "--lambda", "1,1", "--format", "json"][..],
        &["lower-bound", "--type", "A2", "--pi-prime", "1", "--trunc", "12", "--format", "json"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "args {args:?}");
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}
