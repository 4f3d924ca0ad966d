//! Acceptance criterion 10 (byte-identical reports across consecutive runs)
//! plus exit-code and end-to-end checks of the command-line surface.

use std::process::{Command, Output};
use std::time::Instant;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn battery() -> Vec<Vec<String>> {
    let gsets = fixture("gsets.txt");
    let covers = fixture("covers.txt");
    let simpl = fixture("simplicial.txt");
    let cmds: Vec<Vec<&str>> = vec![
        vec!["core", "validate", "-i", &gsets, "-i", &covers, "-i", &simpl],
        vec!["core", "quotients", "--group", "s3"],
        vec!["core", "quotients", "--group", "z6"],
        vec!["gset", "orbits", "-i", &gsets, "--gset", "two2"],
        vec!["gset", "galois", "-i", &gsets, "--gset", "reg2"],
        vec!["gset", "slice", "-i", &gsets, "--map", "fold", "--point", "p"],
        vec!["gset", "exact-seq", "-i", &gsets, "--gset", "reg2", "--point", "p"],
        vec!["gset", "aut-card", "-i", &gsets, "--morphism", "sign4"],
        vec!["gset", "aut-card", "-i", &gsets, "--morphism", "embed24"],
        vec!["fp", "actions", "-i", &covers, "--presentation", "free1", "--degree", "3"],
        vec!["fp", "spectrum", "-i", &covers, "--presentation", "zmod2", "--degree", "3"],
        vec!["fp", "abel", "-i", &covers, "--presentation", "zmod2"],
        vec!["cover", "pi1", "--graph", "theta"],
        vec!["cover", "monodromy", "-i", &covers, "--cover", "dbl"],
        vec!["cover", "build", "-i", &covers, "--graph", "loop", "--faction", "cyc3"],
        vec!["cover", "deck", "-i", &covers, "--cover", "dbl"],
        vec!["cover", "trivquot", "-i", &covers, "--cover", "dbl"],
        vec!["cover", "prosystem", "--graph", "loop", "--depth", "3"],
        vec!["orbifold", "pi1", "--action", "z2-reflect-path2"],
        vec!["orbifold", "canonical", "--action", "z3-rotate-cycle3"],
        vec!["orbifold", "exact-seq", "--action", "z2-reflect-path2", "--degree-cap", "2"],
        vec!["orbifold", "enumerate", "--action", "z2-reflect-path2", "--degree", "2"],
        vec!["simplicial", "nerve", "-i", &covers, "--cover", "dbl"],
        vec!["simplicial", "pi1", "-i", &simpl, "--simplicial", "circle"],
        vec!["simplicial", "cosk", "-i", &simpl, "--simplicial", "circle", "--m", "1"],
        vec!["simplicial", "hypercheck", "-i", &covers, "--cover", "dbl"],
        vec!["simplicial", "prop53", "-i", &covers, "--cover", "dbl"],
    ];
    cmds.into_iter()
        .map(|c| c.into_iter().map(|s| s.to_string()).collect())
        .collect()
}

/// Criterion 10: two consecutive runs of the full command battery produce
/// byte-identical reports and succeed.
#[test]
fn acceptance_10_determinism() {
    let started = Instant::now();
    let mut commands = 0usize;
    for cmd in battery() {
        let args: Vec<&str> = cmd.iter().map(|s| s.as_str()).collect();
        let first = run(&args);
        let second = run(&args);
        assert!(
            first.status.success(),
            "command failed: {cmd:?}\n{}",
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(
            first.stdout, second.stdout,
            "reports differ across runs for {cmd:?}"
        );
        assert!(!first.stdout.is_empty(), "no report emitted for {cmd:?}");
        commands += 1;
    }
    println!(
        "acceptance 10 (determinism): PASS — {commands} commands byte-identical across two runs [{:.2}s]",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn exit_codes() {
    // success
    let ok = run(&["cover", "pi1", "--graph", "wedge2"]);
    assert_eq!(ok.status.code(), Some(0));

    // invariant violation in otherwise parsable input
    let bad = fixture("bad_table.txt");
    let invalid = run(&["core", "validate", "-i", &bad]);
    assert_eq!(invalid.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&invalid.stderr);
    assert!(msg.contains("invariant"), "unexpected message: {msg}");

    // dangling reference is a parse error naming the missing entity
    let dangling = fixture("dangling.txt");
    let missing = run(&["core", "validate", "-i", &dangling]);
    assert_eq!(missing.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&missing.stderr);
    assert!(msg.contains("nosuchgraph"), "unexpected message: {msg}");

    // unreadable file
    let gone = run(&["core", "validate", "-i", "/nonexistent/file.txt"]);
    assert_eq!(gone.status.code(), Some(2));

    // budget refusal carries its distinct message and exit 1
    let refused = run(&["fp", "actions", "-i", &fixture("covers.txt"), "--presentation", "free1", "--degree", "7"]);
    assert_eq!(refused.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&refused.stderr);
    assert!(msg.contains("budget"), "unexpected message: {msg}");
}

#[test]
fn empty_input_is_empty_workspace() {
    let dir = std::env::temp_dir().join("galois-cli-empty-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.txt");
    std::fs::write(&path, "# nothing here\n").unwrap();
    let out = run(&["core", "validate", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"valid\": true"));
}

#[test]
fn monodromy_of_declared_cover_is_the_swap() {
    let covers = fixture("covers.txt");
    let out = run(&["cover", "monodromy", "-i", &covers, "--cover", "dbl"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["degree"], 2);
    assert_eq!(v["result"]["images"][0], "(1 2)");
}

#[test]
fn negative_verdicts_still_report() {
    // a non-Galois G-set: report false, exit 0 (the query succeeded)
    let gsets = fixture("gsets.txt");
    let out = run(&["gset", "galois", "-i", &gsets, "--gset", "two2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["galois"], false);

    // exact-seq refuses a non-Galois object with exit 1
    let out = run(&["gset", "exact-seq", "-i", &gsets, "--gset", "two2", "--point", "p0"]);
    assert_eq!(out.status.code(), Some(1));
}
