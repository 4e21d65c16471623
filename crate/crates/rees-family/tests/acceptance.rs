//! Acceptance gate: every check in the verification suite must pass,
//! inside its wall-clock budget. One pass/fail line per check; run with
//! `--nocapture` to see the lines for passing checks too.

use rees_family::verify;

fn gate(name: &str) {
    let outcome = verify::run_named(name).expect("check is registered");
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {name} ({} ms): {}",
        outcome.millis, outcome.detail
    );
    assert!(outcome.passed, "{name}: {}", outcome.detail);
}

#[test]
fn duplication_model() {
    gate("duplication-model");
}

#[test]
fn fiber_identifications() {
    gate("fiber-identifications");
}

#[test]
fn comaximal_equivalence() {
    gate("comaximal-equivalence");
}

#[test]
fn hilbert_across_fibers() {
    gate("hilbert-across-fibers");
}

#[test]
fn random_duplication_invariants() {
    gate("random-duplication-invariants");
}

#[test]
fn unit_criterion() {
    gate("unit-criterion");
}

#[test]
fn rationalization() {
    gate("rationalization");
}

#[test]
fn prime_fibers() {
    gate("prime-fibers");
}

#[test]
fn semigroup_ring_map() {
    gate("semigroup-ring-map");
}

#[test]
fn reducibility_witness() {
    gate("reducibility-witness");
}

#[test]
fn full_registry_is_green() {
    let outcomes = verify::run_all();
    assert_eq!(outcomes.len(), 10);
    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {} ({} ms): {}", o.name, o.millis, o.detail);
    }
    assert!(outcomes.iter().all(|o| o.passed));
}
