//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`); the same checks back the CLI's
//! `selftest` subcommand.

use stable_forms::selftest::{self, CriterionResult};

fn assert_criterion(r: CriterionResult) {
    println!(
        "criterion {:2}: {} ... {}",
        r.id,
        r.title,
        if r.pass { "PASS" } else { "FAIL" }
    );
    for line in &r.details {
        if line.starts_with("FAIL") {
            println!("    {line}");
        }
    }
    assert!(r.pass, "criterion {} ({}) failed", r.id, r.title);
}

#[test]
fn criterion_01_stability_dimensions() {
    let start = std::time::Instant::now();
    assert_criterion(selftest::criterion_stability().unwrap());
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 10,
        "stability suite took {elapsed:?}, budget 10s"
    );
}

#[test]
fn criterion_02_metric_volume() {
    assert_criterion(selftest::criterion_metric_volume().unwrap());
}

#[test]
fn criterion_03_duality() {
    assert_criterion(selftest::criterion_duality().unwrap());
}

#[test]
fn criterion_04_restrictions() {
    assert_criterion(selftest::criterion_restriction().unwrap());
}

#[test]
fn criterion_05_oracle_equivalence() {
    assert_criterion(selftest::criterion_oracle_equivalence().unwrap());
}

#[test]
fn criterion_06_witness_suite() {
    assert_criterion(selftest::criterion_witnesses().unwrap());
}

#[test]
fn criterion_07_extension_equivalences() {
    assert_criterion(selftest::criterion_extension_equivalences().unwrap());
}

#[test]
fn criterion_08_signatures() {
    assert_criterion(selftest::criterion_signatures().unwrap());
}

#[test]
fn criterion_09_hitchin() {
    assert_criterion(selftest::criterion_hitchin().unwrap());
}

#[test]
fn criterion_10_simplicial() {
    assert_criterion(selftest::criterion_simplicial().unwrap());
}

#[test]
fn criterion_11_parabolic_stabilizer() {
    assert_criterion(selftest::criterion_parabolic_stabilizer().unwrap());
}
