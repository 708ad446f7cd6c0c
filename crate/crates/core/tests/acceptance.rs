//! The acceptance suite: one test per criterion, each printing a
//! PASS/FAIL line. Run with
//! `cargo test -p ortholab --test acceptance -- --nocapture`.

use ortholab::suite::{self, CriterionOutcome};

fn assert_criterion(outcome: CriterionOutcome) {
    println!(
        "{} {} ({})",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
}

#[test]
fn criterion_1_conditional_residuation_equivalence() {
    assert_criterion(suite::conditional_residuation_equivalence(8));
}

#[test]
fn criterion_2_strong_operator_residuation() {
    assert_criterion(suite::strong_operator_residuation(8));
}

#[test]
fn criterion_3_directoid_characterization() {
    assert_criterion(suite::directoid_characterization(7));
}

#[test]
fn criterion_4_variety_inside_class() {
    assert_criterion(suite::variety_inside_class(4));
}

#[test]
fn criterion_5_congruence_theorem() {
    assert_criterion(suite::congruence_theorem(6));
}

#[test]
fn criterion_6_completion_correspondence() {
    assert_criterion(suite::completion_correspondence(8));
}

#[test]
fn criterion_7_fixture_regressions() {
    assert_criterion(suite::fixture_regressions());
}

#[test]
fn criterion_8_oracle_cross_validation() {
    assert_criterion(suite::oracle_cross_validation(5));
}

#[test]
fn criterion_9_enumeration_counts() {
    assert_criterion(suite::enumeration_counts(8));
}
