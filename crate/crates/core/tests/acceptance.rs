//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with the measured values; run with `--nocapture` to see them.

use qudit::acceptance::{run, Constants};

fn check(id: u8) {
    let report = run(id, &Constants::default());
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_ggm_algebra() {
    check(1);
}

#[test]
fn criterion_02_su3_structure_constants() {
    check(2);
}

#[test]
fn criterion_03_singlet_reductions() {
    check(3);
}

#[test]
fn criterion_04_concurrence() {
    check(4);
}

#[test]
fn criterion_05_werner_ppt_threshold() {
    check(5);
}

#[test]
fn criterion_06_tsirelson_bound() {
    check(6);
}

#[test]
fn criterion_07_teleportation() {
    check(7);
}

#[test]
fn criterion_08_qubit_p_norm_coherence() {
    check(8);
}

#[test]
fn criterion_09_bloch_roundtrip() {
    check(9);
}

#[test]
fn criterion_10_entropy_properties() {
    check(10);
}

#[test]
fn criterion_11_qutrit_positivity() {
    check(11);
}

#[test]
fn criterion_12_postulate_suite() {
    check(12);
}
