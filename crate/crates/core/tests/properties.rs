mod common;

use common::{config, PROPERTIES};

fn property(name: &str) {
    let (_, check) = PROPERTIES.iter().find(|(n, _)| *n == name).expect("known property");
    if let Err(e) = check(&config(1000)) {
        panic!("{name}: {e}");
    }
}

#[test]
fn snf_contract() {
    property("snf contract");
}

#[test]
fn hnf_contract() {
    property("hnf contract");
}

#[test]
fn rank_relations() {
    property("rank relations");
}

#[test]
fn kernel_contract() {
    property("kernel contract");
}

#[test]
fn group_axioms_and_lagrange() {
    property("group axioms and Lagrange");
}

#[test]
fn closure_idempotence() {
    property("closure idempotence");
}

#[test]
fn moved_rank_conjugation_invariance() {
    property("moved rank conjugation invariance");
}

#[test]
fn moved_rank_plus_fixed_rank() {
    property("moved rank plus fixed rank");
}

#[test]
fn isotropy_equivariance() {
    property("isotropy equivariance");
}

#[test]
fn isotropy_meets() {
    property("isotropy meets");
}

#[test]
fn laurent_ring_axioms() {
    property("laurent ring axioms");
}

#[test]
fn orbit_sums() {
    property("orbit sums");
}

#[test]
fn verdict_consistency() {
    property("verdict consistency");
}

#[test]
fn every_property_has_a_test() {
    assert_eq!(PROPERTIES.len(), 13);
}
