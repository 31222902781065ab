//! Runs every example as a test.

#[path = "../examples/exact_linalg.rs"]
mod exact_linalg;

#[test]
fn exact_linalg() {
    exact_linalg::run_example().unwrap();
}

#[path = "../examples/group_closure.rs"]
mod group_closure;

#[test]
fn group_closure() {
    group_closure::run_example().unwrap();
}

#[path = "../examples/reflections.rs"]
mod reflections;

#[test]
fn reflections() {
    reflections::run_example().unwrap();
}

#[path = "../examples/isotropy_catalog.rs"]
mod isotropy_catalog;

#[test]
fn isotropy_catalog() {
    isotropy_catalog::run_example().unwrap();
}

#[path = "../examples/obstruction_report.rs"]
mod obstruction_report;

#[test]
fn obstruction_report() {
    obstruction_report::run_example().unwrap();
}

#[path = "../examples/rational_reduction.rs"]
mod rational_reduction;

#[test]
fn rational_reduction() {
    rational_reduction::run_example().unwrap();
}

#[path = "../examples/orbit_sums.rs"]
mod orbit_sums;

#[test]
fn orbit_sums() {
    orbit_sums::run_example().unwrap();
}

#[path = "../examples/free_decomposition.rs"]
mod free_decomposition;

#[test]
fn free_decomposition() {
    free_decomposition::run_example().unwrap();
}

#[path = "../examples/group_files.rs"]
mod group_files;

#[test]
fn group_files() {
    group_files::run_example().unwrap();
}
