//! Full acceptance suite, one test per criterion so failures are
//! attributable. Each prints its pass/fail line; `hn selftest` runs the
//! same checks.

use hn_cli::acceptance;

const SEED: u64 = 0x484e; // fixed suite seed

fn run(id: usize) {
    let c = acceptance::all()
        .into_iter()
        .find(|c| c.id == id)
        .expect("criterion exists");
    match (c.run)(SEED) {
        Ok(()) => println!("PASS {:>2}: {}", c.id, c.name),
        Err(e) => {
            println!("FAIL {:>2}: {} -- {}", c.id, c.name, e);
            panic!("criterion {} failed: {}", c.id, e);
        }
    }
}

#[test]
fn criterion_01_inversion_agreement() {
    run(1);
}

#[test]
fn criterion_02_composition_identity() {
    run(2);
}

#[test]
fn criterion_03_criteria_equivalence() {
    run(3);
}

#[test]
fn criterion_04_trace_identity() {
    run(4);
}

#[test]
fn criterion_05_slice_hessian() {
    run(5);
}

#[test]
fn criterion_06_disjoint_additivity() {
    run(6);
}

#[test]
fn criterion_07_self_inverting() {
    run(7);
}

#[test]
fn criterion_08_sigma_equations() {
    run(8);
}

#[test]
fn criterion_09_charp_vanishing() {
    run(9);
}

#[test]
fn criterion_10_tree_machinery() {
    run(10);
}

#[test]
fn criterion_11_numeric_bounds() {
    run(11);
}

#[test]
fn criterion_12_round_trip() {
    run(12);
}
