//! Laurent polynomials, orbit sums and invariance.

use multinv::catalog::builtin;
use multinv::orbit::{express_in_orbit_basis, is_invariant, orbit_sum, LaurentElement, OrbitAction, OrbitBasis};

pub fn run_example() -> multinv::Result<()> {
    let action = OrbitAction::new(&builtin("root_a2")?)?;
    let s = orbit_sum(&action, &[1, 0]);
    println!("orbit sum of x^(1,0): {s}");
    assert!(is_invariant(&action, &s));

    let square = &s * &s;
    println!("its square: {square}");
    for (rep, c) in express_in_orbit_basis(&action, &square)? {
        println!("  {c} * sigma{rep:?}");
    }

    let x = LaurentElement::monomial(vec![1, 0]);
    println!("x^(1,0) invariant: {}", is_invariant(&action, &x));

    let basis = OrbitBasis::new(&action, 2);
    println!("orbits inside the window of radius 2: {}", basis.representatives.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
