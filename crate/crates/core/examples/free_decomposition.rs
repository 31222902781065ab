//! Certifying a free module decomposition of an invariant ring in a window,
//! and the counterexample found when a module generator is dropped.

use multinv::orbit::{alternating_polynomial_sector, verify_preset, Preset};
use multinv::Error;

pub fn run_example() -> multinv::Result<()> {
    let cert = verify_preset(Preset::DiagSl, 2, 4)?;
    println!(
        "diag_sl 2: {} products, {} targets verified up to sup-norm {}",
        cert.products.len(),
        cert.targets.len(),
        cert.interior_bound
    );

    match verify_preset(Preset::DiagSlWithoutEta, 2, 4) {
        Err(Error::DecompositionFails(f)) => println!("without eta: {f}"),
        Err(e) => return Err(e),
        Ok(_) => println!("without eta: unexpectedly certified"),
    }

    for row in alternating_polynomial_sector(3, 6)? {
        println!(
            "A3 degree {}: span rank {} of {} invariants, basis {}",
            row.degree, row.span_rank, row.invariant_rank, row.basis
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
