//! Checking the necessary Cohen-Macaulay conditions on builtin lattices.

use multinv::catalog::builtin;
use multinv::group::DEFAULT_CAP;
use multinv::obstruction::{check_necessary_conditions, copies_verdict};

pub fn run_example() -> multinv::Result<()> {
    let report = check_necessary_conditions(&builtin("rank3_order4")?, DEFAULT_CAP)?;
    print!("{}", report.to_text());

    for name in ["sym3", "alt4", "root_a2", "signed_root_s5", "icosian"] {
        let r = check_necessary_conditions(&builtin(name)?, DEFAULT_CAP)?;
        println!("{name}: {}", r.verdict);
    }

    let r = copies_verdict(&builtin("root_a2")?, 3, DEFAULT_CAP)?;
    println!("root_a2 three times: {}", r.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
