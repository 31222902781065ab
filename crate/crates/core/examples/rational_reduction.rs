//! Effective reduction, direct sums and rational isomorphism.

use multinv::catalog::builtin;
use multinv::group::{GLattice, DEFAULT_CAP};
use multinv::linalg::IntMatrix;
use multinv::obstruction::{check_necessary_conditions, direct_sum, effective_reduction, rationally_isomorphic};

pub fn run_example() -> multinv::Result<()> {
    let u3 = builtin("sym3")?;
    let reduced = effective_reduction(&u3);
    println!("U3 has rank {}, its effective reduction rank {}", u3.rank, reduced.rank);

    let trivial = GLattice::new("trivial", 1, vec![IntMatrix::identity(1); 2])?;
    let split = direct_sum(&trivial, &builtin("root_a2")?)?;
    let iso = rationally_isomorphic(&u3, &split, DEFAULT_CAP)?;
    println!("U3 and Z + A2 rationally isomorphic: {iso}");

    let a = check_necessary_conditions(&u3, DEFAULT_CAP)?;
    let b = check_necessary_conditions(&split, DEFAULT_CAP)?;
    println!("verdicts: {} / {}", a.verdict, b.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
