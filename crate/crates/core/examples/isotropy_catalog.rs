//! Isotropy groups up to conjugacy, each with a witness vector.

use multinv::catalog::builtin;
use multinv::group::{FiniteMatrixGroup, DEFAULT_CAP};
use multinv::isotropy::{enumerate_isotropy_groups, isotropy_group_of, witness_report};
use multinv::obstruction::format_vector;

pub fn run_example() -> multinv::Result<()> {
    let l = builtin("sym4")?;
    let g = FiniteMatrixGroup::close(&l, DEFAULT_CAP)?;
    let catalog = enumerate_isotropy_groups(&g)?;
    for c in &catalog.classes {
        assert_eq!(isotropy_group_of(&g, &c.witness).members(), c.subgroup.members());
        println!(
            "order {:>2}, {:>2} conjugates, fixed rank {}, witness {}",
            c.subgroup.order(),
            c.class_size,
            c.fixed_space.rows(),
            format_vector(&c.witness)
        );
    }

    print!("{}", witness_report(&builtin("icosian")?, DEFAULT_CAP)?.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
