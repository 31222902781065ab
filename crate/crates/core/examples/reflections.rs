//! Moved ranks, reflections and the bireflection subgroup.

use multinv::catalog::builtin;
use multinv::group::{FiniteMatrixGroup, DEFAULT_CAP};
use multinv::reflection::{bireflection_subgroup, is_bireflection_group, profile};

pub fn run_example() -> multinv::Result<()> {
    let g = FiniteMatrixGroup::close(&builtin("sym4")?, DEFAULT_CAP)?;
    let mut by_rank = std::collections::BTreeMap::new();
    for i in 0..g.order() {
        *by_rank.entry(profile(&g, i).moved_rank).or_insert(0) += 1;
    }
    println!("S4 on U4, elements by moved rank: {by_rank:?}");
    println!("generated by bireflections: {}", is_bireflection_group(&g.whole()));

    for name in ["rank3_order2", "rank3_order4", "rank3_order6"] {
        let g = FiniteMatrixGroup::close(&builtin(name)?, DEFAULT_CAP)?;
        let m = bireflection_subgroup(&g.whole());
        println!("{name}: |G| = {}, |M(G)| = {}", g.order(), m.order());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
