//! Closing generators into a finite matrix group and reading off structure.

use multinv::catalog::builtin;
use multinv::group::{FiniteMatrixGroup, DEFAULT_CAP};

pub fn run_example() -> multinv::Result<()> {
    for name in ["sym4", "alt4", "rank3_order6", "diag_sl3"] {
        let l = builtin(name)?;
        let g = FiniteMatrixGroup::close(&l, DEFAULT_CAP)?;
        let whole = g.whole();
        println!(
            "{name}: rank {}, order {}, abelianization {:?}, perfect {}, element orders {:?}",
            l.rank,
            g.order(),
            whole.abelianization(),
            whole.is_perfect(),
            g.element_order_histogram()
        );
    }

    // Closure stops at the cap instead of running forever.
    let s6 = builtin("sym6")?;
    match FiniteMatrixGroup::close(&s6, 100) {
        Err(e) => println!("sym6 with cap 100: {e}"),
        Ok(g) => println!("sym6 closed with {} elements", g.order()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
