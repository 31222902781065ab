//! Hermite and Smith normal forms, kernels and quotient structure.

use multinv::linalg::{hnf, kernel_lattice, lattice_quotient_invariants, rank, snf, IntMatrix};

pub fn run_example() -> multinv::Result<()> {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("A =\n{a}");

    let (h, u) = hnf(&a);
    assert_eq!(&u * &a, h);
    println!("HNF =\n{h}");

    let s = snf(&a);
    assert_eq!(&(&s.u * &a) * &s.v, s.s);
    println!("Smith diagonal: {:?}", s.diagonal().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("det = {}, rank = {}", a.determinant(), rank(&a));

    let b = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let k = kernel_lattice(&b);
    assert!((&b * &k.transpose()).is_zero());
    println!("kernel of rank-1 map, basis rows:\n{k}");

    let q = lattice_quotient_invariants(2, &IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
    println!("Z^2 / <(2,0),(0,3)>: free rank {}, torsion {:?}", q.free_rank, q.torsion());
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
