//! Builtin lattices: the rank-3 non-bireflection classes, permutation and
//! root lattices of symmetric and alternating groups, the diagonal sign
//! groups, the signed root lattice of `S_5`, and the icosian lattice of the
//! binary icosahedral group.
//!
//! Names are accepted with or without a `builtin:` prefix. Parametrized
//! families take their size as a suffix: `sym4`, `sym4_u4`, `alt5`,
//! `root_a3`, `diag_sl3`, `trivial2`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{permutation_matrix, GLattice};
use crate::linalg::{self, IntMatrix};

pub const BUILTIN_PREFIX: &str = "builtin:";

/// The named entries screened by batch runs and the acceptance suite.
pub const CATALOG: &[&str] = &[
    "rank3_order2",
    "rank3_order4",
    "rank3_order6",
    "sym3_u3",
    "sym4_u4",
    "alt3_u3",
    "alt4_u4",
    "root_a2",
    "root_a3",
    "diag_sl2",
    "diag_sl3",
    "signed_root_s5",
    "icosian",
];

pub fn builtin(name: &str) -> Result<GLattice> {
    let key = name.strip_prefix(BUILTIN_PREFIX).unwrap_or(name);
    let unknown = || Error::UnknownBuiltin(name.to_string());
    match key {
        "rank3_order2" => rank3(key, &[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        "rank3_order4" => rank3(key, &[[0, 1, 0], [-1, 0, 0], [0, 0, -1]]),
        "rank3_order6" => rank3(key, &[[0, 0, -1], [-1, 0, 0], [0, -1, 0]]),
        "signed_root_s5" => signed_root_s5(),
        "icosian" => icosian(),
        _ => {
            let (family, n) = parse_family(key).ok_or_else(unknown)?;
            match family {
                "sym" => symmetric(n),
                "alt" => alternating(n),
                "root_a" => root_lattice(n + 1),
                "diag_sl" => diag_sl(n),
                "trivial" => GLattice::new(format!("trivial{n}"), n, vec![]),
                _ => Err(unknown()),
            }
        }
    }
}

/// Group order each builtin is documented to close to.
pub fn expected_order(name: &str) -> Option<usize> {
    let key = name.strip_prefix(BUILTIN_PREFIX).unwrap_or(name);
    let fact = |n: usize| (1..=n).product::<usize>();
    match key {
        "rank3_order2" => Some(2),
        "rank3_order4" => Some(4),
        "rank3_order6" => Some(6),
        "signed_root_s5" | "icosian" => Some(120),
        _ => {
            let (family, n) = parse_family(key)?;
            match family {
                "sym" => Some(fact(n)),
                "alt" => Some((fact(n) / 2).max(1)),
                "root_a" => Some(fact(n + 1)),
                "diag_sl" => Some(1 << (n.max(1) - 1)),
                "trivial" => Some(1),
                _ => None,
            }
        }
    }
}

fn parse_family(key: &str) -> Option<(&'static str, usize)> {
    for family in ["root_a", "diag_sl", "trivial", "sym", "alt"] {
        if let Some(rest) = key.strip_prefix(family) {
            // sym4 or sym4_u4
            let (num, suffix) = match rest.split_once("_u") {
                Some((a, b)) if family == "sym" || family == "alt" => (a, Some(b)),
                _ => (rest, None),
            };
            let n: usize = num.parse().ok()?;
            if suffix.is_some_and(|s| s.parse::<usize>().ok() != Some(n)) {
                return None;
            }
            let min = match family {
                "root_a" | "sym" | "alt" | "diag_sl" => 1,
                _ => 0,
            };
            return (n >= min && n <= 64).then_some((family, n));
        }
    }
    None
}

fn rank3(name: &str, rows: &[[i64; 3]; 3]) -> Result<GLattice> {
    let m = IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    GLattice::new(name, 3, vec![m])
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// `S_n` on `U_n = ⊕ ℤe_i`, generated by `(1 2)` and `(1 2 ... n)`.
pub fn symmetric(n: usize) -> Result<GLattice> {
    let gens = if n < 2 {
        vec![]
    } else {
        vec![permutation_matrix(&transposition(n, 0, 1)), permutation_matrix(&cycle(n))]
    };
    GLattice::new(format!("sym{n}_u{n}"), n, gens)
}

/// `A_n` on `U_n`, generated by the 3-cycles `(1 2 i)`.
pub fn alternating(n: usize) -> Result<GLattice> {
    let gens = (2..n)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            permutation_matrix(&p)
        })
        .collect();
    GLattice::new(format!("alt{n}_u{n}"), n, gens)
}

/// Matrix of a permutation on `A_{n-1} = {Σ z_i e_i : Σ z_i = 0}` in the
/// basis `f_i = e_i - e_{i+1}`, scaled by `sign`.
fn root_action(images: &[usize], sign: i64) -> IntMatrix {
    let n = images.len();
    let mut m = IntMatrix::zero(n - 1, n - 1);
    for i in 0..n - 1 {
        let (a, b) = (images[i], images[i + 1]);
        // e_a - e_b in the f basis
        let (lo, hi, s) = if a < b { (a, b, sign) } else { (b, a, -sign) };
        for k in lo..hi {
            m[(k, i)] = BigInt::from(s);
        }
    }
    m
}

/// `S_n` on the root lattice `A_{n-1}`.
pub fn root_lattice(n: usize) -> Result<GLattice> {
    let gens = if n < 2 {
        vec![]
    } else {
        vec![root_action(&transposition(n, 0, 1), 1), root_action(&cycle(n), 1)]
    };
    GLattice::new(format!("root_a{}", n - 1), n - 1, gens)
}

/// `diag(±1, ..., ±1) ∩ SL_n(ℤ)`, generated by sign changes in adjacent pairs.
pub fn diag_sl(n: usize) -> Result<GLattice> {
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let mut d = vec![1i64; n];
            d[i] = -1;
            d[i + 1] = -1;
            IntMatrix::diagonal(&d)
        })
        .collect();
    GLattice::new(format!("diag_sl{n}"), n, gens)
}

/// `S_5` on `ℤ⁻ ⊗ A_4`: each permutation acts by its sign times its root-lattice matrix.
pub fn signed_root_s5() -> Result<GLattice> {
    let gens = vec![root_action(&transposition(5, 0, 1), -1), root_action(&cycle(5), 1)];
    GLattice::new("signed_root_s5", 4, gens)
}

type Q = Ratio<i64>;

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct QSqrt5 {
    a: Q,
    b: Q,
}

impl QSqrt5 {
    fn new(a: Q, b: Q) -> Self {
        QSqrt5 { a, b }
    }

    fn zero() -> Self {
        QSqrt5::new(Q::zero(), Q::zero())
    }

    fn add(self, o: Self) -> Self {
        QSqrt5::new(self.a + o.a, self.b + o.b)
    }

    fn sub(self, o: Self) -> Self {
        QSqrt5::new(self.a - o.a, self.b - o.b)
    }

    fn mul(self, o: Self) -> Self {
        QSqrt5::new(
            self.a * o.a + Q::from(5) * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )
    }
}

type Quaternion = [QSqrt5; 4];

fn qmul(x: &Quaternion, y: &Quaternion) -> Quaternion {
    let [a1, b1, c1, d1] = *x;
    let [a2, b2, c2, d2] = *y;
    [
        a1.mul(a2).sub(b1.mul(b2)).sub(c1.mul(c2)).sub(d1.mul(d2)),
        a1.mul(b2).add(b1.mul(a2)).add(c1.mul(d2)).sub(d1.mul(c2)),
        a1.mul(c2).sub(b1.mul(d2)).add(c1.mul(a2)).add(d1.mul(b2)),
        a1.mul(d2).add(b1.mul(c2)).sub(c1.mul(b2)).add(d1.mul(a2)),
    ]
}

/// Eight rational coordinates scaled by 4; unit icosians become integral.
fn to_coords(q: &Quaternion) -> Vec<BigInt> {
    q.iter()
        .flat_map(|c| [c.a, c.b])
        .map(|r| {
            let s = r * Q::from(4);
            assert!(s.is_integer(), "coordinate {r} has denominator beyond 4");
            BigInt::from(s.to_integer())
        })
        .collect()
}

fn from_coords(v: &[BigInt]) -> Quaternion {
    let r = |x: &BigInt| Q::new(i64::try_from(x).expect("small coordinate"), 4);
    [0, 1, 2, 3].map(|i| QSqrt5::new(r(&v[2 * i]), r(&v[2 * i + 1])))
}

/// The binary icosahedral group acting by left multiplication on the
/// icosian ring, a rank-8 lattice.
///
/// The group is generated inside the quaternions over `ℚ(√5)` by
/// `(a + i + a*j)/2` and `(a + j + a*k)/2` with `a = (1 + √5)/2`,
/// `a* = (1 - √5)/2`. The lattice is the ℤ-span of its 120 elements.
pub fn icosian() -> Result<GLattice> {
    let quarter = Q::new(1, 4);
    let half = QSqrt5::new(Q::new(1, 2), Q::zero());
    let a_half = QSqrt5::new(quarter, quarter);
    let a_star_half = QSqrt5::new(quarter, -quarter);
    let zero = QSqrt5::zero();
    let gens: [Quaternion; 2] = [
        [a_half, half, a_star_half, zero],
        [a_half, zero, half, a_star_half],
    ];

    let one = [QSqrt5::new(Q::one(), Q::zero()), zero, zero, zero];
    let mut elements = vec![one];
    let mut seen = HashMap::from([(one, 0usize)]);
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = qmul(g, &x);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y) {
                e.insert(elements.len());
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(elements.len(), 120);

    let spanning = IntMatrix::from_rows(&elements.iter().map(to_coords).collect::<Vec<_>>());
    let basis = linalg::canonical_basis(&spanning);
    debug_assert_eq!(basis.rows(), 8);

    let matrices = gens
        .iter()
        .map(|g| {
            let mut m = IntMatrix::zero(8, 8);
            for j in 0..8 {
                let image = to_coords(&qmul(g, &from_coords(basis.row(j))));
                let coords = linalg::row_coordinates(&basis, &image)
                    .expect("icosian ring is closed under multiplication");
                for (i, c) in coords.into_iter().enumerate() {
                    m[(i, j)] = c;
                }
            }
            m
        })
        .collect();
    GLattice::new("icosian", 8, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteMatrixGroup, DEFAULT_CAP};

    fn order(name: &str) -> usize {
        FiniteMatrixGroup::close(&builtin(name).unwrap(), DEFAULT_CAP).unwrap().order()
    }

    #[test]
    fn catalog_orders_match_documentation() {
        for name in CATALOG {
            assert_eq!(Some(order(name)), expected_order(name), "{name}");
        }
    }

    #[test]
    fn parametrized_families() {
        assert_eq!(order("builtin:sym3"), 6);
        assert_eq!(builtin("sym3").unwrap().rank, 3);
        assert_eq!(order("alt5_u5"), 60);
        assert_eq!(order("root_a4"), 120);
        assert_eq!(order("diag_sl4"), 8);
        assert_eq!(order("trivial2"), 1);
        assert!(matches!(builtin("sym3_u4"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("e8"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn order_six_matrix_cubes_to_minus_identity() {
        let l = builtin("rank3_order6").unwrap();
        let g = &l.generators[0];
        assert_eq!(&(g * g) * g, IntMatrix::diagonal(&[-1, -1, -1]));
    }

    #[test]
    fn root_lattice_matrices_preserve_the_sum_zero_sublattice() {
        // f_i = e_i - e_{i+1} embedded in U_n; permutation action must agree.
        let n = 4;
        let emb = IntMatrix::from_rows(
            &(0..n)
                .map(|r| (0..n - 1).map(|c| if r == c { 1 } else if r == c + 1 { -1 } else { 0 }).collect())
                .collect::<Vec<Vec<i64>>>(),
        );
        for p in [transposition(n, 0, 1), cycle(n)] {
            assert_eq!(&permutation_matrix(&p) * &emb, &emb * &root_action(&p, 1));
        }
    }

    #[test]
    fn icosian_is_rank_eight_of_order_120() {
        let l = builtin("icosian").unwrap();
        assert_eq!(l.rank, 8);
        assert_eq!(order("icosian"), 120);
    }
}
