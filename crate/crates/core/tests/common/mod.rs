//! Independent oracles and property checks shared by the property suite and
//! the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use multinv::catalog::builtin;
use multinv::group::{FiniteMatrixGroup, GLattice, Subgroup, DEFAULT_CAP};
use multinv::isotropy::{enumerate_isotropy_groups, fixed_lattice, isotropy_group_of};
use multinv::linalg::{self, IntMatrix};
use multinv::obstruction::{check_necessary_conditions, effective_reduction, Verdict};
use multinv::orbit::{express_in_orbit_basis, is_invariant, orbit_sum, LaurentElement, OrbitAction};
use multinv::reflection::{bireflection_subgroup, in_xk, moved_rank, moved_rank_subgroup};

pub const SEED: u64 = 0x006d_756c_7469_6e76;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

// ---------------------------------------------------------------------------
// Oracles

/// Row reduction over ℚ; returns (rank, determinant when square).
fn rational_elimination(a: &IntMatrix) -> (usize, BigRational) {
    let mut m: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|r| a.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut det = BigRational::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let pivot = m[rank][c].clone();
        det *= &pivot;
        for r in rank + 1..rows {
            let f = &m[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in c..cols {
                let sub = &f * &m[rank][k];
                m[r][k] -= sub;
            }
        }
        rank += 1;
    }
    if rank < rows {
        det = BigRational::zero();
    }
    (rank, det)
}

pub fn oracle_rank(a: &IntMatrix) -> usize {
    rational_elimination(a).0
}

pub fn oracle_det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols());
    if a.rows() == 0 {
        return BigInt::one();
    }
    rational_elimination(a).1.to_integer()
}

pub fn oracle_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = BigInt::zero();
            for k in 0..a.cols() {
                s += &a[(i, k)] * &b[(k, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// Stabilizer bitmasks of all `m` in `[-|G|, |G|]^n`, by direct scan.
pub fn stabilizer_census(group: &FiniteMatrixGroup) -> BTreeSet<u64> {
    let order = group.order();
    assert!(order <= 64);
    let n = group.rank();
    let mats: Vec<Vec<i64>> = group
        .elements()
        .iter()
        .map(|g| g.to_i64_rows().unwrap().concat())
        .collect();
    let bound = order as i64;
    let mut m = vec![-bound; n];
    let mut masks = BTreeSet::new();
    loop {
        let mut mask = 0u64;
        for (i, g) in mats.iter().enumerate() {
            let fixed = (0..n).all(|r| {
                let row = &g[r * n..(r + 1) * n];
                row.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() == m[r]
            });
            if fixed {
                mask |= 1 << i;
            }
        }
        masks.insert(mask);
        let mut i = n;
        loop {
            if i == 0 {
                return masks;
            }
            i -= 1;
            if m[i] < bound {
                m[i] += 1;
                break;
            }
            m[i] = -bound;
        }
    }
}

pub fn mask_of(h: &Subgroup<'_>) -> u64 {
    h.members().iter().fold(0, |acc, &g| acc | (1 << g))
}

/// Orbit of `m` under all group elements, computed by direct application.
pub fn oracle_orbit(group: &FiniteMatrixGroup, m: &[i64]) -> BTreeSet<Vec<i64>> {
    group
        .elements()
        .iter()
        .map(|g| {
            let rows = g.to_i64_rows().unwrap();
            rows.iter()
                .map(|row| row.iter().zip(m).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect()
}

pub fn oracle_orbit_sum(group: &FiniteMatrixGroup, m: &[i64]) -> LaurentElement {
    LaurentElement::from_terms(
        m.len(),
        oracle_orbit(group, m).into_iter().map(|e| (e, BigInt::one())),
    )
}

/// Element-order histogram of `SL(2, F_5)`.
pub fn oracle_sl2_f5_histogram() -> BTreeMap<usize, usize> {
    let p = 5i64;
    let mul = |x: [i64; 4], y: [i64; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]).rem_euclid(p),
            (x[0] * y[1] + x[1] * y[3]).rem_euclid(p),
            (x[2] * y[0] + x[3] * y[2]).rem_euclid(p),
            (x[2] * y[1] + x[3] * y[3]).rem_euclid(p),
        ]
    };
    let mut hist = BTreeMap::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) != 1 {
                        continue;
                    }
                    let x = [a, b, c, d];
                    let mut y = x;
                    let mut k = 1;
                    while y != [1, 0, 0, 1] {
                        y = mul(y, x);
                        k += 1;
                    }
                    *hist.entry(k).or_insert(0) += 1;
                }
            }
        }
    }
    hist
}

// ---------------------------------------------------------------------------
// Strategies

pub fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-5i64..=5, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

/// Product of elementary row operations and sign flips.
pub fn unimodular(n: usize, steps: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), steps).prop_map(move |ops| {
        let mut t = IntMatrix::identity(n);
        for (i, j, k, flip) in ops {
            if i != j {
                for c in 0..n {
                    let add = &t[(j, c)] * BigInt::from(k);
                    t[(i, c)] += add;
                }
            } else if flip {
                for c in 0..n {
                    t[(i, c)] = -t[(i, c)].clone();
                }
            }
        }
        t
    })
}

/// Builtins small enough to close once and sample from repeatedly.
pub const SAMPLED: &[&str] = &[
    "rank3_order2",
    "rank3_order4",
    "rank3_order6",
    "sym3_u3",
    "sym4_u4",
    "alt4_u4",
    "root_a2",
    "root_a3",
    "diag_sl3",
    "signed_root_s5",
    "icosian",
];

pub fn closed(name: &str) -> &'static FiniteMatrixGroup {
    static CACHE: OnceLock<HashMap<&'static str, FiniteMatrixGroup>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        SAMPLED
            .iter()
            .map(|&n| (n, FiniteMatrixGroup::close(&builtin(n).unwrap(), DEFAULT_CAP).unwrap()))
            .collect()
    });
    &cache[name]
}

/// A builtin with a few of its elements, chosen by index.
pub fn group_and_elements(k: usize) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    (0..SAMPLED.len(), proptest::collection::vec(any::<u32>(), k)).prop_map(|(i, raw)| {
        let name = SAMPLED[i];
        let order = closed(name).order();
        (name, raw.into_iter().map(|x| x as usize % order).collect())
    })
}

fn small_vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

fn laurent(rank: usize) -> impl Strategy<Value = LaurentElement> {
    proptest::collection::vec((small_vector(rank), -4i64..=4), 0..5).prop_map(move |terms| {
        LaurentElement::from_terms(rank, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

// ---------------------------------------------------------------------------
// Properties

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

fn run<S: Strategy>(
    cfg: &Config,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(cfg.clone())
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

pub fn snf_contract(cfg: &Config) -> Result<(), String> {
    run(cfg, small_matrix(), |a| {
        let d = linalg::snf(&a);
        check!(oracle_mul(&oracle_mul(&d.u, &a), &d.v) == d.s, "U A V != S for {a}");
        check!(is_unit(&oracle_det(&d.u)) && is_unit(&oracle_det(&d.v)), "transform not unimodular");
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                check!(i == j || d.s[(i, j)].is_zero(), "S not diagonal");
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            check!(
                w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()),
                "divisibility chain broken: {diag:?}"
            );
        }
        check!(diag.iter().all(|x| !x.is_negative()), "negative invariant factor");
        check!(d.rank() == oracle_rank(&a), "SNF rank differs from rational rank");
        Ok(())
    })
}

pub fn hnf_contract(cfg: &Config) -> Result<(), String> {
    run(cfg, small_matrix(), |a| {
        let (h, u) = linalg::hnf(&a);
        check!(oracle_mul(&u, &a) == h, "U A != H");
        check!(is_unit(&oracle_det(&u)), "U not unimodular");
        let mut last_pivot: Option<usize> = None;
        let mut zero_seen = false;
        for r in 0..h.rows() {
            match h.row(r).iter().position(|x| !x.is_zero()) {
                None => zero_seen = true,
                Some(p) => {
                    check!(!zero_seen, "nonzero row after zero row");
                    check!(last_pivot.is_none_or(|q| p > q), "pivots not increasing");
                    check!(h[(r, p)].is_positive(), "pivot not positive");
                    for above in 0..r {
                        let x = &h[(above, p)];
                        check!(!x.is_negative() && x < &h[(r, p)], "entry above pivot not reduced");
                    }
                    last_pivot = Some(p);
                }
            }
        }
        Ok(())
    })
}

pub fn rank_relations(cfg: &Config) -> Result<(), String> {
    let pair = (1usize..=5, 1usize..=5, 1usize..=5).prop_flat_map(|(r, k, c)| {
        (
            proptest::collection::vec(-5i64..=5, r * k),
            proptest::collection::vec(-5i64..=5, k * c),
        )
            .prop_map(move |(x, y)| {
                (
                    IntMatrix::new(r, k, x.into_iter().map(BigInt::from).collect()),
                    IntMatrix::new(k, c, y.into_iter().map(BigInt::from).collect()),
                )
            })
    });
    run(cfg, pair, |(a, b)| {
        let (ra, rb) = (linalg::rank(&a), linalg::rank(&b));
        check!(ra == linalg::rank(&a.transpose()), "rank A != rank Aᵀ");
        check!(ra == oracle_rank(&a), "rank differs from oracle");
        check!(linalg::rank(&(&a * &b)) <= ra.min(rb), "rank(AB) too large");
        Ok(())
    })
}

pub fn kernel_contract(cfg: &Config) -> Result<(), String> {
    run(cfg, small_matrix(), |a| {
        let k = linalg::kernel_lattice(&a);
        for r in k.row_vecs() {
            check!(a.mul_vec(&r).iter().all(Zero::is_zero), "kernel row not annihilated");
        }
        check!(oracle_rank(&k) == k.rows(), "kernel rows dependent");
        check!(k.rows() + oracle_rank(&a) == a.cols(), "rank-nullity fails");
        // Saturated: ℤ^n / K is torsion-free.
        check!(
            linalg::smith_invariants(&k).iter().all(One::is_one),
            "kernel not saturated"
        );
        Ok(())
    })
}

pub fn group_axioms(cfg: &Config) -> Result<(), String> {
    run(cfg, group_and_elements(3), |(name, els)| {
        let g = closed(name);
        let h = g.subgroup_generated(&els);
        check!(g.order().is_multiple_of(h.order()), "Lagrange fails in {name}");
        let d = h.commutator_subgroup();
        check!(d.is_normal_in(&h), "[H,H] not normal in H");
        for &x in h.members() {
            for &y in d.members() {
                check!(d.contains(g.conjugate(x, y)), "[H,H] not closed under conjugation");
            }
        }
        let ab: u64 = h.abelianization().iter().product();
        check!(ab as usize == h.order() / d.order(), "|H^ab| != |H|/|[H,H]|");
        for &x in &els {
            check!(is_unit(&oracle_det(g.element(x))), "element not unimodular");
            check!(g.order().is_multiple_of(g.element_order(x)), "element order does not divide |G|");
        }
        Ok(())
    })
}

/// Exhaustive over the sampled builtins; the case count does not apply.
pub fn closure_idempotent(_: &Config) -> Result<(), String> {
    for name in SAMPLED {
        let g = closed(name);
        let again = GLattice::new("again", g.rank(), g.elements().to_vec()).unwrap();
        let h = FiniteMatrixGroup::close(&again, DEFAULT_CAP).unwrap();
        if h.elements() != g.elements() {
            return Err(format!("closing the elements of {name} added something"));
        }
    }
    Ok(())
}

pub fn moved_rank_conjugation(cfg: &Config) -> Result<(), String> {
    run(cfg, group_and_elements(2), |(name, els)| {
        let g = closed(name);
        let (x, h) = (els[0], els[1]);
        check!(
            moved_rank(g, x) == moved_rank(g, g.conjugate(h, x)),
            "moved rank not conjugation invariant"
        );
        let id = IntMatrix::identity(g.rank());
        check!(moved_rank(g, x) == oracle_rank(&(g.element(x) - &id)), "moved rank differs from oracle");
        Ok(())
    })
}

pub fn moved_rank_plus_fixed(cfg: &Config) -> Result<(), String> {
    run(cfg, group_and_elements(2), |(name, els)| {
        let g = closed(name);
        let h = g.subgroup_generated(&els);
        let fixed = fixed_lattice(&h);
        check!(
            moved_rank_subgroup(&h) + fixed.rows() == g.rank(),
            "rank [H,L] + rank L^H != rank L"
        );
        let m = bireflection_subgroup(&h);
        check!(m.is_normal_in(&h), "M(H) not normal");
        check!(m.is_subgroup_of(&h), "M(H) not inside H");
        for k in 0..=g.rank() {
            if in_xk(&h, k) {
                check!(in_xk(&h, k + 1), "X_k membership not monotone");
                let sub = g.subgroup_generated(&els[..1]);
                check!(in_xk(&sub, k), "X_k not closed under subgroups");
            }
        }
        Ok(())
    })
}

pub fn isotropy_equivariance(cfg: &Config) -> Result<(), String> {
    let strategy = group_and_elements(1).prop_flat_map(|(name, els)| {
        let n = closed(name).rank();
        (Just(name), Just(els[0]), small_vector(n))
    });
    run(cfg, strategy, |(name, x, m)| {
        let g = closed(name);
        let m: Vec<BigInt> = m.into_iter().map(BigInt::from).collect();
        let h = isotropy_group_of(g, &m);
        let gm = g.element(x).mul_vec(&m);
        check!(isotropy_group_of(g, &gm) == h.conjugate_by(x), "G_(gm) != g G_m g⁻¹");
        let fixed = fixed_lattice(&h);
        check!(linalg::row_coordinates(&fixed, &m).is_some(), "m not in L^(G_m)");
        Ok(())
    })
}

pub fn isotropy_meets(cfg: &Config) -> Result<(), String> {
    run(cfg, group_and_elements(2), |(name, els)| {
        let g = closed(name);
        let catalog = enumerate_isotropy_groups(g).unwrap();
        let a = &catalog.all[els[0] % catalog.all.len()].0;
        let b = &catalog.all[els[1] % catalog.all.len()].0;
        check!(catalog.class_of(&a.intersect(b)).is_some(), "intersection not an isotropy group");
        Ok(())
    })
}

pub fn laurent_ring_axioms(cfg: &Config) -> Result<(), String> {
    run(cfg, (laurent(2), laurent(2), laurent(2)), |(a, b, c)| {
        check!(&a * &b == &b * &a, "not commutative");
        check!(&(&a * &b) * &c == &a * &(&b * &c), "not associative");
        check!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "not distributive");
        check!(a.terms().values().all(|x| !x.is_zero()), "zero coefficient stored");
        Ok(())
    })
}

pub fn orbit_sum_properties(cfg: &Config) -> Result<(), String> {
    let strategy = group_and_elements(0).prop_flat_map(|(name, _)| {
        let n = closed(name).rank();
        (
            Just(name),
            proptest::collection::vec((small_vector(n), -3i64..=3), 1..4),
        )
    });
    run(cfg, strategy, |(name, pieces)| {
        let g = closed(name);
        let action = OrbitAction::new(g.lattice()).unwrap();
        let n = g.rank();
        let mut combo = LaurentElement::zero(n);
        let mut expected: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (m, c) in &pieces {
            let s = orbit_sum(&action, m);
            check!(s == oracle_orbit_sum(g, m), "orbit sum differs from oracle");
            check!(g.order().is_multiple_of(s.len()), "orbit size does not divide |G|");
            check!(is_invariant(&action, &s), "orbit sum not invariant");
            combo = &combo + &s.scale(&BigInt::from(*c));
            *expected.entry(action.representative(m)).or_default() += BigInt::from(*c);
        }
        expected.retain(|_, c| !c.is_zero());
        check!(express_in_orbit_basis(&action, &combo).unwrap() == expected, "round trip fails");
        let (p, q) = (orbit_sum(&action, &pieces[0].0), &combo);
        check!(is_invariant(&action, &(&p * q)), "product of invariants not invariant");
        Ok(())
    })
}

/// Exhaustive over the sampled builtins; the case count does not apply.
pub fn verdict_properties(_: &Config) -> Result<(), String> {
    for name in SAMPLED {
        let l = builtin(name).unwrap();
        let red = effective_reduction(&l);
        if effective_reduction(&red) != red {
            return Err(format!("effective reduction of {name} not idempotent"));
        }
        let r = check_necessary_conditions(&l, DEFAULT_CAP).unwrap();
        let consistent = match r.special_case {
            None => (r.verdict == Verdict::Obstructed) == (!r.condition_a || !r.condition_b),
            Some(_) => r.verdict == Verdict::TriviallyCM,
        };
        if !consistent {
            return Err(format!("verdict of {name} inconsistent with its conditions"));
        }
    }
    Ok(())
}

pub type Property = (&'static str, fn(&Config) -> Result<(), String>);

pub const PROPERTIES: &[Property] = &[
    ("snf contract", snf_contract),
    ("hnf contract", hnf_contract),
    ("rank relations", rank_relations),
    ("kernel contract", kernel_contract),
    ("group axioms and Lagrange", group_axioms),
    ("closure idempotence", closure_idempotent),
    ("moved rank conjugation invariance", moved_rank_conjugation),
    ("moved rank plus fixed rank", moved_rank_plus_fixed),
    ("isotropy equivariance", isotropy_equivariance),
    ("isotropy meets", isotropy_meets),
    ("laurent ring axioms", laurent_ring_axioms),
    ("orbit sums", orbit_sum_properties),
    ("verdict consistency", verdict_properties),
];

/// Builtins of rank at most 4 and order at most 48, compared against the census.
pub fn census_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for name in multinv::catalog::CATALOG {
        let l = builtin(name).unwrap();
        let g = FiniteMatrixGroup::close(&l, DEFAULT_CAP).unwrap();
        if l.rank > 4 || g.order() > 48 {
            continue;
        }
        let catalog = enumerate_isotropy_groups(&g).unwrap();
        let listed: BTreeSet<u64> = catalog.all.iter().map(|(h, _)| mask_of(h)).collect();
        if listed != stabilizer_census(&g) {
            bad.push(name.to_string());
        }
    }
    bad
}

/// Verdict, isotropy orders and abelianizations under 20 random basis changes per builtin.
pub fn basis_change_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for name in multinv::catalog::CATALOG {
        let l = builtin(name).unwrap();
        let base = check_necessary_conditions(&l, DEFAULT_CAP).unwrap();
        // Classes of equal order are listed by witness, so compare as multisets.
        let summary = |r: &multinv::obstruction::ObstructionReport| {
            let mut classes: Vec<_> = r
                .isotropy
                .iter()
                .map(|x| (x.order, x.abelianization.clone(), x.fixed_rank, x.class_size, x.bireflection_order))
                .collect();
            classes.sort();
            (r.verdict, r.condition_a, r.condition_b, classes)
        };
        let expected = summary(&base);
        let mut runner = TestRunner::new(config(20));
        let result = runner.run(&unimodular(l.rank, 2 * l.rank), |t| {
            let conj = l.conjugated_by(&t).unwrap();
            let r = check_necessary_conditions(&conj, DEFAULT_CAP).unwrap();
            check!(summary(&r) == expected, "report changed under basis change {t}");
            Ok(())
        });
        if let Err(e) = result {
            bad.push(format!("{name}: {e}"));
        }
    }
    bad
}
