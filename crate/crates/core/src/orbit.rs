//! The group algebra `ℤ[L]` of Laurent polynomials, the `G`-action on it by
//! permuting monomials, and the invariant subalgebra spanned by orbit sums.
//!
//! [`verify_free_decomposition`] checks a claimed decomposition
//! `ℤ[L]^G = ⊕_j f_j · ℤ[a_1, ..., a_k]` inside a finite sup-norm window of
//! exponent vectors, with exact integer linear algebra.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::GLattice;
use crate::linalg::{self, IntMatrix};

/// A lattice vector used as a monomial exponent.
pub type Exponent = Vec<i64>;

/// Finite sum `Σ c_m x^m` with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    rank: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentElement {
    pub fn zero(rank: usize) -> Self {
        LaurentElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, 1)
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(rank, [(vec![0; rank], c.into())])
    }

    pub fn monomial(exponent: Exponent) -> Self {
        let rank = exponent.len();
        Self::from_terms(rank, [(exponent, BigInt::one())])
    }

    /// `x_i` for `i` counted from 0.
    pub fn variable(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(e)
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut out = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent length differs from rank");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coefficient(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Largest sup-norm of an exponent in the support; 0 for the zero element.
    pub fn support_norm(&self) -> i64 {
        self.terms.keys().map(|e| sup_norm(e)).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.rank, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    /// Exact product; fails with [`Error::ExponentOverflow`] when an exponent
    /// leaves the `i64` range.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1
                    .iter()
                    .zip(e2)
                    .map(|(a, b)| a.checked_add(*b))
                    .collect::<Option<Exponent>>()
                    .ok_or(Error::ExponentOverflow)?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Terms in exponent order, e.g. `x^(-1,0) + 2*x^(1,0) - 3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let exps: Vec<String> = e.iter().map(ToString::to_string).collect();
            match (constant, magnitude.is_one()) {
                (true, _) => s.push_str(&magnitude.to_string()),
                (false, true) => s.push_str(&format!("x^({})", exps.join(","))),
                (false, false) => s.push_str(&format!("{magnitude}*x^({})", exps.join(","))),
            }
        }
        s
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;

    fn add(self, other: &LaurentElement) -> LaurentElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;

    fn neg(self) -> LaurentElement {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;

    fn sub(self, other: &LaurentElement) -> LaurentElement {
        self + &(-other)
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;

    /// Panics on exponent overflow; see [`LaurentElement::checked_mul`].
    fn mul(self, other: &LaurentElement) -> LaurentElement {
        self.checked_mul(other).expect("exponent overflow")
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponent: Exponent,
    #[serde(with = "crate::bigjson::int")]
    coefficient: BigInt,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    rank: usize,
    terms: Vec<Term>,
}

impl Serialize for LaurentElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| Term {
                    exponent: e.clone(),
                    coefficient: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LaurentRepr::deserialize(d)?;
        if repr.terms.iter().any(|t| t.exponent.len() != repr.rank) {
            return Err(D::Error::custom("exponent length differs from rank"));
        }
        let terms = repr.terms.into_iter().map(|t| (t.exponent, t.coefficient));
        Ok(LaurentElement::from_terms(repr.rank, terms))
    }
}

pub fn sup_norm(e: &[i64]) -> i64 {
    e.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Generators of `G` acting on exponent vectors, `m ↦ g·m`.
#[derive(Clone, Debug)]
pub struct OrbitAction {
    rank: usize,
    generators: Vec<Vec<Vec<i64>>>,
}

impl OrbitAction {
    pub fn new(lattice: &GLattice) -> Result<Self> {
        let generators = lattice
            .generators
            .iter()
            .map(|g| g.to_i64_rows().ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(OrbitAction {
            rank: lattice.rank,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `g_s · m`. Panics on overflow.
    pub fn apply(&self, s: usize, m: &[i64]) -> Exponent {
        self.generators[s]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(m)
                    .try_fold(0i64, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
                    .expect("exponent overflow")
            })
            .collect()
    }

    /// The orbit of `m`, sorted lexicographically.
    pub fn orbit(&self, m: &[i64]) -> Vec<Exponent> {
        assert_eq!(m.len(), self.rank, "exponent length differs from rank");
        let mut seen: BTreeSet<Exponent> = BTreeSet::from([m.to_vec()]);
        let mut queue = VecDeque::from([m.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for s in 0..self.generators.len() {
                let y = self.apply(s, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Lexicographically smallest member of the orbit of `m`.
    pub fn representative(&self, m: &[i64]) -> Exponent {
        self.orbit(m).swap_remove(0)
    }

    /// `g_s(a) = Σ c_m x^{g_s m}`.
    pub fn act(&self, s: usize, a: &LaurentElement) -> LaurentElement {
        LaurentElement::from_terms(
            a.rank(),
            a.terms().iter().map(|(e, c)| (self.apply(s, e), c.clone())),
        )
    }
}

/// `σ(m) = Σ_{m' ∈ G(m)} x^{m'}`.
pub fn orbit_sum(action: &OrbitAction, m: &[i64]) -> LaurentElement {
    LaurentElement::from_terms(
        action.rank(),
        action.orbit(m).into_iter().map(|e| (e, BigInt::one())),
    )
}

pub fn is_invariant(action: &OrbitAction, a: &LaurentElement) -> bool {
    first_non_invariant(action, a).is_none()
}

fn first_non_invariant(action: &OrbitAction, a: &LaurentElement) -> Option<usize> {
    (0..action.generator_count()).find(|&s| &action.act(s, a) != a)
}

/// Coefficients `c_m` with `a = Σ c_m σ(m)`, keyed by orbit representative.
pub fn express_in_orbit_basis(
    action: &OrbitAction,
    a: &LaurentElement,
) -> Result<BTreeMap<Exponent, BigInt>> {
    if let Some(generator) = first_non_invariant(action, a) {
        return Err(Error::NotInvariant { generator });
    }
    Ok(a.terms()
        .iter()
        .filter(|(e, _)| &action.representative(e) == *e)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect())
}

/// Orbit sums of all orbits inside the window `‖m‖∞ ≤ bound`.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    pub bound: i64,
    /// Sorted representatives.
    pub representatives: Vec<Exponent>,
    pub sums: BTreeMap<Exponent, LaurentElement>,
}

impl OrbitBasis {
    /// Orbits that leave the window are omitted; for groups of signed
    /// permutations the window is stable and nothing is lost.
    pub fn new(action: &OrbitAction, bound: i64) -> Self {
        let n = action.rank();
        let mut seen: HashSet<Exponent> = HashSet::new();
        let mut sums = BTreeMap::new();
        for m in window(n, bound) {
            if seen.contains(&m) {
                continue;
            }
            let orbit = action.orbit(&m);
            seen.extend(orbit.iter().cloned());
            if orbit.iter().all(|e| sup_norm(e) <= bound) {
                let rep = orbit[0].clone();
                let sum = LaurentElement::from_terms(n, orbit.into_iter().map(|e| (e, BigInt::one())));
                sums.insert(rep, sum);
            }
        }
        OrbitBasis {
            bound,
            representatives: sums.keys().cloned().collect(),
            sums,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn index_of(&self, rep: &[i64]) -> Option<usize> {
        self.representatives.binary_search_by(|r| r.as_slice().cmp(rep)).ok()
    }
}

/// All vectors of `[-bound, bound]^n` in lexicographic order.
fn window(n: usize, bound: i64) -> impl Iterator<Item = Exponent> {
    let mut next = Some(vec![-bound; n]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if succ[i] < bound {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = -bound;
        }
        Some(cur)
    })
}

/// `a^α · f_j`, identified by the exponent vector `α` on the algebra
/// generators and the module generator index `j`. Paired generators
/// `a_i, a_i⁻¹` share one integer entry of `α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductLabel {
    pub exponents: Vec<i64>,
    pub module_generator: usize,
}

/// Integer expression of one target orbit sum in the products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetExpression {
    pub representative: Exponent,
    /// Pairs (index into `products`, coefficient).
    pub terms: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub bound: i64,
    /// Targets are all orbit sums with representative of sup-norm at most this.
    pub interior_bound: i64,
    /// Number of orbit sums in the window.
    pub window_size: usize,
    /// Variables of the polynomial ring: one per unpaired algebra generator,
    /// one per inverse pair, listed by generator indices.
    pub variables: Vec<Vec<usize>>,
    pub products: Vec<ProductLabel>,
    pub targets: Vec<TargetExpression>,
}

impl DecompositionCertificate {
    /// Coefficients of a target as integers.
    pub fn coefficients(&self, target: &TargetExpression) -> Vec<(usize, BigInt)> {
        target
            .terms
            .iter()
            .map(|(i, c)| (*i, c.parse().expect("certificate coefficients are integers")))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DecompositionFailure {
    /// An orbit sum inside the interior window is not an integer combination of products.
    Unreachable {
        representative: Exponent,
        orbit_sum: LaurentElement,
    },
    /// A nontrivial integer relation `Σ c_i p_i = 0` among products.
    LinearRelation {
        products: Vec<ProductLabel>,
        coefficients: Vec<String>,
    },
    /// The products are independent but span a non-saturated sublattice.
    TorsionCokernel { invariant_factors: Vec<String> },
}

impl fmt::Display for DecompositionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionFailure::Unreachable {
                representative,
                orbit_sum,
            } => {
                let rep: Vec<String> = representative.iter().map(ToString::to_string).collect();
                write!(f, "orbit sum of ({}) is not reached: {orbit_sum}", rep.join(","))
            }
            DecompositionFailure::LinearRelation { products, .. } => {
                write!(f, "integer relation among {} products", products.len())
            }
            DecompositionFailure::TorsionCokernel { invariant_factors } => {
                write!(f, "cokernel has torsion {}", invariant_factors.join(", "))
            }
        }
    }
}

/// Products beyond this count abort the search.
pub const PRODUCT_LIMIT: usize = 100_000;

fn fail(f: DecompositionFailure) -> Error {
    Error::DecompositionFails(Box::new(f))
}

/// Checks `ℤ[L]^G = ⊕_j f_j · ℤ[a_1, ..., a_k]` inside the window
/// `‖m‖∞ ≤ bound`.
///
/// All products `a^α f_j` supported in the window are written in the orbit
/// basis of the window. They must be independent and span a saturated
/// sublattice, and every orbit sum with representative in the interior
/// window `bound - w`, where `w` is the largest support norm among the
/// generators, must be an integer combination of them. Algebra generators
/// that are mutually inverse are treated as one Laurent variable.
pub fn verify_free_decomposition(
    action: &OrbitAction,
    algebra_gens: &[LaurentElement],
    module_gens: &[LaurentElement],
    bound: i64,
) -> Result<DecompositionCertificate> {
    let n = action.rank();
    for (i, a) in algebra_gens.iter().chain(module_gens).enumerate() {
        if a.rank() != n {
            return Err(Error::validation(
                format!("generators[{i}]"),
                format!("rank {} differs from lattice rank {n}", a.rank()),
            ));
        }
        if let Some(generator) = first_non_invariant(action, a) {
            return Err(Error::NotInvariant { generator });
        }
    }
    if let Some(i) = algebra_gens.iter().position(LaurentElement::is_constant) {
        return Err(Error::ConstantGenerator(i));
    }

    // Pair inverse generators into Laurent variables.
    let one = LaurentElement::one(n);
    let mut variables: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; algebra_gens.len()];
    for i in 0..algebra_gens.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (i + 1..algebra_gens.len())
            .find(|&j| !used[j] && &algebra_gens[i] * &algebra_gens[j] == one);
        match partner {
            Some(j) => {
                used[j] = true;
                variables.push(vec![i, j]);
            }
            None => variables.push(vec![i]),
        }
    }

    let basis = OrbitBasis::new(action, bound);
    let width = algebra_gens
        .iter()
        .chain(module_gens)
        .map(LaurentElement::support_norm)
        .max()
        .unwrap_or(0);
    let interior = bound - width;

    // Breadth-first over exponent vectors whose monomial stays in the window.
    let k = variables.len();
    let mut monomials: Vec<(Vec<i64>, LaurentElement)> = Vec::new();
    let mut visited: HashSet<Vec<i64>> = HashSet::from([vec![0; k]]);
    let mut queue = VecDeque::from([(vec![0i64; k], one.clone())]);
    while let Some((alpha, value)) = queue.pop_front() {
        monomials.push((alpha.clone(), value.clone()));
        if monomials.len() > PRODUCT_LIMIT {
            return Err(Error::TruncationUnbounded {
                limit: PRODUCT_LIMIT,
            });
        }
        for (v, var) in variables.iter().enumerate() {
            let mut steps = Vec::new();
            if alpha[v] >= 0 {
                steps.push((1, var[0]));
            }
            if var.len() == 2 && alpha[v] <= 0 {
                steps.push((-1, var[1]));
            }
            for (delta, g) in steps {
                let mut next = alpha.clone();
                next[v] += delta;
                if visited.contains(&next) {
                    continue;
                }
                let product = value.checked_mul(&algebra_gens[g])?;
                if product.support_norm() <= bound {
                    visited.insert(next.clone());
                    queue.push_back((next, product));
                }
            }
        }
    }

    let mut labels = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (alpha, value) in &monomials {
        for (j, f) in module_gens.iter().enumerate() {
            let product = value.checked_mul(f)?;
            if product.support_norm() > bound {
                continue;
            }
            let mut row = vec![BigInt::zero(); basis.len()];
            for (rep, c) in express_in_orbit_basis(action, &product)? {
                let col = basis
                    .index_of(&rep)
                    .expect("orbits of a window-supported invariant lie in the window");
                row[col] = c;
            }
            labels.push(ProductLabel {
                exponents: alpha.clone(),
                module_generator: j,
            });
            rows.push(row);
        }
    }
    let matrix = IntMatrix::new(
        rows.len(),
        basis.len(),
        rows.into_iter().flatten().collect(),
    );

    let invariants = linalg::smith_invariants(&matrix);
    if invariants.len() < matrix.rows() {
        let relation = linalg::kernel_lattice(&matrix.transpose());
        let coefficients = relation.row(0);
        let (products, coefficients) = labels
            .iter()
            .zip(coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), c.to_string()))
            .unzip();
        return Err(fail(DecompositionFailure::LinearRelation {
            products,
            coefficients,
        }));
    }
    if invariants.iter().any(|d| !d.is_one()) {
        return Err(fail(DecompositionFailure::TorsionCokernel {
            invariant_factors: invariants
                .iter()
                .filter(|d| !d.is_one())
                .map(ToString::to_string)
                .collect(),
        }));
    }

    let (h, u) = linalg::hnf(&matrix);
    let r = invariants.len();
    let h = h.submatrix(0, r, 0, basis.len());
    let mut order: Vec<&Exponent> = basis
        .representatives
        .iter()
        .filter(|rep| sup_norm(rep) <= interior)
        .collect();
    order.sort_by_key(|rep| (sup_norm(rep), (*rep).clone()));
    let mut targets = Vec::new();
    for rep in order {
        let col = basis.index_of(rep).expect("representative of the window");
        let mut unit = vec![BigInt::zero(); basis.len()];
        unit[col] = BigInt::one();
        let Some(coords) = linalg::row_coordinates(&h, &unit) else {
            return Err(fail(DecompositionFailure::Unreachable {
                representative: rep.clone(),
                orbit_sum: basis.sums[rep].clone(),
            }));
        };
        // unit = coords · H = coords · U_top · P
        let mut terms = Vec::new();
        for p in 0..matrix.rows() {
            let c: BigInt = (0..r).map(|i| &coords[i] * &u[(i, p)]).sum();
            if !c.is_zero() {
                terms.push((p, c.to_string()));
            }
        }
        targets.push(TargetExpression {
            representative: rep.clone(),
            terms,
        });
    }

    Ok(DecompositionCertificate {
        bound,
        interior_bound: interior,
        window_size: basis.len(),
        variables,
        products: labels,
        targets,
    })
}

/// The value of a product label for the given generators.
pub fn evaluate_product(
    algebra_gens: &[LaurentElement],
    module_gens: &[LaurentElement],
    variables: &[Vec<usize>],
    label: &ProductLabel,
) -> LaurentElement {
    let mut value = module_gens[label.module_generator].clone();
    for (var, &e) in variables.iter().zip(&label.exponents) {
        let g = if e >= 0 { var[0] } else { var[1] };
        value = &value * &algebra_gens[g].pow(e.unsigned_abs() as u32);
    }
    value
}

/// Elementary symmetric polynomial `s_k(x_1, ..., x_n)`.
pub fn elementary_symmetric(n: usize, k: usize) -> LaurentElement {
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Exponent>) {
        if cur.len() == k {
            let mut e = vec![0; n];
            for &i in cur.iter() {
                e[i] = 1;
            }
            out.push(e);
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut exps = Vec::new();
    subsets(n, k, 0, &mut Vec::new(), &mut exps);
    LaurentElement::from_terms(n, exps.into_iter().map(|e| (e, BigInt::one())))
}

fn pair_product(n: usize, sign: i64) -> LaurentElement {
    let mut out = LaurentElement::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let xi = LaurentElement::variable(n, i);
            let xj = LaurentElement::variable(n, j);
            let factor = &xi + &xj.scale(&BigInt::from(sign));
            out = &out * &factor;
        }
    }
    out
}

/// `d = (Δ + Δ₊)/2` with `Δ = ∏_{i<j} (x_i - x_j)` and `Δ₊ = ∏_{i<j} (x_i + x_j)`.
pub fn alternating_d(n: usize) -> Result<LaurentElement> {
    if n < 2 {
        return Err(Error::validation("n", "needs at least two variables"));
    }
    let sum = &pair_product(n, -1) + &pair_product(n, 1);
    let two = BigInt::from(2);
    let mut halved = Vec::with_capacity(sum.len());
    for (e, c) in sum.terms() {
        let (q, r) = c.div_rem(&two);
        if !r.is_zero() {
            return Err(Error::ParityViolation {
                monomial: LaurentElement::monomial(e.clone()).render(),
            });
        }
        halved.push((e.clone(), q));
    }
    Ok(LaurentElement::from_terms(n, halved))
}

/// Comparison of one degree of `ℤ[s] + d·ℤ[s]` against the `A_n`-invariant
/// polynomials of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialSectorRow {
    pub degree: usize,
    /// Number of products `s^α` and `d·s^β` of this degree.
    pub products: usize,
    /// ℤ-rank of their span.
    pub span_rank: usize,
    /// Number of `A_n`-orbits of degree-`k` monomials.
    pub invariant_rank: usize,
    /// The products form a ℤ-basis of the invariant slice.
    pub basis: bool,
}

fn weighted_exponents(n: usize, degree: usize) -> Vec<Vec<u32>> {
    // α with Σ (i + 1) α_i = degree
    fn rec(i: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i + 1;
        for a in 0..=left / w {
            cur.push(a as u32);
            rec(i + 1, n, left - a * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, degree, &mut Vec::new(), &mut out);
    out
}

fn compositions(n: usize, degree: usize) -> Vec<Exponent> {
    fn rec(i: usize, n: usize, left: i64, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(i + 1, n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, degree as i64, &mut Vec::new(), &mut out);
    }
    out
}

/// Degree-by-degree check of `ℤ[x]^{A_n} = ℤ[s_1..s_n] ⊕ d·ℤ[s_1..s_n]`
/// for degrees `0..=max_degree`.
pub fn alternating_polynomial_sector(n: usize, max_degree: usize) -> Result<Vec<PolynomialSectorRow>> {
    let action = OrbitAction::new(&catalog::alternating(n)?)?;
    let d = alternating_d(n)?;
    let d_degree = n * (n - 1) / 2;
    let s: Vec<LaurentElement> = (1..=n).map(|k| elementary_symmetric(n, k)).collect();
    let s_monomial = |alpha: &[u32]| {
        alpha
            .iter()
            .zip(&s)
            .fold(LaurentElement::one(n), |acc, (&a, si)| &acc * &si.pow(a))
    };

    let mut rows = Vec::new();
    for degree in 0..=max_degree {
        let reps: Vec<Exponent> = compositions(n, degree)
            .into_iter()
            .filter(|e| &action.representative(e) == e)
            .collect();
        let mut products: Vec<LaurentElement> =
            weighted_exponents(n, degree).iter().map(|a| s_monomial(a)).collect();
        if degree >= d_degree {
            products.extend(
                weighted_exponents(n, degree - d_degree)
                    .iter()
                    .map(|a| &d * &s_monomial(a)),
            );
        }
        let mut entries = Vec::with_capacity(products.len() * reps.len());
        for p in &products {
            let coords = express_in_orbit_basis(&action, p)?;
            entries.extend(reps.iter().map(|r| coords.get(r).cloned().unwrap_or_default()));
        }
        let matrix = IntMatrix::new(products.len(), reps.len(), entries);
        let invariants = linalg::smith_invariants(&matrix);
        let span_rank = invariants.len();
        rows.push(PolynomialSectorRow {
            degree,
            products: products.len(),
            span_rank,
            invariant_rank: reps.len(),
            basis: span_rank == products.len()
                && span_rank == reps.len()
                && invariants.iter().all(One::is_one),
        });
    }
    Ok(rows)
}

/// Named decomposition checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `diag(±1) ∩ SL_n(ℤ)`: `ℤ[ξ_1..ξ_n] ⊕ η·ℤ[ξ_1..ξ_n]`.
    DiagSl,
    /// The same with `η` omitted; expected to fail.
    DiagSlWithoutEta,
    /// Trivial group: the full Laurent ring `ℤ[x_1^{±1}, ..., x_n^{±1}]`.
    LaurentTrivial,
}

impl Preset {
    pub fn parse(name: &str) -> Option<Preset> {
        match name {
            "diag_sl" => Some(Preset::DiagSl),
            "diag_sl_without_eta" => Some(Preset::DiagSlWithoutEta),
            "laurent_trivial" => Some(Preset::LaurentTrivial),
            _ => None,
        }
    }
}

pub struct DecompositionProblem {
    pub lattice: GLattice,
    pub action: OrbitAction,
    pub algebra_gens: Vec<LaurentElement>,
    pub module_gens: Vec<LaurentElement>,
}

pub fn decomposition_problem(preset: Preset, n: usize) -> Result<DecompositionProblem> {
    if n == 0 {
        return Err(Error::validation("rank", "must be at least 1"));
    }
    let lattice = match preset {
        Preset::LaurentTrivial => GLattice::new(format!("trivial{n}"), n, vec![])?,
        _ => catalog::diag_sl(n)?,
    };
    let action = OrbitAction::new(&lattice)?;
    let unit = |i: usize, sign: i64| {
        let mut e = vec![0; n];
        e[i] = sign;
        e
    };
    let (algebra_gens, module_gens) = match preset {
        Preset::LaurentTrivial => (
            (0..n)
                .flat_map(|i| [unit(i, 1), unit(i, -1)])
                .map(LaurentElement::monomial)
                .collect(),
            vec![LaurentElement::one(n)],
        ),
        _ => {
            let xi = (0..n).map(|i| orbit_sum(&action, &unit(i, 1))).collect();
            let mut module = vec![LaurentElement::one(n)];
            if preset == Preset::DiagSl {
                module.push(orbit_sum(&action, &vec![1; n]));
            }
            (xi, module)
        }
    };
    Ok(DecompositionProblem {
        lattice,
        action,
        algebra_gens,
        module_gens,
    })
}

pub fn verify_preset(preset: Preset, n: usize, bound: i64) -> Result<DecompositionCertificate> {
    let p = decomposition_problem(preset, n)?;
    verify_free_decomposition(&p.action, &p.algebra_gens, &p.module_gens, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn action(name: &str) -> OrbitAction {
        OrbitAction::new(&builtin(name).unwrap()).unwrap()
    }

    fn term(e: &[i64], c: i64) -> (Exponent, BigInt) {
        (e.to_vec(), BigInt::from(c))
    }

    #[test]
    fn orbit_sum_examples() {
        let neg = action("diag_sl2");
        assert_eq!(orbit_sum(&neg, &[0, 0]), LaurentElement::one(2));
        let xi1 = orbit_sum(&neg, &[1, 0]);
        assert_eq!(xi1, LaurentElement::from_terms(2, [term(&[1, 0], 1), term(&[-1, 0], 1)]));
        assert_eq!(xi1.render(), "x^(-1,0) + x^(1,0)");

        let s3 = action("sym3");
        assert_eq!(orbit_sum(&s3, &[1, 0, 0]), elementary_symmetric(3, 1));
    }

    #[test]
    fn multiplication_examples() {
        let neg = action("diag_sl2");
        let xi1 = orbit_sum(&neg, &[1, 0]);
        let xi2 = orbit_sum(&neg, &[0, 1]);
        assert_eq!(&xi1 * &LaurentElement::one(2), xi1);
        let sq = &orbit_sum(&neg, &[2, 0]) + &LaurentElement::constant(2, 2);
        assert_eq!(&xi1 * &xi1, sq);
        let eta = orbit_sum(&neg, &[1, 1]);
        let eta_prime = orbit_sum(&neg, &[1, -1]);
        assert_eq!(&xi1 * &xi2, &eta + &eta_prime);
    }

    #[test]
    fn invariance_examples() {
        let s3 = action("sym3");
        assert!(is_invariant(&s3, &LaurentElement::constant(3, 5)));
        assert!(is_invariant(&s3, &orbit_sum(&s3, &[2, -1, 0])));
        assert!(!is_invariant(&s3, &LaurentElement::variable(3, 0)));
    }

    #[test]
    fn orbit_basis_expression() {
        let neg = action("diag_sl2");
        let sigma = orbit_sum(&neg, &[2, -1]);
        let rep = neg.representative(&[2, -1]);
        assert_eq!(
            express_in_orbit_basis(&neg, &sigma).unwrap(),
            BTreeMap::from([(rep, BigInt::one())])
        );
        let prod = &orbit_sum(&neg, &[1, 0]) * &orbit_sum(&neg, &[0, 1]);
        let coords = express_in_orbit_basis(&neg, &prod).unwrap();
        assert_eq!(
            coords,
            BTreeMap::from([term(&[-1, -1], 1), term(&[-1, 1], 1)])
        );
        assert!(express_in_orbit_basis(&neg, &LaurentElement::zero(2)).unwrap().is_empty());
        assert!(matches!(
            express_in_orbit_basis(&neg, &LaurentElement::variable(2, 0)),
            Err(Error::NotInvariant { generator: 0 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = LaurentElement::from_terms(2, [term(&[0, 1], -3), term(&[1, 0], 2)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"rank":2,"terms":[{"exponent":[0,1],"coefficient":-3},{"exponent":[1,0],"coefficient":2}]}"#
        );
        assert_eq!(serde_json::from_str::<LaurentElement>(&json).unwrap(), a);
    }

    #[test]
    fn rendering() {
        let a = LaurentElement::from_terms(
            2,
            [term(&[0, 0], -3), term(&[1, 0], 2), term(&[0, -1], -1)],
        );
        assert_eq!(a.render(), "-x^(0,-1) - 3 + 2*x^(1,0)");
        assert_eq!(LaurentElement::zero(2).render(), "0");
    }

    #[test]
    fn decomposition_presets() {
        let cert = verify_preset(Preset::DiagSl, 2, 4).unwrap();
        assert_eq!(cert.interior_bound, 3);
        assert!(!cert.targets.is_empty());

        match verify_preset(Preset::DiagSlWithoutEta, 2, 4) {
            Err(Error::DecompositionFails(f)) => match *f {
                DecompositionFailure::Unreachable { representative, .. } => {
                    assert_eq!(representative, vec![-1, -1]);
                }
                other => panic!("unexpected failure {other}"),
            },
            other => panic!("expected failure, got {:?}", other.map(|c| c.targets.len())),
        }

        let cert = verify_preset(Preset::LaurentTrivial, 1, 2).unwrap();
        assert_eq!(cert.variables, vec![vec![0, 1]]);
        assert_eq!(cert.products.len(), 5);
    }

    #[test]
    fn certificates_reproduce_targets() {
        let p = decomposition_problem(Preset::DiagSl, 2).unwrap();
        let cert = verify_free_decomposition(&p.action, &p.algebra_gens, &p.module_gens, 4).unwrap();
        for t in &cert.targets {
            let mut sum = LaurentElement::zero(2);
            for (i, c) in cert.coefficients(t) {
                let v = evaluate_product(&p.algebra_gens, &p.module_gens, &cert.variables, &cert.products[i]);
                sum = &sum + &v.scale(&c);
            }
            assert_eq!(sum, orbit_sum(&p.action, &t.representative));
        }
    }

    #[test]
    fn dependent_products_are_reported() {
        let p = decomposition_problem(Preset::DiagSl, 2).unwrap();
        let mut module = p.module_gens.clone();
        module.push(p.algebra_gens[0].clone());
        assert!(matches!(
            verify_free_decomposition(&p.action, &p.algebra_gens, &module, 4),
            Err(Error::DecompositionFails(f)) if matches!(*f, DecompositionFailure::LinearRelation { .. })
        ));
        let doubled = vec![p.module_gens[0].clone(), p.module_gens[1].scale(&BigInt::from(2))];
        assert!(matches!(
            verify_free_decomposition(&p.action, &p.algebra_gens, &doubled, 4),
            Err(Error::DecompositionFails(f)) if matches!(*f, DecompositionFailure::TorsionCokernel { .. })
        ));
        assert!(matches!(
            verify_free_decomposition(&p.action, &[LaurentElement::one(2)], &p.module_gens, 4),
            Err(Error::ConstantGenerator(0))
        ));
    }

    #[test]
    fn alternating_d_examples() {
        assert_eq!(alternating_d(2).unwrap(), LaurentElement::variable(2, 0));
        let d = alternating_d(3).unwrap();
        let a3 = action("alt3");
        assert!(is_invariant(&a3, &d));
        let s3 = action("sym3");
        // generator 0 of sym3 is the transposition (1 2)
        let swapped = s3.act(0, &d);
        assert_ne!(swapped, d);
        let delta = pair_product(3, -1);
        let delta_plus = pair_product(3, 1);
        assert_eq!(swapped.scale(&BigInt::from(2)), &delta_plus - &delta);
        assert!(alternating_d(1).is_err());
    }

    #[test]
    fn polynomial_sector_small_degrees() {
        let rows = alternating_polynomial_sector(3, 4).unwrap();
        for r in &rows {
            assert!(r.basis, "degree {}", r.degree);
        }
        assert_eq!(rows.iter().map(|r| r.invariant_rank).collect::<Vec<_>>(), vec![1, 1, 2, 4, 5]);
    }
}
