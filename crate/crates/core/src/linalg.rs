//! Exact integer matrices and the lattice algorithms built on them.
//!
//! Everything here works over arbitrary-precision integers. Lattices are
//! represented by bases stored as matrix rows; returned bases are in row
//! Hermite normal form so two equal lattices have identical bases.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Serializes as a list of rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq((0..self.rows).map(|r| {
            self.row(r).iter().map(crate::bigjson::to_value).collect::<Vec<_>>()
        }))
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("matrix rows have different lengths"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|v| crate::bigjson::from_value(v).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix::new(rows.len(), cols, entries))
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(rows.len(), cols, entries)
    }

    /// Matrix with no rows and `cols` columns: the basis of the zero lattice.
    pub fn empty(cols: usize) -> Self {
        IntMatrix::new(0, cols, Vec::new())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Vertical concatenation. All blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[IntMatrix]) -> IntMatrix {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        IntMatrix::new(rows, cols, entries)
    }

    /// Horizontal concatenation. All blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[IntMatrix]) -> IntMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zero(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    m[(r, offset + c)] = b[(r, c)].clone();
                }
            }
            offset += b.cols;
        }
        m
    }

    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Rows `start..end` and columns `cstart..cend`.
    pub fn submatrix(&self, start: usize, end: usize, cstart: usize, cend: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(end - start, cend - cstart);
        for r in start..end {
            for c in cstart..cend {
                m[(r - start, c - cstart)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    /// Inverse of a unimodular matrix, or `None` when `|det| != 1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let (h, u) = hnf(self);
        debug_assert!(h.is_identity());
        Some(u)
    }

    /// Converts every entry to `i64`, failing on overflow.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.entries[src * self.cols + c];
            if !s.is_zero() {
                let v = s * q;
                self.entries[dst * self.cols + c] -= v;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.entries[r * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.entries[r * self.cols + dst] -= v;
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize) {
        for c in 0..self.cols {
            let s = self.entries[src * self.cols + c].clone();
            self.entries[dst * self.cols + c] += s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            *e = -std::mem::take(e);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix::new(self.rows, self.cols, entries)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·A = H`.
///
/// `H` is in row echelon form with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, and zero rows at the bottom.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    hnf_impl(a, true)
}

fn hnf_impl(a: &IntMatrix, track: bool) -> (IntMatrix, IntMatrix) {
    let m = a.rows;
    let mut h = a.clone();
    let mut u = if track {
        IntMatrix::identity(m)
    } else {
        IntMatrix::empty(0)
    };
    let mut pivot_row = 0;
    for c in 0..a.cols {
        if pivot_row == m {
            break;
        }
        loop {
            // Smallest nonzero entry in the column goes to the pivot row.
            let best = (pivot_row..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            if track {
                u.swap_rows(pivot_row, best);
            }
            let mut clean = true;
            for i in pivot_row + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
                h.sub_row_multiple(i, pivot_row, &q);
                if track {
                    u.sub_row_multiple(i, pivot_row, &q);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            h.negate_row(pivot_row);
            if track {
                u.negate_row(pivot_row);
            }
        }
        for i in 0..pivot_row {
            let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
            h.sub_row_multiple(i, pivot_row, &q);
            if track {
                u.sub_row_multiple(i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Row Hermite normal form with the zero rows removed: the canonical basis
/// of the row lattice.
pub fn canonical_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf_impl(a, false);
    let r = (0..h.rows).take_while(|&i| !h.row(i).iter().all(Zero::is_zero)).count();
    h.submatrix(0, r, 0, h.cols)
}

/// Smith normal form `U·A·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `S`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (u, s, v) = snf_impl(a, true);
    SmithDecomposition { u, s, v }
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` without the transforms.
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let (_, s, _) = snf_impl(a, false);
    (0..s.rows.min(s.cols))
        .map(|i| s[(i, i)].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

fn snf_impl(a: &IntMatrix, track: bool) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let (mut u, mut v) = if track {
        (IntMatrix::identity(m), IntMatrix::identity(n))
    } else {
        (IntMatrix::empty(0), IntMatrix::empty(0))
    };
    for t in 0..m.min(n) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = &s[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(s, u, v, track);
            };
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            if track {
                u.swap_rows(t, bi);
                v.swap_cols(t, bj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.sub_row_multiple(i, t, &q);
                if track {
                    u.sub_row_multiple(i, t, &q);
                }
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.sub_col_multiple(j, t, &q);
                if track {
                    v.sub_col_multiple(j, t, &q);
                }
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offender {
                Some(i) => {
                    s.add_row(t, i);
                    if track {
                        u.add_row(t, i);
                    }
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
    }
    finish_snf(s, u, v, track)
}

fn finish_snf(
    mut s: IntMatrix,
    mut u: IntMatrix,
    v: IntMatrix,
    track: bool,
) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..s.rows.min(s.cols) {
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
    }
    (u, s, v)
}

/// Rank over the rationals (equivalently, number of nonzero Smith invariants).
pub fn rank(a: &IntMatrix) -> usize {
    // Fraction-free elimination; same count as the Smith diagonal.
    let mut m = a.row_vecs();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let (f, g) = (m[r][c].clone(), m[i][c].clone());
            for j in c..cols {
                let v = &m[i][j] * &f - &m[r][j] * &g;
                m[i][j] = v;
            }
            let content = m[i][c..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in &mut m[i][c..] {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis (as rows, canonical HNF) of `{v : A·v = 0}`.
///
/// The result is saturated: if `k·v` is in the kernel lattice for some
/// `k >= 1`, then so is `v`.
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let n = a.cols;
    let (h, u) = hnf(&a.transpose());
    let r = (0..h.rows).take_while(|&i| !h.row(i).iter().all(Zero::is_zero)).count();
    let kernel = u.submatrix(r, n, 0, n);
    canonical_basis(&kernel)
}

/// Structure of `ℤ^ambient / rowspan(sub_basis)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStructure {
    /// Nonzero Smith invariants of the sublattice basis, unit factors included.
    #[serde(with = "crate::bigjson::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl QuotientStructure {
    /// The nontrivial torsion factors (those greater than one).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn lattice_quotient_invariants(ambient_rank: usize, sub_basis: &IntMatrix) -> QuotientStructure {
    assert_eq!(sub_basis.cols, ambient_rank, "sublattice lives in a different ambient rank");
    let invariant_factors = smith_invariants(sub_basis);
    QuotientStructure {
        free_rank: ambient_rank - invariant_factors.len(),
        invariant_factors,
    }
}

/// Integer coordinates of `v` in an echelon row basis (such as the output of
/// [`canonical_basis`]), or `None` when `v` is not in the row lattice.
pub fn row_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.cols, v.len());
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows);
    for r in 0..basis.rows {
        let row = basis.row(r);
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Intersection of the row lattice `basis` (saturated, canonical) with the
/// kernel of `map`, given as a canonical basis.
pub(crate) fn restrict_kernel(basis: &IntMatrix, map: &IntMatrix) -> IntMatrix {
    if basis.rows == 0 {
        return basis.clone();
    }
    // Coefficients c with map·(cᵀ·basis)ᵀ = 0, i.e. (map·basisᵀ)·c = 0.
    let image = map * &basis.transpose();
    if image.is_zero() {
        return basis.clone();
    }
    let coeffs = kernel_lattice(&image);
    canonical_basis(&(&coeffs * basis))
}

/// Unimodular `B` whose first `k` columns span the saturated sublattice with
/// row basis `sub` (`k = sub.rows()`).
pub(crate) fn complete_basis(sub: &IntMatrix) -> IntMatrix {
    let n = sub.cols;
    if sub.rows == 0 {
        return IntMatrix::identity(n);
    }
    // U·sub·V = [I 0] for a saturated basis, so sub = U⁻¹·(first k rows of V⁻¹).
    let dec = snf(sub);
    let v_inv = dec.v.inverse_unimodular().expect("SNF transform is unimodular");
    v_inv.transpose()
}
