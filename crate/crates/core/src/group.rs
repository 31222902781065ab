//! Finite subgroups of GLₙ(ℤ), fully enumerated.
//!
//! A [`FiniteMatrixGroup`] owns its sorted element list together with a
//! left-multiplication Cayley table over the generators; every product is
//! answered through that table (or a full multiplication table for small
//! groups), so group-theoretic queries never touch big integers.
//! [`Subgroup`]s are index sets into the parent enumeration.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A lattice `ℤⁿ` with a list of unimodular generators acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GLattice {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<IntMatrix>,
}

impl GLattice {
    pub fn new(name: impl Into<String>, rank: usize, generators: Vec<IntMatrix>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            let field = format!("generators[{i}]");
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::validation(
                    field,
                    format!("expected a {rank}x{rank} matrix, got {}x{}", g.rows(), g.cols()),
                ));
            }
            if !g.is_unimodular() {
                return Err(Error::validation(
                    field,
                    format!("determinant {} is not ±1", g.determinant()),
                ));
            }
        }
        Ok(GLattice {
            name: name.into(),
            rank,
            generators,
        })
    }

    /// Same lattice with every generator replaced by `T·g·T⁻¹`.
    pub fn conjugated_by(&self, t: &IntMatrix) -> Result<GLattice> {
        let t_inv = t
            .inverse_unimodular()
            .ok_or_else(|| Error::validation("basis change", "matrix is not unimodular"))?;
        let generators = self.generators.iter().map(|g| &(t * g) * &t_inv).collect();
        GLattice::new(format!("{}^T", self.name), self.rank, generators)
    }

    pub fn acts_trivially(&self) -> bool {
        self.generators.iter().all(IntMatrix::is_identity)
    }
}

/// All elements of the group generated by a [`GLattice`], in lexicographic order.
pub struct FiniteMatrixGroup {
    lattice: GLattice,
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    identity: usize,
    generators: Vec<usize>,
    // left[s][x] = index of generators[s] · x
    left: Vec<Vec<u32>>,
    // x = generators[via[x]] · parent[x]; identity has no parent
    parent: Vec<u32>,
    via: Vec<u32>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of the generators. Fails with
    /// [`Error::CapExceeded`] once more than `cap` elements appear.
    pub fn close(lattice: &GLattice, cap: usize) -> Result<Self> {
        let n = lattice.rank;
        let gens = &lattice.generators;
        let id = IntMatrix::identity(n);

        let mut found: Vec<IntMatrix> = vec![id.clone()];
        let mut seen: HashMap<IntMatrix, usize> = HashMap::from([(id, 0)]);
        let mut left_raw: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut parent_raw = vec![u32::MAX];
        let mut via_raw = vec![u32::MAX];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let y = g * &found[x];
                let j = match seen.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = found.len();
                        if j >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        seen.insert(y.clone(), j);
                        found.push(y);
                        parent_raw.push(x as u32);
                        via_raw.push(s as u32);
                        queue.push_back(j);
                        j
                    }
                };
                let row = &mut left_raw[s];
                if row.len() <= x {
                    row.resize(x + 1, u32::MAX);
                }
                row[x] = j as u32;
            }
        }

        // Relabel into canonical (lexicographic) order.
        let order = found.len();
        let mut perm: Vec<usize> = (0..order).collect();
        perm.sort_by(|&a, &b| found[a].entries().cmp(found[b].entries()));
        let mut new_of_old = vec![0usize; order];
        for (new, &old) in perm.iter().enumerate() {
            new_of_old[old] = new;
        }
        let elements: Vec<IntMatrix> = perm.iter().map(|&old| found[old].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut left = vec![vec![0u32; order]; gens.len()];
        for s in 0..gens.len() {
            for old in 0..order {
                left[s][new_of_old[old]] = new_of_old[left_raw[s][old] as usize] as u32;
            }
        }
        let mut parent = vec![u32::MAX; order];
        let mut via = vec![u32::MAX; order];
        for old in 1..order {
            parent[new_of_old[old]] = new_of_old[parent_raw[old] as usize] as u32;
            via[new_of_old[old]] = via_raw[old];
        }
        let generators = gens.iter().map(|g| new_of_old[seen[g]]).collect();

        let mut group = FiniteMatrixGroup {
            lattice: lattice.clone(),
            elements,
            index,
            identity: new_of_old[0],
            generators,
            left,
            parent,
            via,
            inverse: Vec::new(),
            table: None,
        };
        if order <= TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.mul_by_word(a, b) as u32;
                }
            }
            group.table = Some(table);
        }
        group.inverse = (0..order).map(|g| group.compute_inverse(g)).collect();
        Ok(group)
    }

    fn mul_by_word(&self, a: usize, b: usize) -> usize {
        // a = s_1 s_2 ... s_k, so a·b = s_1(s_2(...(s_k b))).
        let mut word = Vec::new();
        let mut x = a;
        while x != self.identity {
            word.push(self.via[x] as usize);
            x = self.parent[x] as usize;
        }
        let mut y = b;
        for &s in word.iter().rev() {
            y = self.left[s][y] as usize;
        }
        y
    }

    fn compute_inverse(&self, g: usize) -> usize {
        let mut prev = self.identity;
        let mut x = g;
        while x != self.identity {
            prev = x;
            x = self.mul(g, x);
        }
        prev
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Indices of the lattice's generators, in input order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_by_word(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g·h·g⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `a⁻¹·b⁻¹·a·b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(g, x);
            k += 1;
        }
        k
    }

    /// Multiplicative order → number of elements of that order.
    pub fn element_order_histogram(&self) -> BTreeMap<usize, usize> {
        self.whole().element_order_histogram()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_members(self, (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_members(self, vec![self.identity])
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Subgroup<'_> {
        let mut mask = vec![false; self.order()];
        mask[self.identity] = true;
        let mut members = vec![self.identity];
        let gens: Vec<usize> = seed.iter().copied().filter(|&g| g != self.identity).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(g, x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            group: self,
            members,
            mask,
        }
    }

    /// Brute force: is there `g` with `g·H1·g⁻¹ = H2`?
    pub fn are_conjugate_subgroups(&self, h1: &Subgroup<'_>, h2: &Subgroup<'_>) -> bool {
        self.conjugating_element(h1, h2).is_some()
    }

    pub fn conjugating_element(&self, h1: &Subgroup<'_>, h2: &Subgroup<'_>) -> Option<usize> {
        assert!(h1.same_parent(self) && h2.same_parent(self), "subgroups of another group");
        if h1.order() != h2.order() {
            return None;
        }
        (0..self.order()).find(|&g| h1.members.iter().all(|&h| h2.mask[self.conjugate(g, h)]))
    }
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("name", &self.lattice.name)
            .field("rank", &self.lattice.rank)
            .field("order", &self.order())
            .finish()
    }
}

/// A subgroup stored as a sorted index set into its parent group.
#[derive(Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteMatrixGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl<'g> Subgroup<'g> {
    /// Wraps an index set that the caller knows to be closed.
    pub(crate) fn from_members(group: &'g FiniteMatrixGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            group,
            members,
            mask,
        }
    }

    pub fn group(&self) -> &'g FiniteMatrixGroup {
        self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&m| other.mask[m])
    }

    fn same_parent(&self, g: &FiniteMatrixGroup) -> bool {
        std::ptr::eq(self.group, g)
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.group.order()];
        span[self.group.identity] = true;
        let mut size = 1;
        for &m in &self.members {
            if span[m] {
                continue;
            }
            gens.push(m);
            let sub = self.group.subgroup_generated(&gens);
            span = sub.mask;
            size = sub.members.len();
            if size == self.order() {
                break;
            }
        }
        debug_assert_eq!(size, self.order());
        gens
    }

    pub fn intersect(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        assert!(other.same_parent(self.group), "subgroups of different groups");
        let members = self.members.iter().copied().filter(|&m| other.mask[m]).collect();
        Subgroup::from_members(self.group, members)
    }

    /// `g·H·g⁻¹`
    pub fn conjugate_by(&self, g: usize) -> Subgroup<'g> {
        let members = self.members.iter().map(|&h| self.group.conjugate(g, h)).collect();
        Subgroup::from_members(self.group, members)
    }

    pub fn is_normal_in(&self, other: &Subgroup<'_>) -> bool {
        other
            .members
            .iter()
            .all(|&g| self.members.iter().all(|&h| self.mask[self.group.conjugate(g, h)]))
    }

    /// Smallest normal subgroup of `self` containing `seed`.
    pub fn normal_closure(&self, seed: &[usize]) -> Subgroup<'g> {
        let g = self.group;
        let conj_by = self.generators();
        let mut gens: Vec<usize> = seed.iter().copied().filter(|&s| s != g.identity).collect();
        let mut sub = g.subgroup_generated(&gens);
        loop {
            let mut grew = false;
            for i in 0..gens.len() {
                for &c in &conj_by {
                    let x = g.conjugate(c, gens[i]);
                    if !sub.mask[x] {
                        gens.push(x);
                        sub = g.subgroup_generated(&gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// `[H, H]`: normal closure of commutators of a generating set.
    pub fn commutator_subgroup(&self) -> Subgroup<'g> {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.group.commutator(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_subgroup().order() == self.order()
    }

    /// Invariant factors `d_1 | d_2 | ...` (all `> 1`) of `H/[H,H]`.
    pub fn abelianization(&self) -> Vec<u64> {
        let derived = self.commutator_subgroup();
        self.quotient_invariants(&derived, &self.members)
    }

    /// Invariant factors of the image of `sub` in `H/[H,H]`.
    pub fn abelianization_image(&self, sub: &Subgroup<'_>) -> Vec<u64> {
        let derived = self.commutator_subgroup();
        self.quotient_invariants(&derived, &sub.members)
    }

    /// Invariant factors of the subgroup of the abelian quotient `H/N`
    /// formed by the cosets of `elements`.
    fn quotient_invariants(&self, normal: &Subgroup<'_>, elements: &[usize]) -> Vec<u64> {
        let g = self.group;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut orders = Vec::new();
        for &x in elements {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = orders.len();
            for &n in &normal.members {
                coset_of[g.mul(x, n)] = id;
            }
            let mut k = 1;
            let mut y = x;
            while !normal.mask[y] {
                y = g.mul(x, y);
                k += 1;
            }
            orders.push(k);
        }
        abelian_invariants_from_orders(&orders)
    }

    pub fn element_order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &m in &self.members {
            *hist.entry(self.group.element_order(m)).or_insert(0) += 1;
        }
        hist
    }

    pub fn matrices(&self) -> impl Iterator<Item = &'g IntMatrix> + '_ {
        self.members.iter().map(|&m| self.group.element(m))
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl std::hash::Hash for Subgroup<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .finish()
    }
}

/// Invariant factors of a finite abelian group from the multiset of its
/// element orders.
///
/// For each prime `p`, `#{x : x^{p^k} = 1} = p^{Σ min(k, e_i)}` pins down
/// the exponents `e_i` of the `p`-primary part.
pub fn abelian_invariants_from_orders(orders: &[usize]) -> Vec<u64> {
    let size = orders.len() as u64;
    let mut primary: Vec<Vec<u64>> = Vec::new(); // per prime, prime powers descending
    for p in prime_factors(size) {
        let mut counts = vec![1u64]; // elements with order dividing p^0
        for k in 1.. {
            let pk = p.pow(k);
            let c = orders.iter().filter(|&&o| pk % o as u64 == 0).count() as u64;
            let stable = counts.last() == Some(&c);
            counts.push(c);
            if stable {
                break;
            }
        }
        // r_k = #{i : e_i >= k} = log_p(c_k / c_{k-1})
        let ranks: Vec<u32> = counts
            .windows(2)
            .map(|w| ilog(w[1] / w[0], p))
            .collect();
        let mut powers = Vec::new();
        for (k, window) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in next..*window {
                powers.push(p.pow(k as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(powers);
    }
    let len = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| primary.iter().filter_map(|ps| ps.get(i)).product())
        .collect();
    factors.reverse();
    factors
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Permutation matrix of `s` acting by `e_i ↦ e_{s(i)}` (0-based images).
pub fn permutation_matrix(images: &[usize]) -> IntMatrix {
    let n = images.len();
    let mut m = IntMatrix::zero(n, n);
    for (i, &j) in images.iter().enumerate() {
        m[(j, i)] = BigInt::from(1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(rank: usize, gens: Vec<IntMatrix>) -> GLattice {
        GLattice::new("test", rank, gens).unwrap()
    }

    fn sym3() -> FiniteMatrixGroup {
        let l = lattice(3, vec![permutation_matrix(&[1, 0, 2]), permutation_matrix(&[1, 2, 0])]);
        FiniteMatrixGroup::close(&l, DEFAULT_CAP).unwrap()
    }

    fn c4() -> FiniteMatrixGroup {
        let g = IntMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, -1]]);
        FiniteMatrixGroup::close(&lattice(3, vec![g]), DEFAULT_CAP).unwrap()
    }

    fn idx(g: &FiniteMatrixGroup, images: &[usize]) -> usize {
        g.index_of(&permutation_matrix(images)).unwrap()
    }

    #[test]
    fn closure_orders() {
        let neg = IntMatrix::diagonal(&[-1, -1, -1]);
        let g = FiniteMatrixGroup::close(&lattice(3, vec![neg]), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(c4().order(), 4);
        assert_eq!(sym3().order(), 6);
    }

    #[test]
    fn closure_rejects_infinite_groups() {
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let err = FiniteMatrixGroup::close(&lattice(2, vec![shear]), 50).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 50 }));
    }

    #[test]
    fn elements_are_sorted_and_closed() {
        let g = sym3();
        for w in g.elements().windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let prod = g.element(a) * g.element(b);
                assert_eq!(g.index_of(&prod), Some(g.mul(a, b)));
            }
            assert!(g.element(g.mul(a, g.inv(a))).is_identity());
        }
    }

    #[test]
    fn lattice_validation() {
        let singular = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
        assert!(matches!(
            GLattice::new("bad", 2, vec![singular]),
            Err(Error::Validation { .. })
        ));
        assert!(GLattice::new("bad", 3, vec![IntMatrix::identity(2)]).is_err());
    }

    #[test]
    fn subgroup_generation() {
        let g = sym3();
        assert!(g.subgroup_generated(&[]).is_trivial());
        assert_eq!(g.subgroup_generated(&[idx(&g, &[1, 2, 0])]).order(), 3);

        let c = c4();
        let gen = c.generator_indices()[0];
        let sq = c.mul(gen, gen);
        assert_eq!(c.subgroup_generated(&[sq]).order(), 2);
    }

    #[test]
    fn intersections() {
        let g = sym3();
        let h = g.subgroup_generated(&[idx(&g, &[1, 0, 2])]);
        let k = g.subgroup_generated(&[idx(&g, &[1, 2, 0])]);
        assert_eq!(h.intersect(&h), h);
        assert!(h.intersect(&g.trivial_subgroup()).is_trivial());
        assert!(h.intersect(&k).is_trivial());
    }

    #[test]
    fn commutators_and_abelianization() {
        let g = sym3();
        assert_eq!(g.whole().commutator_subgroup().order(), 3);
        assert_eq!(g.whole().abelianization(), vec![2]);
        assert!(c4().whole().commutator_subgroup().is_trivial());
        assert_eq!(c4().whole().abelianization(), vec![4]);
        assert!(g.trivial_subgroup().is_perfect());
        assert!(g.trivial_subgroup().abelianization().is_empty());
    }

    #[test]
    fn histograms() {
        let neg = IntMatrix::diagonal(&[-1, -1]);
        let g = FiniteMatrixGroup::close(&lattice(2, vec![neg]), DEFAULT_CAP).unwrap();
        assert_eq!(g.element_order_histogram(), BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(
            sym3().element_order_histogram(),
            BTreeMap::from([(1, 1), (2, 3), (3, 2)])
        );
    }

    #[test]
    fn conjugacy_of_subgroups() {
        let g = sym3();
        let t12 = g.subgroup_generated(&[idx(&g, &[1, 0, 2])]);
        let t13 = g.subgroup_generated(&[idx(&g, &[2, 1, 0])]);
        let c3 = g.subgroup_generated(&[idx(&g, &[1, 2, 0])]);
        assert!(g.are_conjugate_subgroups(&t12, &t12));
        assert!(g.are_conjugate_subgroups(&t12, &t13));
        assert!(!g.are_conjugate_subgroups(&t12, &c3));
    }

    #[test]
    fn abelian_invariants_from_element_orders() {
        // Z/2 x Z/2
        assert_eq!(abelian_invariants_from_orders(&[1, 2, 2, 2]), vec![2, 2]);
        // Z/2 x Z/6: orders of (a, b)
        let mut orders = Vec::new();
        for a in 0..2u64 {
            for b in 0..6u64 {
                let oa = if a == 0 { 1 } else { 2 };
                let ob = 6 / num_integer::gcd(b, 6);
                orders.push(num_integer::lcm(oa, ob) as usize);
            }
        }
        assert_eq!(abelian_invariants_from_orders(&orders), vec![2, 6]);
        assert_eq!(abelian_invariants_from_orders(&[1]), Vec::<u64>::new());
    }

    #[test]
    fn rank_zero_lattice_closes_to_trivial_group() {
        let l = lattice(0, vec![IntMatrix::identity(0)]);
        let g = FiniteMatrixGroup::close(&l, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }
}
