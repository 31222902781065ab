//! Generalized reflections.
//!
//! An element `g` is a `k`-reflection when `[g, L] = (g - 1)L` has rank at
//! most `k`. For subgroups the same rank, `rank [H, L] = rank L - rank L^H`,
//! is also the height of the ideal of `k[L]` generated by all
//! `x^{g(m)-m} - 1` with `g ∈ H`.

use serde::{Deserialize, Serialize};

use crate::group::{FiniteMatrixGroup, Subgroup};
use crate::linalg::{self, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionClass {
    Identity,
    Reflection,
    Bireflection,
    KReflection(usize),
}

impl ReflectionClass {
    pub fn from_moved_rank(k: usize) -> Self {
        match k {
            0 => ReflectionClass::Identity,
            1 => ReflectionClass::Reflection,
            2 => ReflectionClass::Bireflection,
            k => ReflectionClass::KReflection(k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionProfile {
    pub element: usize,
    pub moved_rank: usize,
    pub classification: ReflectionClass,
}

/// `rank (g - 1)`.
pub fn moved_rank_matrix(g: &IntMatrix) -> usize {
    let id = IntMatrix::identity(g.rows());
    linalg::rank(&(g - &id))
}

pub fn moved_rank(group: &FiniteMatrixGroup, g: usize) -> usize {
    moved_rank_matrix(group.element(g))
}

pub fn profile(group: &FiniteMatrixGroup, g: usize) -> ReflectionProfile {
    let moved_rank = moved_rank(group, g);
    ReflectionProfile {
        element: g,
        moved_rank,
        classification: ReflectionClass::from_moved_rank(moved_rank),
    }
}

/// Rank of `[H, L]`, spanned by the columns of `g - 1` over generators of `H`.
pub fn moved_rank_subgroup(h: &Subgroup<'_>) -> usize {
    let group = h.group();
    let n = group.rank();
    let id = IntMatrix::identity(n);
    let blocks: Vec<IntMatrix> = h
        .generators()
        .into_iter()
        .map(|g| group.element(g) - &id)
        .collect();
    if blocks.is_empty() {
        return 0;
    }
    linalg::rank(&IntMatrix::hstack(n, &blocks))
}

/// Height of the ideal `I_{k[L]}(H)`; equal to the rank of `[H, L]`.
pub fn ideal_height(h: &Subgroup<'_>) -> usize {
    moved_rank_subgroup(h)
}

/// Membership of `H` in the family of subgroups with `rank L/L^H <= k`.
pub fn in_xk(h: &Subgroup<'_>, k: usize) -> bool {
    moved_rank_subgroup(h) <= k
}

/// `M(H)`: the subgroup generated by all elements of `H` with moved rank at most 2.
pub fn bireflection_subgroup<'g>(h: &Subgroup<'g>) -> Subgroup<'g> {
    let group = h.group();
    let seed: Vec<usize> = h
        .members()
        .iter()
        .copied()
        .filter(|&g| moved_rank(group, g) <= 2)
        .collect();
    group.subgroup_generated(&seed)
}

/// Whether `H / M(H)` is perfect, i.e. `H = ⟨M(H), [H, H]⟩`.
pub fn is_perfect_mod_bireflections(h: &Subgroup<'_>) -> bool {
    let m = bireflection_subgroup(h);
    let derived = h.commutator_subgroup();
    let mut seed = m.members().to_vec();
    seed.extend_from_slice(derived.members());
    h.group().subgroup_generated(&seed).order() == h.order()
}

/// Whether `H` is generated by its bireflections.
pub fn is_bireflection_group(h: &Subgroup<'_>) -> bool {
    bireflection_subgroup(h).order() == h.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{permutation_matrix, GLattice, DEFAULT_CAP};

    fn close(rank: usize, gens: Vec<IntMatrix>) -> FiniteMatrixGroup {
        FiniteMatrixGroup::close(&GLattice::new("t", rank, gens).unwrap(), DEFAULT_CAP).unwrap()
    }

    fn c4() -> FiniteMatrixGroup {
        close(
            3,
            vec![IntMatrix::from_rows(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, -1]])],
        )
    }

    fn sym3() -> FiniteMatrixGroup {
        close(3, vec![permutation_matrix(&[1, 0, 2]), permutation_matrix(&[1, 2, 0])])
    }

    #[test]
    fn element_moved_ranks() {
        let g = sym3();
        assert_eq!(moved_rank(&g, g.identity()), 0);
        let t = g.index_of(&permutation_matrix(&[1, 0, 2])).unwrap();
        let c = g.index_of(&permutation_matrix(&[1, 2, 0])).unwrap();
        assert_eq!(profile(&g, t).classification, ReflectionClass::Reflection);
        assert_eq!(profile(&g, c).classification, ReflectionClass::Bireflection);
    }

    #[test]
    fn subgroup_moved_ranks() {
        let neg = close(3, vec![IntMatrix::diagonal(&[-1, -1, -1])]);
        assert_eq!(moved_rank_subgroup(&neg.trivial_subgroup()), 0);
        assert_eq!(moved_rank_subgroup(&neg.whole()), 3);
        assert!(!in_xk(&neg.whole(), 2));

        let c = c4();
        let gen = c.generator_indices()[0];
        let sq = c.subgroup_generated(&[c.mul(gen, gen)]);
        assert_eq!(moved_rank_subgroup(&sq), 2);
    }

    #[test]
    fn xk_membership() {
        let g = sym3();
        let t = g.index_of(&permutation_matrix(&[1, 0, 2])).unwrap();
        assert!(in_xk(&g.trivial_subgroup(), 0));
        assert!(in_xk(&g.subgroup_generated(&[t]), 1));
    }

    #[test]
    fn bireflection_subgroups() {
        let g = sym3();
        assert_eq!(bireflection_subgroup(&g.whole()).order(), 6);

        let neg = close(3, vec![IntMatrix::diagonal(&[-1, -1, -1])]);
        assert!(bireflection_subgroup(&neg.whole()).is_trivial());

        let c = c4();
        let m = bireflection_subgroup(&c.whole());
        assert_eq!(m.order(), 2);
        let gen = c.generator_indices()[0];
        assert!(m.contains(c.mul(gen, gen)));
    }

    #[test]
    fn perfect_modulo_bireflections() {
        let c = c4();
        assert!(is_perfect_mod_bireflections(&c.trivial_subgroup()));
        assert!(!is_perfect_mod_bireflections(&c.whole()));
        assert!(is_perfect_mod_bireflections(&sym3().whole()));
    }
}
