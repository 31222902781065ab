//! Isotropy groups `G_m = { g : g(m) = m }` of lattice vectors.
//!
//! Fixed spaces are kept as saturated integer lattices in canonical form.
//! The isotropy groups of `L` are exactly the pointwise stabilizers of the
//! spaces obtained by intersecting the cyclic fixed spaces `L^g`, so the
//! catalog is built as the meet-closure of those spaces.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GLattice, Subgroup};
use crate::linalg::{self, IntMatrix};
use crate::reflection::moved_rank_subgroup;

/// Box scans stop once a box would hold more candidates than this.
const BOX_BUDGET: usize = 512;

/// `L^H` as a canonical, saturated row basis.
pub fn fixed_lattice(h: &Subgroup<'_>) -> IntMatrix {
    let group = h.group();
    let n = group.rank();
    let id = IntMatrix::identity(n);
    let blocks: Vec<IntMatrix> = h
        .generators()
        .into_iter()
        .map(|g| group.element(g) - &id)
        .collect();
    if blocks.is_empty() {
        return IntMatrix::identity(n);
    }
    linalg::kernel_lattice(&IntMatrix::vstack(n, &blocks))
}

/// Elements fixing every row of `basis`.
pub fn pointwise_stabilizer<'g>(group: &'g FiniteMatrixGroup, basis: &IntMatrix) -> Subgroup<'g> {
    let rows = basis.row_vecs();
    let members = (0..group.order())
        .filter(|&g| {
            let m = group.element(g);
            rows.iter().all(|v| &m.mul_vec(v) == v)
        })
        .collect();
    Subgroup::from_members(group, members)
}

pub fn isotropy_group_of<'g>(group: &'g FiniteMatrixGroup, m: &[BigInt]) -> Subgroup<'g> {
    let members = (0..group.order())
        .filter(|&g| group.element(g).mul_vec(m) == m)
        .collect();
    Subgroup::from_members(group, members)
}

/// One conjugacy class of isotropy groups.
#[derive(Clone, Debug)]
pub struct IsotropyClass<'g> {
    pub subgroup: Subgroup<'g>,
    /// `m` with `G_m` equal to `subgroup`.
    pub witness: Vec<BigInt>,
    /// Canonical basis of `L^H`.
    pub fixed_space: IntMatrix,
    /// Number of distinct conjugates of `subgroup`.
    pub class_size: usize,
}

/// All isotropy groups of a group, one representative per conjugacy class,
/// ordered by decreasing order.
#[derive(Clone, Debug)]
pub struct IsotropyCatalog<'g> {
    pub classes: Vec<IsotropyClass<'g>>,
    /// Every isotropy group (not only representatives) with its fixed space.
    pub all: Vec<(Subgroup<'g>, IntMatrix)>,
}

impl<'g> IsotropyCatalog<'g> {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.subgroup.order()).collect()
    }

    /// Index of the class containing a conjugate of `h`, if `h` is an isotropy group.
    pub fn class_of(&self, h: &Subgroup<'_>) -> Option<usize> {
        let group = h.group();
        self.classes
            .iter()
            .position(|c| group.are_conjugate_subgroups(&c.subgroup, h))
    }
}

pub fn enumerate_isotropy_groups(group: &FiniteMatrixGroup) -> Result<IsotropyCatalog<'_>> {
    let n = group.rank();
    let id = IntMatrix::identity(n);

    // Distinct cyclic fixed spaces, each with one element realizing it.
    let mut atoms: Vec<(IntMatrix, IntMatrix)> = Vec::new(); // (g - 1, L^g)
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    for g in 0..group.order() {
        let shifted = group.element(g) - &id;
        let space = linalg::kernel_lattice(&shifted);
        if seen.insert(space.clone()) {
            atoms.push((shifted, space));
        }
    }

    // Meet-closure under intersection.
    let mut spaces: Vec<IntMatrix> = atoms.iter().map(|(_, s)| s.clone()).collect();
    let mut head = 0;
    while head < spaces.len() {
        let w = spaces[head].clone();
        head += 1;
        for (shifted, _) in &atoms {
            let meet = linalg::restrict_kernel(&w, shifted);
            if meet.rows() < w.rows() && seen.insert(meet.clone()) {
                spaces.push(meet);
            }
        }
    }

    let mut all: Vec<(Subgroup<'_>, IntMatrix)> = spaces
        .into_iter()
        .map(|w| (pointwise_stabilizer(group, &w), w))
        .collect();
    all.sort_by(|(a, _), (b, _)| b.order().cmp(&a.order()).then(a.members().cmp(b.members())));

    let position: HashMap<Vec<usize>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, (h, _))| (h.members().to_vec(), i))
        .collect();
    debug_assert_eq!(position.len(), all.len(), "distinct spaces give distinct stabilizers");

    let mut assigned = vec![false; all.len()];
    let mut classes = Vec::new();
    for i in 0..all.len() {
        if assigned[i] {
            continue;
        }
        let rep = &all[i].0;
        let mut class_size = 0;
        for g in 0..group.order() {
            let conj = rep.conjugate_by(g);
            let j = *position
                .get(conj.members())
                .ok_or_else(|| Error::TheoremViolation("isotropy groups not closed under conjugation".into()))?;
            if !assigned[j] {
                assigned[j] = true;
                class_size += 1;
            }
        }
        let witness = search_witness(group, rep, &all[i].1);
        classes.push(IsotropyClass {
            subgroup: rep.clone(),
            witness,
            fixed_space: all[i].1.clone(),
            class_size,
        });
    }
    Ok(IsotropyCatalog { classes, all })
}

/// A vector `m` with `G_m = H`.
///
/// Candidates are integer combinations `Σ c_i b_i` of the canonical basis of
/// `L^H`. Coefficient boxes `{0..s}^d` are scanned lexicographically for
/// `s = 1, 2, ...` while the box holds at most 512 points; after that the
/// coefficients run along the moment curve `c_i = t^i`, `t = 0, 1, ...`,
/// which meets each excluded proper subspace at most `d - 1` times and so
/// succeeds within `N(d - 1) + 1` steps for `N` excluded elements.
pub fn witness_vector(group: &FiniteMatrixGroup, h: &Subgroup<'_>) -> Result<Vec<BigInt>> {
    let w = fixed_lattice(h);
    if pointwise_stabilizer(group, &w) != *h {
        return Err(Error::NotIsotropy { order: h.order() });
    }
    Ok(search_witness(group, h, &w))
}

fn search_witness(group: &FiniteMatrixGroup, h: &Subgroup<'_>, w: &IntMatrix) -> Vec<BigInt> {
    let n = group.rank();
    let d = w.rows();
    if d == 0 {
        return vec![BigInt::zero(); n];
    }
    let checker = FixChecker::new(group, h);
    let combine = |coeffs: &[BigInt]| -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); n];
        for (c, row) in coeffs.iter().zip(w.row_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in m.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        m
    };

    let mut side = 1usize;
    while (side + 1).checked_pow(d as u32).is_some_and(|size| size <= BOX_BUDGET) {
        let mut coeffs = vec![0usize; d];
        loop {
            let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
            let m = combine(&c);
            if checker.only_h_fixes(&m) {
                return m;
            }
            // Next point of {0..side}^d in lexicographic order.
            let Some(pos) = coeffs.iter().rposition(|&x| x < side) else { break };
            coeffs[pos] += 1;
            for x in &mut coeffs[pos + 1..] {
                *x = 0;
            }
        }
        side += 1;
    }

    let excluded = group.order() - h.order();
    for t in 0..=excluded * (d - 1) + 1 {
        let t = BigInt::from(t);
        let mut c = Vec::with_capacity(d);
        let mut p = BigInt::from(1);
        for _ in 0..d {
            c.push(p.clone());
            p *= &t;
        }
        let m = combine(&c);
        if checker.only_h_fixes(&m) {
            return m;
        }
    }
    unreachable!("moment curve search is exhaustive for isotropy groups")
}

/// Tests `g·m ≠ m` for every `g ∉ H`, using machine integers when possible.
struct FixChecker {
    small: Option<Vec<Vec<Vec<i64>>>>,
    big: Vec<IntMatrix>,
}

impl FixChecker {
    fn new(group: &FiniteMatrixGroup, h: &Subgroup<'_>) -> Self {
        let id = IntMatrix::identity(group.rank());
        let big: Vec<IntMatrix> = (0..group.order())
            .filter(|&g| !h.contains(g))
            .map(|g| group.element(g) - &id)
            .collect();
        let small = big.iter().map(IntMatrix::to_i64_rows).collect();
        FixChecker { small, big }
    }

    fn only_h_fixes(&self, m: &[BigInt]) -> bool {
        if let (Some(small), Some(v)) = (&self.small, m.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<i64>>>()) {
            return small.iter().all(|rows| {
                rows.iter().any(|r| {
                    r.iter().zip(&v).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() != 0
                })
            });
        }
        self.big.iter().all(|s| s.mul_vec(m).iter().any(|x| !x.is_zero()))
    }
}

/// Minimal members (by inclusion up to conjugacy) among the nontrivial
/// isotropy classes. Each is checked to act fixed-point-freely on `L/L^H`.
pub fn minimal_nontrivial_isotropy<'g>(catalog: &IsotropyCatalog<'g>) -> Result<Vec<Subgroup<'g>>> {
    let nontrivial: Vec<&IsotropyClass<'g>> = catalog
        .classes
        .iter()
        .filter(|c| !c.subgroup.is_trivial())
        .collect();
    let mut minimal = Vec::new();
    for c in &nontrivial {
        let h = &c.subgroup;
        let group = h.group();
        let has_smaller = nontrivial.iter().any(|k| {
            k.subgroup.order() < h.order()
                && h.order() % k.subgroup.order() == 0
                && (0..group.order()).any(|g| k.subgroup.conjugate_by(g).is_subgroup_of(h))
        });
        if has_smaller {
            continue;
        }
        if !acts_fixed_point_freely_on_quotient(h, &c.fixed_space) {
            return Err(Error::TheoremViolation(format!(
                "minimal isotropy group of order {} has fixed points on L/L^H",
                h.order()
            )));
        }
        minimal.push(h.clone());
    }
    Ok(minimal)
}

/// Matrix of `g` on `L/S` for a saturated `g`-stable sublattice `S` with
/// row basis `sub`, in the basis completed by [`linalg::complete_basis`].
pub fn quotient_action(sub: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    let b = linalg::complete_basis(sub);
    let b_inv = b.inverse_unimodular().expect("completed basis is unimodular");
    let conj = &(&b_inv * g) * &b;
    let k = sub.rows();
    let n = g.rows();
    conj.submatrix(k, n, k, n)
}

fn acts_fixed_point_freely_on_quotient(h: &Subgroup<'_>, fixed: &IntMatrix) -> bool {
    let group = h.group();
    let q = group.rank() - fixed.rows();
    let id = IntMatrix::identity(q);
    let b = linalg::complete_basis(fixed);
    let b_inv = b.inverse_unimodular().expect("completed basis is unimodular");
    let k = fixed.rows();
    h.members()
        .iter()
        .filter(|&&g| g != group.identity())
        .all(|&g| {
            let conj = &(&b_inv * group.element(g)) * &b;
            let bar = conj.submatrix(k, k + q, k, k + q);
            !(&bar - &id).determinant().is_zero()
        })
}

/// No nonidentity element fixes a nonzero vector: `det(g - 1) ≠ 0`.
pub fn is_fixed_point_free(group: &FiniteMatrixGroup) -> bool {
    let id = IntMatrix::identity(group.rank());
    (0..group.order())
        .filter(|&g| g != group.identity())
        .all(|g| !(group.element(g) - &id).determinant().is_zero())
}

/// Element-order histogram of `SL(2, F_5)`, by enumerating all 2×2 matrices
/// over `F_5` with determinant 1.
pub fn sl2_f5_histogram() -> &'static BTreeMap<usize, usize> {
    static HIST: OnceLock<BTreeMap<usize, usize>> = OnceLock::new();
    HIST.get_or_init(|| {
        const P: u32 = 5;
        let mul = |x: [u32; 4], y: [u32; 4]| {
            [
                (x[0] * y[0] + x[1] * y[2]) % P,
                (x[0] * y[1] + x[1] * y[3]) % P,
                (x[2] * y[0] + x[3] * y[2]) % P,
                (x[2] * y[1] + x[3] * y[3]) % P,
            ]
        };
        let one = [1, 0, 0, 1];
        let mut hist = BTreeMap::new();
        for a in 0..P {
            for b in 0..P {
                for c in 0..P {
                    for d in 0..P {
                        if (a * d + P * P - b * c) % P != 1 {
                            continue;
                        }
                        let x = [a, b, c, d];
                        let (mut y, mut k) = (x, 1);
                        while y != one {
                            y = mul(x, y);
                            k += 1;
                        }
                        *hist.entry(k).or_insert(0) += 1;
                    }
                }
            }
        }
        hist
    })
}

/// `H ≅ 2.A_5`: order 120, perfect, and the element orders of `SL(2, F_5)`.
pub fn recognize_binary_icosahedral(h: &Subgroup<'_>) -> bool {
    h.order() == 120 && h.is_perfect() && &h.element_order_histogram() == sl2_f5_histogram()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "detail")]
pub enum ConstraintCheck {
    NotApplicable(String),
    Verified(String),
}

impl ConstraintCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, ConstraintCheck::Verified(_))
    }
}

/// Outcome of the structural checks on fixed-point-free perfect actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpfReport {
    /// Nontrivial perfect fixed-point-free groups are `2.A_5` with rank divisible by 8.
    pub binary_icosahedral: ConstraintCheck,
    /// Perfect minimal isotropy forces `rank L/L^H >= 8` for nontrivial isotropy `H`.
    pub rank_bound: ConstraintCheck,
}

pub fn check_fpf_constraints(group: &FiniteMatrixGroup) -> Result<FpfReport> {
    let whole = group.whole();
    let binary_icosahedral = if group.is_trivial() {
        ConstraintCheck::NotApplicable("group is trivial".into())
    } else if !whole.is_perfect() {
        ConstraintCheck::NotApplicable("group is not perfect".into())
    } else if !is_fixed_point_free(group) {
        ConstraintCheck::NotApplicable("action is not fixed-point-free".into())
    } else {
        if !recognize_binary_icosahedral(&whole) {
            return Err(Error::TheoremViolation(
                "perfect fixed-point-free group is not binary icosahedral".into(),
            ));
        }
        if !group.rank().is_multiple_of(8) {
            return Err(Error::TheoremViolation(format!(
                "perfect fixed-point-free lattice has rank {}",
                group.rank()
            )));
        }
        ConstraintCheck::Verified(format!("binary icosahedral on rank {}", group.rank()))
    };

    let catalog = enumerate_isotropy_groups(group)?;
    let minimal = minimal_nontrivial_isotropy(&catalog)?;
    let rank_bound = if minimal.is_empty() {
        ConstraintCheck::NotApplicable("no nontrivial isotropy groups".into())
    } else if !minimal.iter().all(Subgroup::is_perfect) {
        ConstraintCheck::NotApplicable("some minimal isotropy group is not perfect".into())
    } else {
        let mut least = usize::MAX;
        for c in catalog.classes.iter().filter(|c| !c.subgroup.is_trivial()) {
            let r = moved_rank_subgroup(&c.subgroup);
            if r < 8 {
                return Err(Error::TheoremViolation(format!(
                    "isotropy group of order {} has rank L/L^H = {r} < 8",
                    c.subgroup.order()
                )));
            }
            least = least.min(r);
        }
        ConstraintCheck::Verified(format!("min rank L/L^H = {least}"))
    };
    Ok(FpfReport {
        binary_icosahedral,
        rank_bound,
    })
}

/// The isotropy catalog in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema_version: u32,
    pub name: String,
    pub rank: usize,
    pub group_order: usize,
    pub fixed_point_free: bool,
    pub classes: Vec<WitnessRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub order: usize,
    pub class_size: usize,
    pub fixed_rank: usize,
    /// `m` with `G_m` equal to the class representative.
    #[serde(with = "crate::bigjson::vec")]
    pub witness: Vec<BigInt>,
    /// Generators of the representative, as element matrices.
    pub generators: Vec<IntMatrix>,
}

pub fn witness_report(lattice: &GLattice, cap: usize) -> Result<WitnessReport> {
    let group = FiniteMatrixGroup::close(lattice, cap)?;
    let catalog = enumerate_isotropy_groups(&group)?;
    let classes = catalog
        .classes
        .iter()
        .map(|c| WitnessRow {
            order: c.subgroup.order(),
            class_size: c.class_size,
            fixed_rank: c.fixed_space.rows(),
            witness: c.witness.clone(),
            generators: c
                .subgroup
                .generators()
                .into_iter()
                .map(|g| group.element(g).clone())
                .collect(),
        })
        .collect();
    Ok(WitnessReport {
        schema_version: crate::SCHEMA_VERSION,
        name: lattice.name.clone(),
        rank: lattice.rank,
        group_order: group.order(),
        fixed_point_free: is_fixed_point_free(&group),
        classes,
    })
}

impl WitnessReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "lattice: {} (rank {})\ngroup order: {}\nfixed-point-free: {}\nisotropy classes: {}\n",
            self.name,
            self.rank,
            self.group_order,
            if self.fixed_point_free { "yes" } else { "no" },
            self.classes.len()
        );
        for c in &self.classes {
            let w: Vec<String> = c.witness.iter().map(ToString::to_string).collect();
            let gens: Vec<String> = c.generators.iter().map(ToString::to_string).collect();
            s.push_str(&format!(
                "  order {}, conjugates {}, fixed rank {}, witness ({}), generators [{}]\n",
                c.order,
                c.class_size,
                c.fixed_rank,
                w.join(", "),
                gens.join(", ")
            ));
        }
        s
    }
}
