//! Necessary conditions for the multiplicative invariant ring `ℤ[L]^G` to be
//! Cohen-Macaulay, and the reductions used to apply them.
//!
//! If `ℤ[L]^G` is Cohen-Macaulay then
//!
//! * (A) every isotropy group `G_m` is perfect modulo the subgroup `M(G_m)`
//!   generated by its bireflections, and
//! * (B) `G` acts trivially on `L` or some isotropy group `G_m` is not perfect.
//!
//! A failure of either condition therefore shows that `ℤ[L]^G` (and `k[L]^G`
//! for every Cohen-Macaulay base ring `k`) is not Cohen-Macaulay. Neither
//! condition holding proves nothing, so the verdict is three-valued.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GLattice};
use crate::isotropy::{self, enumerate_isotropy_groups};
use crate::linalg::{self, IntMatrix};
use crate::reflection::{bireflection_subgroup, is_bireflection_group, is_perfect_mod_bireflections};
use crate::SCHEMA_VERSION;

/// Row basis of `L^G`, computed from the generators alone.
fn invariant_sublattice(lattice: &GLattice) -> IntMatrix {
    let n = lattice.rank;
    let id = IntMatrix::identity(n);
    let blocks: Vec<IntMatrix> = lattice.generators.iter().map(|g| g - &id).collect();
    if blocks.is_empty() {
        return IntMatrix::identity(n);
    }
    linalg::kernel_lattice(&IntMatrix::vstack(n, &blocks))
}

/// The induced action on the effective lattice `L/L^G`.
///
/// The generators are the induced matrices, so the group they generate is
/// `G` modulo the kernel of the induced action.
pub fn effective_reduction(lattice: &GLattice) -> GLattice {
    let fixed = invariant_sublattice(lattice);
    if fixed.rows() == 0 {
        return lattice.clone();
    }
    let generators = lattice
        .generators
        .iter()
        .map(|g| isotropy::quotient_action(&fixed, g))
        .collect();
    GLattice::new(
        format!("{}/L^G", lattice.name),
        lattice.rank - fixed.rows(),
        generators,
    )
    .expect("induced action of a unimodular matrix is unimodular")
}

/// `L1 ⊕ L2` with generator `i` acting as the block sum of both generators `i`.
pub fn direct_sum(l1: &GLattice, l2: &GLattice) -> Result<GLattice> {
    if l1.generators.len() != l2.generators.len() {
        return Err(Error::GeneratorMismatch(format!(
            "{} has {} generators, {} has {}",
            l1.name,
            l1.generators.len(),
            l2.name,
            l2.generators.len()
        )));
    }
    let generators = l1
        .generators
        .iter()
        .zip(&l2.generators)
        .map(|(a, b)| IntMatrix::block_diagonal(&[a.clone(), b.clone()]))
        .collect();
    GLattice::new(format!("{}+{}", l1.name, l2.name), l1.rank + l2.rank, generators)
}

/// `L^{⊕r}` with block-diagonal generators.
pub fn direct_sum_copies(lattice: &GLattice, r: usize) -> Result<GLattice> {
    if r == 0 {
        return Err(Error::validation("r", "number of copies must be at least 1"));
    }
    if r == 1 {
        return Ok(lattice.clone());
    }
    let generators = lattice
        .generators
        .iter()
        .map(|g| IntMatrix::block_diagonal(&vec![g.clone(); r]))
        .collect();
    GLattice::new(format!("{}^{r}", lattice.name), lattice.rank * r, generators)
}

/// Element `i` of `g1` paired with element `pairing[i]` of `g2`, both reached
/// by the same generator words. Fails unless the pairing is a bijection.
fn pair_elements(g1: &FiniteMatrixGroup, g2: &FiniteMatrixGroup) -> Result<Vec<usize>> {
    let s1 = g1.generator_indices();
    let s2 = g2.generator_indices();
    if s1.len() != s2.len() {
        return Err(Error::GeneratorMismatch(format!(
            "{} generators against {}",
            s1.len(),
            s2.len()
        )));
    }
    if g1.order() != g2.order() {
        return Err(Error::GeneratorMismatch(format!(
            "groups of order {} and {}",
            g1.order(),
            g2.order()
        )));
    }
    let mut forward = vec![usize::MAX; g1.order()];
    let mut backward: HashMap<usize, usize> = HashMap::new();
    forward[g1.identity()] = g2.identity();
    backward.insert(g2.identity(), g1.identity());
    let mut queue = VecDeque::from([(g1.identity(), g2.identity())]);
    while let Some((a, b)) = queue.pop_front() {
        for (&x, &y) in s1.iter().zip(s2) {
            let (xa, yb) = (g1.mul(x, a), g2.mul(y, b));
            match (forward[xa], backward.get(&yb)) {
                (f, Some(&back)) if f == yb && back == xa => {}
                (usize::MAX, None) => {
                    forward[xa] = yb;
                    backward.insert(yb, xa);
                    queue.push_back((xa, yb));
                }
                _ => {
                    return Err(Error::GeneratorMismatch(
                        "the same generator word gives inconsistent elements".into(),
                    ))
                }
            }
        }
    }
    Ok(forward)
}

/// Whether `L1 ⊗ ℚ ≅ L2 ⊗ ℚ` for the group identified through paired
/// generators, decided by comparing traces on every element.
pub fn rationally_isomorphic(l1: &GLattice, l2: &GLattice, cap: usize) -> Result<bool> {
    let g1 = FiniteMatrixGroup::close(l1, cap)?;
    let g2 = FiniteMatrixGroup::close(l2, cap)?;
    let pairing = pair_elements(&g1, &g2)?;
    Ok(pairing
        .iter()
        .enumerate()
        .all(|(a, &b)| g1.element(a).trace() == g2.element(b).trace()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A necessary condition fails: the invariant ring is not Cohen-Macaulay.
    Obstructed,
    /// Both necessary conditions hold; nothing is decided.
    Inconclusive,
    /// Cohen-Macaulay for elementary reasons (see [`SpecialCase`]).
    TriviallyCM,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "Obstructed",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::TriviallyCM => "TriviallyCM",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// `k[L]^G = k[L]`, Cohen-Macaulay exactly when `k` is.
    TrivialAction,
    /// Over a field the invariant ring is normal of dimension at most 2.
    RankAtMostTwo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub name: String,
    pub rank: usize,
    pub generators: usize,
    pub group_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reductions {
    /// Rank of `L^G`.
    pub fixed_rank: usize,
    /// Rank of the effective lattice `L/L^G`.
    pub effective_rank: usize,
    /// Order of the kernel of `G` on `L/L^G`.
    pub kernel_order: usize,
}

/// One conjugacy class of isotropy groups `H = G_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyRow {
    #[serde(with = "crate::bigjson::vec")]
    pub witness: Vec<BigInt>,
    pub order: usize,
    pub class_size: usize,
    /// `rank L^H`.
    pub fixed_rank: usize,
    /// `|M(H)|`.
    pub bireflection_order: usize,
    /// Invariant factors of `H^ab`.
    pub abelianization: Vec<u64>,
    /// Invariant factors of the image of `M(H)` in `H^ab`.
    pub bireflection_image: Vec<u64>,
    pub perfect_mod_bireflections: bool,
    pub perfect: bool,
    pub generated_by_bireflections: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub schema_version: u32,
    pub input: InputSummary,
    pub reductions: Reductions,
    pub fixed_point_free: bool,
    pub isotropy: Vec<IsotropyRow>,
    pub condition_a: bool,
    pub condition_b: bool,
    /// Index into `isotropy` of the first class violating condition A.
    pub condition_a_failure: Option<usize>,
    pub special_case: Option<SpecialCase>,
    pub verdict: Verdict,
    pub conclusion: String,
}

/// `0` or `(a, b, ...)`.
pub fn format_vector(v: &[BigInt]) -> String {
    if v.iter().all(Zero::is_zero) {
        return "0".into();
    }
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn format_factors(f: &[u64]) -> String {
    let parts: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl ObstructionReport {
    /// The sentence explaining the failure of condition A, if it fails.
    pub fn condition_a_line(&self) -> Option<String> {
        let row = &self.isotropy[self.condition_a_failure?];
        Some(format!(
            "condition A fails at m = {}: abelianization {}, bireflection image {}",
            format_vector(&row.witness),
            format_factors(&row.abelianization),
            format_factors(&row.bireflection_image)
        ))
    }

    pub fn condition_b_line(&self) -> Option<String> {
        (!self.condition_b)
            .then(|| "condition B fails: the action is nontrivial and every isotropy group is perfect".into())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.input;
        let r = &self.reductions;
        let _ = writeln!(s, "lattice: {} (rank {}, {} generators)", i.name, i.rank, i.generators);
        let _ = writeln!(s, "group order: {}", i.group_order);
        let _ = writeln!(
            s,
            "effective reduction: fixed rank {}, effective rank {}, kernel order {}",
            r.fixed_rank, r.effective_rank, r.kernel_order
        );
        let _ = writeln!(s, "fixed-point-free: {}", yes_no(self.fixed_point_free));
        let _ = writeln!(s, "isotropy classes: {}", self.isotropy.len());
        for row in &self.isotropy {
            let _ = writeln!(
                s,
                "  m = {}: order {}, conjugates {}, fixed rank {}, |M(H)| {}, abelianization {}, bireflection image {}, perfect mod bireflections {}, perfect {}, bireflection group {}",
                format_vector(&row.witness),
                row.order,
                row.class_size,
                row.fixed_rank,
                row.bireflection_order,
                format_factors(&row.abelianization),
                format_factors(&row.bireflection_image),
                yes_no(row.perfect_mod_bireflections),
                yes_no(row.perfect),
                yes_no(row.generated_by_bireflections),
            );
        }
        let holds = |b: bool| if b { "holds" } else { "fails" };
        let _ = writeln!(s, "condition A: {}", holds(self.condition_a));
        if let Some(line) = self.condition_a_line() {
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "condition B: {}", holds(self.condition_b));
        if let Some(line) = self.condition_b_line() {
            let _ = writeln!(s, "{line}");
        }
        if let Some(case) = self.special_case {
            let name = match case {
                SpecialCase::TrivialAction => "trivial action",
                SpecialCase::RankAtMostTwo => "rank at most 2",
            };
            let _ = writeln!(s, "special case: {name}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        let _ = writeln!(s, "conclusion: {}", self.conclusion);
        s
    }
}

fn conclusion(verdict: Verdict, special: Option<SpecialCase>) -> String {
    match (verdict, special) {
        (Verdict::Obstructed, _) => "Z[L]^G is not Cohen-Macaulay, and neither is k[L]^G for any Cohen-Macaulay base ring k".into(),
        (Verdict::Inconclusive, _) => {
            "both necessary conditions hold; Cohen-Macaulayness is not decided".into()
        }
        (_, Some(SpecialCase::TrivialAction)) => {
            "G acts trivially, so k[L]^G = k[L] is Cohen-Macaulay whenever k is".into()
        }
        _ => "L has rank at most 2, so k[L]^G is a normal domain of dimension at most 2 and Cohen-Macaulay for every field k".into(),
    }
}

/// Runs the full pipeline: closure, reductions, special cases, isotropy
/// catalog, conditions A and B, verdict.
///
/// Special cases are decided on the rank of the input lattice. Conditions A
/// and B are evaluated in every case and reported alongside.
pub fn check_necessary_conditions(lattice: &GLattice, cap: usize) -> Result<ObstructionReport> {
    let group = FiniteMatrixGroup::close(lattice, cap)?;
    let reduced = effective_reduction(lattice);
    let reduced_order = FiniteMatrixGroup::close(&reduced, cap)?.order();
    let reductions = Reductions {
        fixed_rank: lattice.rank - reduced.rank,
        effective_rank: reduced.rank,
        kernel_order: group.order() / reduced_order,
    };

    let catalog = enumerate_isotropy_groups(&group)?;
    let isotropy: Vec<IsotropyRow> = catalog
        .classes
        .iter()
        .map(|c| {
            let h = &c.subgroup;
            let m = bireflection_subgroup(h);
            IsotropyRow {
                witness: c.witness.clone(),
                order: h.order(),
                class_size: c.class_size,
                fixed_rank: c.fixed_space.rows(),
                bireflection_order: m.order(),
                abelianization: h.abelianization(),
                bireflection_image: h.abelianization_image(&m),
                perfect_mod_bireflections: is_perfect_mod_bireflections(h),
                perfect: h.is_perfect(),
                generated_by_bireflections: is_bireflection_group(h),
            }
        })
        .collect();

    let trivial = group.is_trivial();
    let condition_a_failure = isotropy.iter().position(|r| !r.perfect_mod_bireflections);
    let condition_a = condition_a_failure.is_none();
    let condition_b = trivial || isotropy.iter().any(|r| !r.perfect);

    let special_case = if trivial {
        Some(SpecialCase::TrivialAction)
    } else if lattice.rank <= 2 {
        Some(SpecialCase::RankAtMostTwo)
    } else {
        None
    };
    let verdict = match special_case {
        Some(_) => Verdict::TriviallyCM,
        None if condition_a && condition_b => Verdict::Inconclusive,
        None => Verdict::Obstructed,
    };

    Ok(ObstructionReport {
        schema_version: SCHEMA_VERSION,
        input: InputSummary {
            name: lattice.name.clone(),
            rank: lattice.rank,
            generators: lattice.generators.len(),
            group_order: group.order(),
        },
        reductions,
        fixed_point_free: isotropy::is_fixed_point_free(&group),
        isotropy,
        condition_a,
        condition_b,
        condition_a_failure,
        special_case,
        verdict,
        conclusion: conclusion(verdict, special_case),
    })
}

/// [`check_necessary_conditions`] on `L^{⊕r}`.
///
/// For `r >= 3` and a nontrivial action the verdict must be `Obstructed`:
/// in `L^{⊕r}` no nonidentity element is a bireflection, so `M(G_m)` is
/// trivial throughout and condition A or B fails. Any other outcome is
/// reported as [`Error::TheoremViolation`].
pub fn copies_verdict(lattice: &GLattice, r: usize, cap: usize) -> Result<ObstructionReport> {
    let sum = direct_sum_copies(lattice, r)?;
    let report = check_necessary_conditions(&sum, cap)?;
    if r >= 3 && !lattice.acts_trivially() && report.verdict != Verdict::Obstructed {
        return Err(Error::TheoremViolation(format!(
            "{} copies of {} with nontrivial action gave verdict {}",
            r, lattice.name, report.verdict
        )));
    }
    Ok(report)
}
