//! Serre ideals as basis subsets.
//!
//! By positivity, the Z-span of a subset `S ⊆ Γ` is a (left, right, two-sided)
//! ideal exactly when multiplying any member by any basis element never
//! produces support outside `S`. Every Serre ideal is of this form.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::verdict::Verdict;
use crate::zring::{BasisTooLarge, EnumerationGuard, ValidationReport, ZPlusRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    fn left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }
}

/// A basis subset together with the sidedness it was checked against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSubset {
    pub members: BasisSet,
    pub side: Side,
}

impl IdealSubset {
    pub fn two_sided(members: BasisSet) -> Self {
        IdealSubset { members, side: Side::TwoSided }
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }
}

/// `member · multiplier` (or `multiplier · member`) has `escaped` in its
/// support, outside the candidate subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealViolation {
    pub member: usize,
    pub multiplier: usize,
    pub escaped: usize,
    /// `true` when the multiplier acts from the left (`b_multiplier b_member`).
    pub multiplier_on_left: bool,
}

/// Decides whether `set` spans an ideal of the given sidedness.
///
/// Members are scanned in basis order, multipliers in basis order, left action
/// before right action; the first escape is the witness.
pub fn is_serre_ideal(ring: &ZPlusRing, set: &BasisSet, side: Side) -> Verdict<IdealViolation> {
    for member in set {
        for multiplier in 0..ring.len() {
            if side.left() {
                if let Some(escaped) = ring.product_support(multiplier, member).difference(set).first() {
                    return Verdict::Fails(IdealViolation {
                        member,
                        multiplier,
                        escaped,
                        multiplier_on_left: true,
                    });
                }
            }
            if side.right() {
                if let Some(escaped) = ring.product_support(member, multiplier).difference(set).first() {
                    return Verdict::Fails(IdealViolation {
                        member,
                        multiplier,
                        escaped,
                        multiplier_on_left: false,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

/// Least Serre ideal of the given side containing `gens`.
pub fn serre_closure(ring: &ZPlusRing, gens: &BasisSet, side: Side) -> IdealSubset {
    let mut members = gens.clone();
    let mut queue: Vec<usize> = gens.to_vec();
    let mut head = 0;
    while head < queue.len() {
        let g = queue[head];
        head += 1;
        for t in 0..ring.len() {
            if side.left() {
                for c in ring.product_support(t, g) {
                    if members.insert(c) {
                        queue.push(c);
                    }
                }
            }
            if side.right() {
                for c in ring.product_support(g, t) {
                    if members.insert(c) {
                        queue.push(c);
                    }
                }
            }
        }
    }
    IdealSubset { members, side }
}

/// All Serre ideals of the given side, in canonical order (cardinality, then
/// lexicographic). Always includes `∅` and `Γ`.
pub fn enumerate_serre_ideals(
    ring: &ZPlusRing,
    side: Side,
    guard: EnumerationGuard,
) -> Result<Vec<IdealSubset>, BasisTooLarge> {
    let n = ring.len();
    guard.check(n)?;
    if n > 63 {
        // the 2^n scan below is keyed by a u64 mask
        return Err(BasisTooLarge { basis: n, limit: 63 });
    }
    let mut out: Vec<IdealSubset> = (0u64..(1u64 << n))
        .map(|mask| BasisSet::from_mask(n, mask))
        .filter(|s| is_serre_ideal(ring, s, side).holds())
        .map(|members| IdealSubset { members, side })
        .collect();
    out.sort();
    Ok(out)
}

/// `∪_{α∈I, β∈J} support(b_α b_β)`.
///
/// The product ideal `IJ` lies in a Serre ideal `P` iff this set is inside `P`.
pub fn product_support(ring: &ZPlusRing, left: &BasisSet, right: &BasisSet) -> BasisSet {
    ring.set_product_support(left, right)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("cannot take the quotient by the whole ring")]
    ImproperIdeal,
    #[error("subset is not a two-sided Serre ideal")]
    NotAnIdeal(IdealViolation),
    #[error(transparent)]
    Validation(#[from] ValidationReport),
}

/// `R / I` on the surviving basis `Γ \ I`, keeping the structure constants of
/// surviving basis elements. The truncated table is re-validated.
pub fn quotient_ring(ring: &ZPlusRing, ideal: &BasisSet) -> Result<ZPlusRing, QuotientError> {
    if ideal.is_full() {
        return Err(QuotientError::ImproperIdeal);
    }
    if let Verdict::Fails(v) = is_serre_ideal(ring, ideal, Side::TwoSided) {
        return Err(QuotientError::NotAnIdeal(v));
    }
    let name = if ideal.is_empty() {
        String::from(ring.name())
    } else {
        let killed: Vec<&str> = ring.subset_labels(ideal);
        alloc::format!("{}/({})", ring.name(), killed.join(","))
    };
    Ok(ring.restrict(name, &ideal.complement())?)
}
