//! Block rings as Grothendieck rings of finite abelian 2-categories.
//!
//! A completely prime Serre ideal of a block ring with units is determined by
//! one object `A` and a completely prime ideal `Q` of the corner ring on the
//! block `(A, A)`: it is everything outside `(A, A)` together with `Q`, and
//! such a pair gives a completely prime ideal exactly when every round trip
//! `A -> B -> A` through another object composes into `Q`.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::ideals::{enumerate_serre_ideals, Side};
use crate::spectrum::completely_prime_fast;
use crate::verdict::Verdict;
use crate::zring::{BasisTooLarge, Blocks, EnumerationGuard, ValidationError, ValidationReport, ZPlusRing};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TwoCatError {
    #[error("ring has no block structure")]
    MissingBlocks,
    #[error("ring has no declared units")]
    MissingUnits,
    #[error(transparent)]
    BasisTooLarge(#[from] BasisTooLarge),
    #[error(transparent)]
    Corner(#[from] ValidationReport),
}

/// Object-indexed view of a block ring.
#[derive(Clone, Debug)]
pub struct BlockRingView<'r> {
    ring: &'r ZPlusRing,
    blocks: &'r Blocks,
}

impl<'r> BlockRingView<'r> {
    pub fn new(ring: &'r ZPlusRing) -> Result<Self, TwoCatError> {
        let blocks = ring.blocks().ok_or(TwoCatError::MissingBlocks)?;
        Ok(BlockRingView { ring, blocks })
    }

    pub fn objects(&self) -> &[String] {
        self.blocks.objects()
    }

    /// Basis classes of 1-morphisms `source -> target`.
    pub fn block(&self, source: usize, target: usize) -> BasisSet {
        self.blocks.members(source, target, self.ring.len())
    }

    /// The multiring (one-object) ring on `block(A, A)`.
    pub fn corner_ring(&self, object: usize) -> Result<ZPlusRing, ValidationReport> {
        let name = alloc::format!("{}[{}]", self.ring.name(), self.objects()[object]);
        self.ring.restrict(name, &self.block(object, object))
    }

    /// Checks that round trips through every other object land in `q`:
    /// `block(B, A) · block(A, B) ⊆ q` for all `B ≠ A`.
    pub fn round_trips_inside(&self, object: usize, q: &BasisSet) -> bool {
        (0..self.objects().len()).filter(|b| *b != object).all(|b| {
            self.ring
                .set_product_support(&self.block(b, object), &self.block(object, b))
                .is_subset(q)
        })
    }
}

/// `Σ_{u∈units} b_u` is a two-sided identity; on failure returns the first
/// basis element where it is not.
pub fn check_unit_decomposition(ring: &ZPlusRing, units: &BasisSet) -> Verdict<usize> {
    match ring.unit_decomposition_failure(units) {
        None => Verdict::Holds,
        Some(ValidationError::UnitViolation { witness, .. }) => Verdict::Fails(witness),
        Some(_) => unreachable!("unit check only reports unit violations"),
    }
}

/// Completely prime Serre ideals assembled from corner rings, in canonical order.
pub fn classify_completely_primes(
    ring: &ZPlusRing,
    guard: EnumerationGuard,
) -> Result<Vec<BasisSet>, TwoCatError> {
    let view = BlockRingView::new(ring)?;
    if ring.units().is_none() {
        return Err(TwoCatError::MissingUnits);
    }
    let mut out = Vec::new();
    for object in 0..view.objects().len() {
        let diagonal = view.block(object, object);
        if diagonal.is_empty() {
            continue;
        }
        let corner = view.corner_ring(object)?;
        let embed: Vec<usize> = diagonal.to_vec();
        for q in enumerate_serre_ideals(&corner, Side::TwoSided, guard)? {
            if q.members.is_full() || !completely_prime_fast(&corner, &q.members).holds() {
                continue;
            }
            let q_in_ring = BasisSet::from_indices(ring.len(), q.members.iter().map(|i| embed[i]));
            if !view.round_trips_inside(object, &q_in_ring) {
                continue;
            }
            out.push(diagonal.complement().union(&q_in_ring));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Reference route: every proper two-sided Serre ideal that passes the
/// completely-prime test.
pub fn completely_primes_brute_force(
    ring: &ZPlusRing,
    guard: EnumerationGuard,
) -> Result<Vec<BasisSet>, BasisTooLarge> {
    Ok(enumerate_serre_ideals(ring, Side::TwoSided, guard)?
        .into_iter()
        .map(|i| i.members)
        .filter(|p| !p.is_full() && completely_prime_fast(ring, p).holds())
        .collect())
}

/// No two basis classes have a zero product: the ring-level domain property.
pub fn is_domain(ring: &ZPlusRing) -> Verdict<(usize, usize)> {
    completely_prime_fast(ring, &ring.empty_set())
}
