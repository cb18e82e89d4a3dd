//! Serre prime, completely prime and semiprime ideals; the Serre spectrum.
//!
//! Every predicate has a fast basis-level route. Prime and semiprime
//! additionally have a definitional route that quantifies over the whole
//! two-sided Serre ideal lattice. The two routes are meant to be checked
//! against each other.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::ideals::{enumerate_serre_ideals, is_serre_ideal, serre_closure, IdealViolation, Side};
use crate::verdict::Verdict;
use crate::zring::{support_of, BasisTooLarge, EnumerationGuard, RingElement, ZPlusRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeMode {
    /// Basis-level test on `b_α R b_β`.
    Fast,
    /// Quantifies over pairs (or powers) of Serre ideals.
    Definitional,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("subset is not a two-sided Serre ideal")]
    NotAnIdeal(IdealViolation),
    #[error("ideal is the whole ring")]
    ImproperIdeal,
    #[error(transparent)]
    BasisTooLarge(#[from] BasisTooLarge),
    #[error("no Serre prime ideal contains the given ideal")]
    NoPrimeOver,
    #[error("a power of the generator lies in the ideal")]
    GeneratorInsideIdeal { power: usize },
    #[error("multiplicative set generator must be a nonzero positive element")]
    InvalidGenerator,
}

/// The two-sided Serre ideal lattice of a ring, in canonical order.
#[derive(Clone, Debug)]
pub struct SerreLattice<'r> {
    ring: &'r ZPlusRing,
    ideals: Vec<BasisSet>,
}

impl<'r> SerreLattice<'r> {
    pub fn new(ring: &'r ZPlusRing, guard: EnumerationGuard) -> Result<Self, BasisTooLarge> {
        let ideals = enumerate_serre_ideals(ring, Side::TwoSided, guard)?
            .into_iter()
            .map(|i| i.members)
            .collect();
        Ok(SerreLattice { ring, ideals })
    }

    pub fn ring(&self) -> &'r ZPlusRing {
        self.ring
    }

    pub fn ideals(&self) -> &[BasisSet] {
        &self.ideals
    }

    pub fn proper_ideals(&self) -> impl Iterator<Item = &BasisSet> {
        self.ideals.iter().filter(|i| !i.is_full())
    }
}

/// Why a prime test failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeWitness {
    /// `α, β ∉ P` with `b_α R b_β ⊆ P`.
    BasisPair(usize, usize),
    /// Serre ideals `I, J ⊄ P` with `IJ ⊆ P`.
    IdealPair(BasisSet, BasisSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiprimeWitness {
    /// `α ∉ Q` with `b_α R b_α ⊆ Q`.
    Basis(usize),
    /// The intersection of the primes containing `Q` is strictly larger than
    /// `Q`. `primes_over == 0` means no prime contains `Q` at all.
    Intersection { intersection: BasisSet, primes_over: usize },
}

fn check_proper_ideal(ring: &ZPlusRing, p: &BasisSet) -> Result<(), SpectrumError> {
    if let Verdict::Fails(v) = is_serre_ideal(ring, p, Side::TwoSided) {
        return Err(SpectrumError::NotAnIdeal(v));
    }
    if p.is_full() {
        return Err(SpectrumError::ImproperIdeal);
    }
    Ok(())
}

/// Pairs of basis elements outside `p`: squares `(α, α)` first, then all
/// pairs in basis order. Witnesses therefore prefer a single offending element.
fn outside_pairs(p: &BasisSet) -> impl Iterator<Item = (usize, usize)> + '_ {
    let outside = p.complement();
    let squares: Vec<(usize, usize)> = outside.iter().map(|a| (a, a)).collect();
    let mixed: Vec<(usize, usize)> = outside
        .iter()
        .flat_map(|a| outside.iter().filter(move |b| *b != a).map(move |b| (a, b)))
        .collect();
    squares.into_iter().chain(mixed)
}

/// Fast prime test: for all `α, β ∉ P`, `b_α R b_β ⊄ P`.
pub fn prime_fast(ring: &ZPlusRing, p: &BasisSet) -> Verdict<(usize, usize)> {
    outside_pairs(p).find(|(a, b)| ring.triple_support(*a, *b).is_subset(p)).into()
}

/// Definitional prime test: no Serre ideals `I, J ⊄ P` with `IJ ⊆ P`.
pub fn prime_definitional(lattice: &SerreLattice<'_>, p: &BasisSet) -> Verdict<(BasisSet, BasisSet)> {
    let ring = lattice.ring;
    let escaping: Vec<&BasisSet> = lattice.ideals.iter().filter(|i| !i.is_subset(p)).collect();
    for i in &escaping {
        for j in &escaping {
            if ring.set_product_support(i, j).is_subset(p) {
                return Verdict::Fails(((*i).clone(), (*j).clone()));
            }
        }
    }
    Verdict::Holds
}

/// Decides Serre primality of a proper two-sided Serre ideal.
pub fn is_serre_prime(
    ring: &ZPlusRing,
    p: &BasisSet,
    mode: PrimeMode,
    guard: EnumerationGuard,
) -> Result<Verdict<PrimeWitness>, SpectrumError> {
    check_proper_ideal(ring, p)?;
    Ok(match mode {
        PrimeMode::Fast => prime_fast(ring, p).map(|(a, b)| PrimeWitness::BasisPair(a, b)),
        PrimeMode::Definitional => {
            let lattice = SerreLattice::new(ring, guard)?;
            prime_definitional(&lattice, p).map(|(i, j)| PrimeWitness::IdealPair(i, j))
        }
    })
}

/// Ideals witnessing a failed fast prime test: `⟨P ∪ {α}⟩` and `⟨P ∪ {β}⟩`.
pub fn witness_ideals(ring: &ZPlusRing, p: &BasisSet, a: usize, b: usize) -> (BasisSet, BasisSet) {
    let mut ga = p.clone();
    ga.insert(a);
    let mut gb = p.clone();
    gb.insert(b);
    (
        serre_closure(ring, &ga, Side::TwoSided).members,
        serre_closure(ring, &gb, Side::TwoSided).members,
    )
}

/// Completely prime: for all `α, β ∉ P`, `support(b_α b_β) ⊄ P`. A zero
/// product of two basis elements outside `P` refutes.
pub fn completely_prime_fast(ring: &ZPlusRing, p: &BasisSet) -> Verdict<(usize, usize)> {
    outside_pairs(p).find(|(a, b)| ring.product_support(*a, *b).is_subset(p)).into()
}

pub fn is_completely_prime(ring: &ZPlusRing, p: &BasisSet) -> Result<Verdict<(usize, usize)>, SpectrumError> {
    check_proper_ideal(ring, p)?;
    Ok(completely_prime_fast(ring, p))
}

/// Fast semiprime test: for all `α ∉ Q`, `b_α R b_α ⊄ Q`.
pub fn semiprime_fast(ring: &ZPlusRing, q: &BasisSet) -> Verdict<usize> {
    q.complement().iter().find(|a| ring.triple_support(*a, *a).is_subset(q)).into()
}

/// Definitional semiprime test: `Q` equals the intersection of the primes
/// containing it.
pub fn semiprime_definitional(ring: &ZPlusRing, primes: &[BasisSet], q: &BasisSet) -> Verdict<(BasisSet, usize)> {
    let mut intersection = ring.full_set();
    let mut count = 0;
    for p in primes.iter().filter(|p| q.is_subset(p)) {
        intersection.intersect_with(p);
        count += 1;
    }
    if &intersection == q {
        Verdict::Holds
    } else {
        Verdict::Fails((intersection, count))
    }
}

pub fn is_semiprime(
    ring: &ZPlusRing,
    q: &BasisSet,
    mode: PrimeMode,
    guard: EnumerationGuard,
) -> Result<Verdict<SemiprimeWitness>, SpectrumError> {
    check_proper_ideal(ring, q)?;
    Ok(match mode {
        PrimeMode::Fast => semiprime_fast(ring, q).map(SemiprimeWitness::Basis),
        PrimeMode::Definitional => {
            let lattice = SerreLattice::new(ring, guard)?;
            let primes = primes_in(&lattice);
            semiprime_definitional(ring, &primes, q).map(|(intersection, primes_over)| {
                SemiprimeWitness::Intersection { intersection, primes_over }
            })
        }
    })
}

/// All Serre primes of the lattice (fast route), in canonical order.
pub fn primes_in(lattice: &SerreLattice<'_>) -> Vec<BasisSet> {
    lattice
        .proper_ideals()
        .filter(|p| prime_fast(lattice.ring, p).holds())
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEntry {
    pub ideal: BasisSet,
    pub completely_prime: bool,
    pub semiprime: bool,
}

/// The Serre spectrum with per-prime flags and the inclusion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub primes: Vec<PrimeEntry>,
    /// `(i, j)` with `primes[i] ⊊ primes[j]`.
    pub inclusions: Vec<(usize, usize)>,
}

impl SpectrumReport {
    pub fn ideals(&self) -> Vec<BasisSet> {
        self.primes.iter().map(|p| p.ideal.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }
}

pub fn serre_spec(ring: &ZPlusRing, guard: EnumerationGuard) -> Result<SpectrumReport, SpectrumError> {
    let lattice = SerreLattice::new(ring, guard)?;
    Ok(spectrum_of(&lattice))
}

pub fn spectrum_of(lattice: &SerreLattice<'_>) -> SpectrumReport {
    let ring = lattice.ring;
    let primes: Vec<PrimeEntry> = primes_in(lattice)
        .into_iter()
        .map(|ideal| {
            debug_assert!(prime_definitional(lattice, &ideal).holds());
            PrimeEntry {
                completely_prime: completely_prime_fast(ring, &ideal).holds(),
                // always true for a prime; computed rather than asserted
                semiprime: semiprime_fast(ring, &ideal).holds(),
                ideal,
            }
        })
        .collect();
    let mut inclusions = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        for (j, q) in primes.iter().enumerate() {
            if i != j && p.ideal.is_subset(&q.ideal) {
                inclusions.push((i, j));
            }
        }
    }
    SpectrumReport { primes, inclusions }
}

/// Minimal primes over an ideal plus a product chain of them inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPrimes {
    pub minimal: Vec<BasisSet>,
    /// Minimal primes (with repetition) whose iterated product lies in the ideal.
    pub chain: Vec<BasisSet>,
}

/// Support of the iterated product `P_1 P_2 ⋯ P_m`.
pub fn chain_product_support(ring: &ZPlusRing, chain: &[BasisSet]) -> Option<BasisSet> {
    let (first, rest) = chain.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, p| ring.set_product_support(&acc, p)))
}

pub fn minimal_primes_over(
    ring: &ZPlusRing,
    ideal: &BasisSet,
    guard: EnumerationGuard,
) -> Result<MinimalPrimes, SpectrumError> {
    check_proper_ideal(ring, ideal)?;
    let lattice = SerreLattice::new(ring, guard)?;
    let primes = primes_in(&lattice);
    let over: Vec<&BasisSet> = primes.iter().filter(|p| ideal.is_subset(p)).collect();
    let minimal: Vec<BasisSet> = over
        .iter()
        .filter(|p| !over.iter().any(|q| q != *p && q.is_subset(p)))
        .map(|p| (*p).clone())
        .collect();
    if minimal.is_empty() {
        return Err(SpectrumError::NoPrimeOver);
    }
    let mut memo = BTreeMap::new();
    let raw = prime_chain(ring, ideal, &mut memo).ok_or(SpectrumError::NoPrimeOver)?;
    // shrink each chain member to a minimal prime over `ideal` below it; the
    // product only gets smaller
    let chain = raw
        .into_iter()
        .map(|p| {
            minimal
                .iter()
                .find(|m| m.is_subset(&p))
                .cloned()
                .expect("every prime over the ideal contains a minimal one")
        })
        .collect();
    Ok(MinimalPrimes { minimal, chain })
}

/// Primes containing `ideal` whose product lies in `ideal`, found by splitting
/// a non-prime ideal `I` into `J, K ⊋ I` with `JK ⊆ I`.
fn prime_chain(
    ring: &ZPlusRing,
    ideal: &BasisSet,
    memo: &mut BTreeMap<BasisSet, Option<Vec<BasisSet>>>,
) -> Option<Vec<BasisSet>> {
    if let Some(done) = memo.get(ideal) {
        return done.clone();
    }
    let result = if prime_fast(ring, ideal).holds() {
        Some(alloc::vec![ideal.clone()])
    } else {
        split_pairs(ring, ideal).into_iter().find_map(|(j, k)| {
            let left = prime_chain(ring, &j, memo)?;
            let right = prime_chain(ring, &k, memo)?;
            Some(left.into_iter().chain(right).collect())
        })
    };
    memo.insert(ideal.clone(), result.clone());
    result
}

/// Proper splitting pairs `(⟨I ∪ α⟩, ⟨I ∪ β⟩)` for the fast-prime violations
/// `b_α R b_β ⊆ I`, in basis order.
fn split_pairs(ring: &ZPlusRing, ideal: &BasisSet) -> Vec<(BasisSet, BasisSet)> {
    let mut out = Vec::new();
    for (a, b) in outside_pairs(ideal) {
        if ring.triple_support(a, b).is_subset(ideal) {
            let (j, k) = witness_ideals(ring, ideal, a, b);
            if !j.is_full() && !k.is_full() && !out.contains(&(j.clone(), k.clone())) {
                out.push((j, k));
            }
        }
    }
    out
}

/// The power orbit `{g, g², …}` of a nonzero positive element, tracked through
/// the eventually periodic sequence of supports
/// `S_1 = supp g`, `S_{k+1} = ∪_{α∈S_k} supp(b_α g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeSet {
    generator: RingElement,
    /// Distinct supports `S_1, …, S_m` in order of first appearance.
    orbit: Vec<BasisSet>,
    /// `S_{m+1} = S_{cycle_start + 1}` (0-based index into `orbit`).
    cycle_start: usize,
}

impl MultiplicativeSet {
    pub fn new(ring: &ZPlusRing, generator: RingElement) -> Result<Self, SpectrumError> {
        if generator.is_zero() || !generator.is_positive_part() {
            return Err(SpectrumError::InvalidGenerator);
        }
        let g = support_of(ring.len(), &generator);
        let mut orbit: Vec<BasisSet> = alloc::vec![g.clone()];
        loop {
            let next = ring.set_product_support(orbit.last().expect("nonempty orbit"), &g);
            if let Some(pos) = orbit.iter().position(|s| *s == next) {
                return Ok(MultiplicativeSet { generator, orbit, cycle_start: pos });
            }
            orbit.push(next);
        }
    }

    pub fn generator(&self) -> &RingElement {
        &self.generator
    }

    pub fn orbit(&self) -> &[BasisSet] {
        &self.orbit
    }

    pub fn cycle_start(&self) -> usize {
        self.cycle_start
    }

    /// Smallest `k ≥ 1` with `g^k ∈ K`, if any. A zero power lies in every ideal.
    pub fn first_power_inside(&self, ideal: &BasisSet) -> Option<usize> {
        self.orbit.iter().position(|s| s.is_subset(ideal)).map(|k| k + 1)
    }

    pub fn is_disjoint_from(&self, ideal: &BasisSet) -> bool {
        self.first_power_inside(ideal).is_none()
    }
}

/// Maximal Serre ideals containing `ideal` and avoiding every power of the
/// generator; each is Serre prime.
pub fn maximal_disjoint_primes(
    ring: &ZPlusRing,
    m: &MultiplicativeSet,
    ideal: &BasisSet,
    guard: EnumerationGuard,
) -> Result<Vec<BasisSet>, SpectrumError> {
    if let Verdict::Fails(v) = is_serre_ideal(ring, ideal, Side::TwoSided) {
        return Err(SpectrumError::NotAnIdeal(v));
    }
    if let Some(power) = m.first_power_inside(ideal) {
        return Err(SpectrumError::GeneratorInsideIdeal { power });
    }
    let lattice = SerreLattice::new(ring, guard)?;
    let candidates: Vec<&BasisSet> = lattice
        .ideals
        .iter()
        .filter(|k| ideal.is_subset(k) && m.is_disjoint_from(k))
        .collect();
    Ok(candidates
        .iter()
        .filter(|k| !candidates.iter().any(|other| other != *k && k.is_subset(other)))
        .map(|k| (*k).clone())
        .collect())
}
