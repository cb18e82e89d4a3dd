//! Exhaustive cross-checks between independent routes to the same answer.
//!
//! Each check scans a whole ring (all ideals, pairs of ideals, generator
//! subsets, ...) and reports the number of cases examined and the first
//! disagreement, described with basis labels.

use alloc::string::String;
use alloc::vec::Vec;

use crate::basis_set::BasisSet;
use crate::ideals::{is_serre_ideal, quotient_ring, serre_closure, Side};
use crate::spectrum::{
    chain_product_support, completely_prime_fast, maximal_disjoint_primes, minimal_primes_over,
    prime_definitional, prime_fast, primes_in, semiprime_definitional, semiprime_fast, spectrum_of,
    MultiplicativeSet, SerreLattice, SpectrumError,
};
use crate::topology::{build_topology, zariski_closed_set, TopologyStyle};
use crate::twocat::{classify_completely_primes, completely_primes_brute_force, is_domain};
use crate::zring::{BasisTooLarge, EnumerationGuard, RingElement, ZPlusRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failure: None }
    }

    /// Counts a case; keeps the first failure message.
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome { name: self.name, cases: self.cases, failure: self.failure }
    }
}

fn show(ring: &ZPlusRing, set: &BasisSet) -> String {
    alloc::format!("{{{}}}", ring.subset_labels(set).join(","))
}

/// Closure laws, fixpoints vs enumeration, intersections, products and quotients.
pub fn check_ideal_lattice(lattice: &SerreLattice<'_>) -> CheckOutcome {
    let ring = lattice.ring();
    let n = ring.len();
    let mut t = Tally::new("ideal lattice");
    let mut fixpoints = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s = BasisSet::from_mask(n, mask);
        let c = serre_closure(ring, &s, Side::TwoSided).members;
        t.case(s.is_subset(&c), || alloc::format!("closure of {} is not extensive", show(ring, &s)));
        let cc = serre_closure(ring, &c, Side::TwoSided).members;
        t.case(cc == c, || alloc::format!("closure of {} is not idempotent", show(ring, &s)));
        for x in s.complement().iter() {
            let mut bigger = s.clone();
            bigger.insert(x);
            let cb = serre_closure(ring, &bigger, Side::TwoSided).members;
            t.case(c.is_subset(&cb), || alloc::format!("closure not monotone at {}", show(ring, &s)));
        }
        if c == s {
            fixpoints.push(s);
        }
    }
    fixpoints.sort();
    t.case(fixpoints == lattice.ideals(), || String::from("closure fixpoints differ from the enumeration"));
    for i in lattice.ideals() {
        for j in lattice.ideals() {
            let meet = i.intersection(j);
            t.case(is_serre_ideal(ring, &meet, Side::TwoSided).holds(), || {
                alloc::format!("{} ∩ {} is not an ideal", show(ring, i), show(ring, j))
            });
            t.case(ring.set_product_support(i, j).is_subset(&meet), || {
                alloc::format!("product of {} and {} escapes the intersection", show(ring, i), show(ring, j))
            });
        }
    }
    for i in lattice.proper_ideals() {
        let q = quotient_ring(ring, i);
        t.case(q.is_ok(), || alloc::format!("quotient by {} fails validation", show(ring, i)));
    }
    t.done()
}

/// Fast and definitional prime tests agree; completely prime implies prime.
pub fn check_prime_modes(lattice: &SerreLattice<'_>) -> CheckOutcome {
    let ring = lattice.ring();
    let mut t = Tally::new("prime: fast = definitional");
    for p in lattice.proper_ideals() {
        let fast = prime_fast(ring, p).holds();
        let def = prime_definitional(lattice, p).holds();
        t.case(fast == def, || alloc::format!("{}: fast {fast}, definitional {def}", show(ring, p)));
        if completely_prime_fast(ring, p).holds() {
            t.case(fast, || alloc::format!("{} completely prime but not prime", show(ring, p)));
        }
    }
    t.done()
}

/// Fast semiprime agrees with "intersection of the primes containing it".
pub fn check_semiprime_modes(lattice: &SerreLattice<'_>) -> CheckOutcome {
    let ring = lattice.ring();
    let primes = primes_in(lattice);
    let mut t = Tally::new("semiprime: fast = intersection of primes");
    for q in lattice.proper_ideals() {
        let fast = semiprime_fast(ring, q).holds();
        let def = semiprime_definitional(ring, &primes, q).holds();
        t.case(fast == def, || alloc::format!("{}: fast {fast}, intersection {def}", show(ring, q)));
    }
    t.done()
}

fn power_support(ring: &ZPlusRing, i: &BasisSet, n: usize) -> BasisSet {
    (1..n).fold(i.clone(), |acc, _| ring.set_product_support(&acc, i))
}

/// Semiprime iff no ideal `I ⊄ Q` has `I^2 ⊆ Q`, and semiprime `Q` contains
/// every ideal with `I^n ⊆ Q` for `n ≤ max_power`.
pub fn check_semiprime_powers(lattice: &SerreLattice<'_>, max_power: usize) -> CheckOutcome {
    let ring = lattice.ring();
    let mut t = Tally::new("semiprime: square and power characterizations");
    for q in lattice.proper_ideals() {
        let semiprime = semiprime_fast(ring, q).holds();
        let square_witness = lattice
            .ideals()
            .iter()
            .find(|i| !i.is_subset(q) && ring.set_product_support(i, i).is_subset(q));
        t.case(semiprime == square_witness.is_none(), || {
            alloc::format!("{}: semiprime {semiprime}, square witness {:?}", show(ring, q), square_witness)
        });
        if !semiprime {
            continue;
        }
        for i in lattice.ideals() {
            for n in 1..=max_power {
                if power_support(ring, i, n).is_subset(q) {
                    t.case(i.is_subset(q), || {
                        alloc::format!("{}^{n} lies in semiprime {} but {} does not", show(ring, i), show(ring, q), show(ring, i))
                    });
                }
            }
        }
    }
    t.done()
}

/// Minimal primes agree with brute force and carry a verified product chain.
pub fn check_minimal_primes(lattice: &SerreLattice<'_>, guard: EnumerationGuard) -> CheckOutcome {
    let ring = lattice.ring();
    let primes = primes_in(lattice);
    let mut t = Tally::new("minimal primes and product chains");
    for i in lattice.proper_ideals() {
        let over: Vec<&BasisSet> = primes.iter().filter(|p| i.is_subset(p)).collect();
        let mut minimal: Vec<BasisSet> = over
            .iter()
            .filter(|p| !over.iter().any(|q| q != *p && q.is_subset(p)))
            .map(|p| (*p).clone())
            .collect();
        minimal.sort();
        match minimal_primes_over(ring, i, guard) {
            Ok(found) => {
                t.case(found.minimal == minimal, || {
                    alloc::format!("minimal primes over {} differ from brute force", show(ring, i))
                });
                let product = chain_product_support(ring, &found.chain);
                t.case(product.is_some_and(|s| s.is_subset(i)), || {
                    alloc::format!("chain product over {} escapes the ideal", show(ring, i))
                });
                t.case(found.chain.iter().all(|p| minimal.contains(p)), || {
                    alloc::format!("chain over {} uses a non-minimal prime", show(ring, i))
                });
            }
            Err(SpectrumError::NoPrimeOver) => {
                t.case(minimal.is_empty(), || alloc::format!("no chain found over {}", show(ring, i)));
            }
            Err(e) => t.case(false, || alloc::format!("{}: {e}", show(ring, i))),
        }
    }
    t.done()
}

/// Every generator `Σ_{α∈S} b_α` over a nonempty subset `S` (single basis
/// elements only when the basis exceeds `subset_limit`).
fn basis_generators(ring: &ZPlusRing, subset_limit: usize) -> Vec<BasisSet> {
    let n = ring.len();
    if n <= subset_limit {
        (1u64..(1u64 << n)).map(|m| BasisSet::from_mask(n, m)).collect()
    } else {
        (0..n).map(|a| BasisSet::singleton(n, a)).collect()
    }
}

/// Maximal ideals avoiding a multiplicative set are prime in both modes.
pub fn check_multiplicative_sets(
    lattice: &SerreLattice<'_>,
    guard: EnumerationGuard,
    subset_limit: usize,
) -> CheckOutcome {
    let ring = lattice.ring();
    let empty = ring.empty_set();
    let mut t = Tally::new("maximal ideals avoiding multiplicative sets");
    for g in basis_generators(ring, subset_limit) {
        let m = MultiplicativeSet::new(ring, RingElement::sum_of(&g)).expect("positive generator");
        if !m.is_disjoint_from(&empty) {
            continue;
        }
        match maximal_disjoint_primes(ring, &m, &empty, guard) {
            Ok(found) => {
                t.case(!found.is_empty(), || alloc::format!("nothing avoids powers of {}", show(ring, &g)));
                for k in &found {
                    t.case(prime_fast(ring, k).holds() && prime_definitional(lattice, k).holds(), || {
                        alloc::format!("{} maximal avoiding {} but not prime", show(ring, k), show(ring, &g))
                    });
                }
            }
            Err(e) => t.case(false, || alloc::format!("{}: {e}", show(ring, &g))),
        }
    }
    t.done()
}

/// Topology axioms for both styles and the Zariski identities.
pub fn check_topology(lattice: &SerreLattice<'_>) -> CheckOutcome {
    let ring = lattice.ring();
    let spec = spectrum_of(lattice);
    let space = spec.ideals();
    let mut t = Tally::new("topology axioms and Zariski identities");
    for style in [TopologyStyle::Zariski, TopologyStyle::Balmer] {
        let family = build_topology(lattice, &spec, style);
        t.case(family.satisfies_axioms(), || alloc::format!("{} family is not a topology", style.as_str()));
        if style == TopologyStyle::Zariski {
            for (k, p) in space.iter().enumerate() {
                t.case(family.point_closure(k) == zariski_closed_set(&space, p), || {
                    alloc::format!("closure of {} is not V(P)", show(ring, p))
                });
            }
        }
    }
    let v = |i: &BasisSet| zariski_closed_set(&space, i);
    let ideals = lattice.ideals();
    for i in ideals {
        for j in ideals {
            let product = serre_closure(ring, &ring.set_product_support(i, j), Side::TwoSided).members;
            t.case(v(i).union(&v(j)) == v(&product), || {
                alloc::format!("V({}) ∪ V({}) ≠ V(product)", show(ring, i), show(ring, j))
            });
            for k in ideals {
                let joined = serre_closure(ring, &i.union(j).union(k), Side::TwoSided).members;
                t.case(v(i).intersection(&v(j)).intersection(&v(k)) == v(&joined), || {
                    alloc::format!("intersection identity fails at {}, {}, {}", show(ring, i), show(ring, j), show(ring, k))
                });
            }
        }
        // V(I) is the union of V(P) over the minimal primes P over I
        let over: Vec<&BasisSet> = space.iter().filter(|p| i.is_subset(p)).collect();
        let mut union = BasisSet::empty(space.len());
        for p in over.iter().filter(|p| !over.iter().any(|q| q != *p && q.is_subset(p))) {
            union.union_with(&v(p));
        }
        t.case(union == v(i), || alloc::format!("V({}) is not generated by minimal primes", show(ring, i)));
    }
    t.done()
}

/// Block classification against brute force. Rings without blocks or units
/// are skipped with zero cases.
pub fn check_twocat(ring: &ZPlusRing, guard: EnumerationGuard) -> Result<CheckOutcome, BasisTooLarge> {
    let mut t = Tally::new("completely primes: block classification = brute force");
    if ring.blocks().is_some() && ring.units().is_some() {
        let brute = completely_primes_brute_force(ring, guard)?;
        let classified = classify_completely_primes(ring, guard);
        t.case(classified.as_ref() == Ok(&brute), || alloc::format!("classified {:?}, brute force {:?}", classified, brute));
    }
    Ok(t.done())
}

/// Quotients by completely prime ideals are domains.
pub fn check_completely_prime_quotients(lattice: &SerreLattice<'_>) -> CheckOutcome {
    let ring = lattice.ring();
    let mut t = Tally::new("quotients by completely primes are domains");
    for p in lattice.proper_ideals().filter(|p| completely_prime_fast(ring, p).holds()) {
        match quotient_ring(ring, p) {
            Ok(q) => t.case(is_domain(&q).holds(), || alloc::format!("{}: quotient has zero products", show(ring, p))),
            Err(e) => t.case(false, || alloc::format!("{}: {e}", show(ring, p))),
        }
    }
    t.done()
}

/// All exhaustive checks on one ring.
pub fn run_all(ring: &ZPlusRing, guard: EnumerationGuard) -> Result<Vec<CheckOutcome>, BasisTooLarge> {
    let lattice = SerreLattice::new(ring, guard)?;
    Ok(alloc::vec![
        check_ideal_lattice(&lattice),
        check_prime_modes(&lattice),
        check_semiprime_modes(&lattice),
        check_semiprime_powers(&lattice, 4),
        check_minimal_primes(&lattice, guard),
        check_multiplicative_sets(&lattice, guard, 8),
        check_topology(&lattice),
        check_twocat(ring, guard)?,
        check_completely_prime_quotients(&lattice),
    ])
}
