use zplus_core::gallery::{gallery, load_gallery};
use zplus_core::ideals::{enumerate_serre_ideals, Side};
use zplus_core::oracle;
use zplus_core::spectrum::{serre_spec, SerreLattice};
use zplus_core::twocat::classify_completely_primes;
use zplus_core::EnumerationGuard;

fn names(ring: &zplus_core::ZPlusRing, sets: &[zplus_core::BasisSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| ring.subset_labels(s).into_iter().map(String::from).collect()).collect()
}

#[test]
fn expected_results_reproduced() {
    let guard = EnumerationGuard::default();
    for entry in gallery() {
        let ring = &entry.ring;
        if let Some(count) = entry.expected.ideal_count {
            let ideals = enumerate_serre_ideals(ring, Side::TwoSided, guard).unwrap();
            assert_eq!(ideals.len(), count, "{}", entry.name);
        }
        if let Some(spec) = &entry.expected.spectrum {
            let report = serre_spec(ring, guard).unwrap();
            assert_eq!(&names(ring, &report.ideals()), spec, "{}", entry.name);
        }
        if let Some(cprimes) = &entry.expected.completely_primes {
            let found = classify_completely_primes(ring, guard).unwrap();
            assert_eq!(&names(ring, &found), cprimes, "{}", entry.name);
        }
    }
}

#[test]
fn unital_rings_have_nonempty_spectrum() {
    for entry in gallery().into_iter().filter(|e| e.ring.units().is_some()) {
        assert!(!serre_spec(&entry.ring, EnumerationGuard::default()).unwrap().is_empty(), "{}", entry.name);
    }
}

#[test]
fn every_oracle_check_passes_on_the_gallery() {
    for entry in gallery() {
        for outcome in oracle::run_all(&entry.ring, EnumerationGuard::default()).unwrap() {
            assert!(outcome.passed(), "{} / {}: {:?}", entry.name, outcome.name, outcome.failure);
        }
    }
}

#[test]
fn one_sided_lattices_contain_the_two_sided_one() {
    for entry in gallery() {
        let g = EnumerationGuard::default();
        let two = enumerate_serre_ideals(&entry.ring, Side::TwoSided, g).unwrap();
        for side in [Side::Left, Side::Right] {
            let one: Vec<_> = enumerate_serre_ideals(&entry.ring, side, g)
                .unwrap()
                .into_iter()
                .map(|i| i.members)
                .collect();
            assert!(two.iter().all(|i| one.contains(&i.members)), "{}", entry.name);
        }
    }
}

#[test]
fn larger_verlinde_rings_stay_simple() {
    let entry = load_gallery("verlinde-sl2-9").unwrap();
    let lattice = SerreLattice::new(&entry.ring, EnumerationGuard::default()).unwrap();
    assert_eq!(lattice.ideals().len(), 2);
}
