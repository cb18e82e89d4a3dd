//! Seeded randomized checks on element arithmetic.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zplus_core::oracle::CheckOutcome;
use zplus_core::zring::{multiply_elements, support_of, RingElement};
use zplus_core::{CoeffMode, Laurent, ZPlusRing};

pub const DEFAULT_SEED: u64 = 20_240_531;

fn random_element(rng: &mut StdRng, ring: &ZPlusRing, positive: bool) -> RingElement {
    let terms = rng.gen_range(1..=3);
    RingElement::from_terms((0..terms).map(|_| {
        let index = rng.gen_range(0..ring.len());
        let value: i64 = if positive { rng.gen_range(1..=3) } else { rng.gen_range(-3..=3) };
        let exponent = if ring.mode() == CoeffMode::Laurent { rng.gen_range(-2..=2) } else { 0 };
        (index, Laurent::monomial(value, exponent))
    }))
}

/// `(xy)z = x(yz)` on random signed elements.
pub fn check_random_associativity(ring: &ZPlusRing, seed: u64, samples: usize) -> CheckOutcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failure = None;
    for _ in 0..samples {
        let (x, y, z) = (
            random_element(&mut rng, ring, false),
            random_element(&mut rng, ring, false),
            random_element(&mut rng, ring, false),
        );
        let left = multiply_elements(ring, &multiply_elements(ring, &x, &y), &z);
        let right = multiply_elements(ring, &x, &multiply_elements(ring, &y, &z));
        if left != right {
            failure = Some(format!("({x:?} * {y:?}) * {z:?} differs"));
            break;
        }
    }
    CheckOutcome { name: "random associativity", cases: samples, failure }
}

/// `supp(xy) = supp(x) · supp(y)` on random positive elements.
pub fn check_support_homomorphism(ring: &ZPlusRing, seed: u64, samples: usize) -> CheckOutcome {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37_79b9);
    let n = ring.len();
    let mut failure = None;
    for _ in 0..samples {
        let (x, y) = (random_element(&mut rng, ring, true), random_element(&mut rng, ring, true));
        let product = support_of(n, &multiply_elements(ring, &x, &y));
        if product != ring.set_product_support(&support_of(n, &x), &support_of(n, &y)) {
            failure = Some(format!("support of {x:?} * {y:?} differs"));
            break;
        }
    }
    CheckOutcome { name: "support homomorphism", cases: samples, failure }
}
