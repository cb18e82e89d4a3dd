//! Built-in example rings with hand-derived expected results.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::coefficients::{CoeffMode, Coefficient};
use crate::monomial::MonomialRing;
use crate::zring::{Blocks, RingBuilder, ZPlusRing};

/// Results derived by hand, used as acceptance oracles. `None` where nothing
/// was derived independently of the library.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub ideal_count: Option<usize>,
    /// Primes as label lists, in canonical order.
    pub spectrum: Option<Vec<Vec<String>>>,
    /// Completely prime ideals (block rings only).
    pub completely_primes: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub description: &'static str,
    pub ring: ZPlusRing,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown gallery ring '{0}'")]
pub struct UnknownGalleryRing(pub String);

/// Instances listed by [`gallery`]. Parameterized families accept any
/// parameter through [`load_gallery`].
pub const GALLERY_NAMES: &[&str] = &[
    "trivial",
    "zx2-1",
    "zx2-x",
    "two-idem",
    "nilpotent",
    "m2-block",
    "m3-block",
    "ising",
    "verlinde-sl2-1",
    "verlinde-sl2-2",
    "verlinde-sl2-3",
    "verlinde-sl2-4",
    "rep-s3",
    "qplane-trunc-1",
    "qplane-trunc-2",
    "qplane-trunc-3",
    "mixed-3obj",
];

pub fn gallery() -> Vec<GalleryEntry> {
    GALLERY_NAMES.iter().map(|n| load_gallery(n).expect("listed names load")).collect()
}

fn labels(sets: &[&[&str]]) -> Vec<Vec<String>> {
    sets.iter().map(|s| s.iter().map(|l| String::from(*l)).collect()).collect()
}

fn expected(ideal_count: usize, spectrum: &[&[&str]]) -> Expected {
    Expected { ideal_count: Some(ideal_count), spectrum: Some(labels(spectrum)), completely_primes: None }
}

/// `(a, b, [(coefficient, c), ..])` for `a*b = Σ coefficient*c`.
pub(crate) type MulRow<'a> = (&'a str, &'a str, &'a [(u32, &'a str)]);

fn unital(name: &str, basis: &[&str], muls: &[MulRow<'_>]) -> ZPlusRing {
    let mut b = RingBuilder::with_labels(name, CoeffMode::Int, basis);
    b.units_by_label(&basis[..1]);
    for (x, y, rhs) in muls {
        b.mul(x, y, rhs);
    }
    b.fill_unit_defaults();
    b.build().expect("gallery ring is valid")
}

/// Matrix units `e_ij`, `e_ij e_jl = e_il`, with `e_ij` in block
/// `(source j, target i)` and units `e_ii`.
pub fn matrix_block_ring(name: &str, n: usize) -> ZPlusRing {
    let basis: Vec<String> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| alloc::format!("e{i}{j}"))).collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut b = RingBuilder::new(name, CoeffMode::Int, basis);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                b.product(idx(i, j), idx(j, l), [(idx(i, l), Coefficient::one(CoeffMode::Int))]);
            }
        }
    }
    let objects = (1..=n).map(|i| alloc::format!("{i}")).collect();
    let assignment = (0..n).flat_map(|i| (0..n).map(move |j| (j, i))).collect();
    b.set_blocks(Blocks::new(objects, assignment));
    b.set_units((0..n).map(|i| idx(i, i)));
    b.build().expect("matrix units are valid")
}

/// `SU(2)_k` fusion: `v_i v_j = Σ v_l` over `l = |i-j|, |i-j|+2, …, min(i+j, 2k-i-j)`.
pub fn verlinde_sl2(k: usize) -> ZPlusRing {
    let basis: Vec<String> = (0..=k).map(|i| alloc::format!("v{i}")).collect();
    let mut b = RingBuilder::new(alloc::format!("verlinde-sl2-{k}"), CoeffMode::Int, basis);
    for i in 0..=k {
        for j in 0..=k {
            let top = (i + j).min(2 * k - i - j);
            let terms = (i.abs_diff(j)..=top).step_by(2).map(|l| (l, Coefficient::one(CoeffMode::Int)));
            b.product(i, j, terms);
        }
    }
    b.set_units([0]);
    b.build().expect("Verlinde fusion rules are associative")
}

fn two_idempotents() -> ZPlusRing {
    let mut b = RingBuilder::with_labels("two-idem", CoeffMode::Int, &["a", "b"]);
    b.mul("a", "a", &[(1, "a")])
        .mul("b", "b", &[(1, "b")])
        .blocks_by_label(&["A", "B"], &[("a", "A", "A"), ("b", "B", "B")])
        .units_by_label(&["a", "b"]);
    b.build().expect("valid")
}

/// Three objects with `f: A→B`, `h: B→C`, `k: A→C`, `h∘f = k`, and an
/// idempotent `c` on `C` acting as `c∘h = h`, `c∘k = k`.
fn mixed_three_objects() -> ZPlusRing {
    let mut b =
        RingBuilder::with_labels("mixed-3obj", CoeffMode::Int, &["uA", "uB", "uC", "f", "h", "k", "c"]);
    b.blocks_by_label(
        &["A", "B", "C"],
        &[
            ("uA", "A", "A"),
            ("uB", "B", "B"),
            ("uC", "C", "C"),
            ("f", "A", "B"),
            ("h", "B", "C"),
            ("k", "A", "C"),
            ("c", "C", "C"),
        ],
    )
    .units_by_label(&["uA", "uB", "uC"])
    .mul("h", "f", &[(1, "k")])
    .mul("c", "c", &[(1, "c")])
    .mul("c", "h", &[(1, "h")])
    .mul("c", "k", &[(1, "k")])
    .fill_unit_defaults();
    b.build().expect("valid")
}

fn complement_labels(ring: &ZPlusRing, removed: &[&str]) -> Vec<String> {
    let gone = ring.subset_from_labels(removed.iter().copied()).expect("known labels");
    ring.subset_labels(&gone.complement()).into_iter().map(String::from).collect()
}

fn parameter(name: &str, prefix: &str) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
        return None;
    }
    digits.parse().ok()
}

pub fn load_gallery(name: &str) -> Result<GalleryEntry, UnknownGalleryRing> {
    let entry = |description, ring: ZPlusRing, expected| GalleryEntry {
        name: String::from(name),
        description,
        ring,
        expected,
    };
    let fusion_expected = || expected(2, &[&[]]);
    Ok(match name {
        "trivial" => entry("Z on one basis element", unital(name, &["1"], &[]), fusion_expected()),
        "zx2-1" => entry(
            "Z[x]/(x^2-1)",
            unital(name, &["1", "x"], &[("x", "x", &[(1, "1")])]),
            fusion_expected(),
        ),
        "zx2-x" => entry(
            "Z[x]/(x^2-x)",
            unital(name, &["1", "x"], &[("x", "x", &[(1, "x")])]),
            expected(3, &[&[], &["x"]]),
        ),
        "two-idem" => {
            let mut e = expected(4, &[&["a"], &["b"]]);
            e.completely_primes = Some(labels(&[&["a"], &["b"]]));
            entry("two orthogonal idempotents on two objects", two_idempotents(), e)
        }
        "nilpotent" => {
            let mut b = RingBuilder::with_labels(name, CoeffMode::Int, &["a"]);
            b.mul("a", "a", &[]);
            entry("a^2 = 0, no unit", b.build().expect("valid"), expected(2, &[]))
        }
        "m2-block" | "m3-block" => {
            let n = if name == "m2-block" { 2 } else { 3 };
            let mut e = fusion_expected();
            e.completely_primes = Some(Vec::new());
            entry("matrix units as a block ring", matrix_block_ring(name, n), e)
        }
        "ising" => entry(
            "Ising fusion ring",
            unital(
                name,
                &["1", "eps", "sigma"],
                &[
                    ("sigma", "sigma", &[(1, "1"), (1, "eps")]),
                    ("eps", "eps", &[(1, "1")]),
                    ("eps", "sigma", &[(1, "sigma")]),
                    ("sigma", "eps", &[(1, "sigma")]),
                ],
            ),
            fusion_expected(),
        ),
        "rep-s3" => entry(
            "representation ring of S3",
            unital(
                name,
                &["t", "s", "d"],
                &[
                    ("s", "s", &[(1, "t")]),
                    ("s", "d", &[(1, "d")]),
                    ("d", "s", &[(1, "d")]),
                    ("d", "d", &[(1, "t"), (1, "s"), (1, "d")]),
                ],
            ),
            fusion_expected(),
        ),
        "mixed-3obj" => {
            let ring = mixed_three_objects();
            let cprimes = [&["uA"][..], &["uB"], &["uC", "c"], &["uC"]]
                .iter()
                .map(|removed| complement_labels(&ring, removed))
                .collect::<Vec<_>>();
            let mut sorted: Vec<BasisSet> = cprimes
                .iter()
                .map(|l| ring.subset_from_labels(l.iter().map(String::as_str)).expect("known"))
                .collect();
            sorted.sort();
            let cprimes =
                sorted.iter().map(|s| ring.subset_labels(s).into_iter().map(String::from).collect()).collect();
            let e = Expected { ideal_count: None, spectrum: None, completely_primes: Some(cprimes) };
            entry("three objects with a composable pair and an idempotent", ring, e)
        }
        _ => {
            if let Some(k) = parameter(name, "verlinde-sl2-").filter(|k| *k >= 1) {
                entry("SU(2)_k fusion ring", verlinde_sl2(k), fusion_expected())
            } else if let Some(d) = parameter(name, "qplane-trunc-") {
                let m = MonomialRing::quantum_plane();
                let ring = m.truncate_to_ring(d as u32);
                // every monomial of positive degree is nilpotent
                let spectrum = if d == 0 {
                    labels(&[&[]])
                } else {
                    alloc::vec![ring.labels()[1..].to_vec()]
                };
                let ideal_count = match d {
                    0 => Some(2),
                    1 => Some(5),
                    2 => Some(14),
                    _ => None,
                };
                let e = Expected { ideal_count, spectrum: Some(spectrum), completely_primes: None };
                entry("quantum plane truncated by degree", ring, e)
            } else {
                return Err(UnknownGalleryRing(String::from(name)));
            }
        }
    })
}
