//! Serializable report documents. Field order is the output order.

use serde::Serialize;
use zplus_core::gallery::{Expected, GalleryEntry};
use zplus_core::topology::{ClosedSetFamily, ClosedTag};
use zplus_core::{BasisSet, ZPlusRing};

pub type Labels = Vec<String>;

pub fn labels(ring: &ZPlusRing, set: &BasisSet) -> Labels {
    ring.subset_labels(set).into_iter().map(String::from).collect()
}

pub fn label_sets(ring: &ZPlusRing, sets: &[BasisSet]) -> Vec<Labels> {
    sets.iter().map(|s| labels(ring, s)).collect()
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: ErrorDoc,
}

#[derive(Serialize)]
pub struct ErrorDoc {
    /// `input` or `guard`.
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Serialize)]
pub struct LocatedDoc {
    pub lines: Vec<usize>,
    pub message: String,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub command: &'static str,
    pub ring: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Labels>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units: Option<Labels>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objects: Option<Labels>,
    pub errors: Vec<LocatedDoc>,
}

#[derive(Serialize)]
pub struct IdealsReport {
    pub command: &'static str,
    pub ring: String,
    pub side: &'static str,
    pub count: usize,
    pub ideals: Vec<Labels>,
}

#[derive(Serialize)]
pub struct PrimeDoc {
    pub ideal: Labels,
    pub cprime: bool,
    pub semiprime: bool,
}

#[derive(Serialize)]
pub struct SpecReport {
    pub command: &'static str,
    pub ring: String,
    pub count: usize,
    pub primes: Vec<PrimeDoc>,
    /// Index pairs `[i, j]` with `primes[i] ⊊ primes[j]`.
    pub inclusions: Vec<[usize; 2]>,
}

#[derive(Serialize, Default)]
pub struct WitnessDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_pair: Option<[Labels; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<Labels>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes_over: Option<usize>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub ring: String,
    pub ideal: Labels,
    pub prop: &'static str,
    pub mode: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
pub struct ClosureReport {
    pub command: &'static str,
    pub ring: String,
    pub side: &'static str,
    pub gens: Labels,
    pub closure: Labels,
}

#[derive(Serialize)]
pub struct MinimalPrimesReport {
    pub command: &'static str,
    pub ring: String,
    pub ideal: Labels,
    pub found: bool,
    pub minimal: Vec<Labels>,
    pub chain: Vec<Labels>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_product_support: Option<Labels>,
}

#[derive(Serialize)]
pub struct QuotientReport {
    pub command: &'static str,
    pub ring: String,
    pub ideal: Labels,
    pub quotient: String,
    pub basis: Labels,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_file: Option<String>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TagDoc {
    Ideal { ideal: Labels },
    Objects { objects: Labels },
    ZeroObject,
    Union { of: [usize; 2] },
    Intersection { of: [usize; 2] },
}

#[derive(Serialize)]
pub struct ClosedDoc {
    pub points: Vec<usize>,
    pub tag: TagDoc,
}

#[derive(Serialize)]
pub struct TopologyReport {
    pub command: &'static str,
    pub ring: String,
    pub style: &'static str,
    pub points: Vec<Labels>,
    pub closed_sets: Vec<ClosedDoc>,
    pub generators_union_closed: bool,
    pub specialization: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
}

impl TopologyReport {
    pub fn new(ring: &ZPlusRing, family: &ClosedSetFamily) -> Self {
        let closed_sets = family
            .closed
            .iter()
            .map(|c| ClosedDoc {
                points: c.points.to_vec(),
                tag: match &c.tag {
                    ClosedTag::Ideal(i) => TagDoc::Ideal { ideal: labels(ring, i) },
                    ClosedTag::Objects(x) => TagDoc::Objects { objects: labels(ring, x) },
                    ClosedTag::ZeroObject => TagDoc::ZeroObject,
                    ClosedTag::Union(i, j) => TagDoc::Union { of: [*i, *j] },
                    ClosedTag::Intersection(i, j) => TagDoc::Intersection { of: [*i, *j] },
                },
            })
            .collect();
        TopologyReport {
            command: "topology",
            ring: ring.name().to_string(),
            style: family.style.as_str(),
            points: label_sets(ring, &family.space),
            closed_sets,
            generators_union_closed: family.generators_union_closed,
            specialization: family.specialization_edges().into_iter().map(|(p, q)| [p, q]).collect(),
            dot: None,
        }
    }
}

#[derive(Serialize)]
pub struct TwocatReport {
    pub command: &'static str,
    pub ring: String,
    pub objects: Labels,
    pub units: Labels,
    pub unit_decomposition: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completely_primes: Option<Vec<Labels>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_agrees: Option<bool>,
}

#[derive(Serialize)]
pub struct MonoidPrimeDoc {
    pub generators: Vec<Vec<u32>>,
    pub prime: bool,
    /// 1-based variable indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[Vec<u32>; 2]>,
}

#[derive(Serialize)]
pub struct TruncationDoc {
    pub degree: u32,
    pub basis: Labels,
    pub ring_file: String,
}

#[derive(Serialize)]
pub struct FaceQuotientDoc {
    /// 1-based variable indices.
    pub face: Vec<usize>,
    pub variables: Labels,
    pub twist: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct MonomialReport {
    pub command: &'static str,
    pub model: &'static str,
    pub vars: usize,
    pub variables: Labels,
    pub twist: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<MonoidPrimeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_quotient: Option<FaceQuotientDoc>,
}

#[derive(Serialize)]
pub struct ExpectedDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<Labels>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completely_primes: Option<Vec<Labels>>,
}

impl From<&Expected> for ExpectedDoc {
    fn from(e: &Expected) -> Self {
        ExpectedDoc {
            ideal_count: e.ideal_count,
            spectrum: e.spectrum.clone(),
            completely_primes: e.completely_primes.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct GalleryItem {
    pub name: String,
    pub description: &'static str,
    pub basis: usize,
    pub mode: String,
    pub expected: ExpectedDoc,
}

impl From<&GalleryEntry> for GalleryItem {
    fn from(e: &GalleryEntry) -> Self {
        GalleryItem {
            name: e.name.clone(),
            description: e.description,
            basis: e.ring.len(),
            mode: e.ring.mode().to_string(),
            expected: (&e.expected).into(),
        }
    }
}

#[derive(Serialize)]
pub struct GalleryListReport {
    pub command: &'static str,
    pub rings: Vec<GalleryItem>,
}

#[derive(Serialize)]
pub struct GalleryRingReport {
    pub command: &'static str,
    #[serde(flatten)]
    pub item: GalleryItem,
    pub ring_file: String,
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub command: &'static str,
    pub ring: String,
    pub seed: u64,
    pub all_passed: bool,
    pub checks: Vec<CheckDoc>,
}
