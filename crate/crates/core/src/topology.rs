//! Topologies on the Serre spectrum.
//!
//! Zariski closed sets are `V(I) = {P : P ⊇ I}` for Serre ideals `I`.
//! Balmer-style closed sets are `V_B(X) = {P : X ∩ P = ∅}` for sets of basis
//! elements `X`; the zero object lies in every ideal, so a set `X` containing
//! it gives the empty closed set.
//!
//! Points are indices into the spectrum; a set of points is a [`BasisSet`]
//! whose universe is the number of primes.

use alloc::vec::Vec;

use crate::basis_set::BasisSet;
use crate::spectrum::{SerreLattice, SpectrumReport};
use crate::zring::ZPlusRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyStyle {
    Zariski,
    Balmer,
}

impl TopologyStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyStyle::Zariski => "zariski",
            TopologyStyle::Balmer => "balmer",
        }
    }
}

/// How a closed set arose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedTag {
    /// `V(I)` for the Serre ideal `I` (first in lattice order).
    Ideal(BasisSet),
    /// `V_B(X)`, with `X` the largest basis subset defining this extent.
    Objects(BasisSet),
    /// `V_B` of a set containing the zero object.
    ZeroObject,
    /// Union of two earlier closed sets (indices into the family).
    Union(usize, usize),
    /// Intersection of two earlier closed sets.
    Intersection(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSet {
    pub points: BasisSet,
    pub tag: ClosedTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSetFamily {
    pub style: TopologyStyle,
    /// The primes, in spectrum order.
    pub space: Vec<BasisSet>,
    pub closed: Vec<ClosedSet>,
    /// Whether the generating sets were already closed under pairwise union
    /// before the family was completed.
    pub generators_union_closed: bool,
}

/// `V(I) = {P : P ⊇ I}`.
pub fn zariski_closed_set(space: &[BasisSet], ideal: &BasisSet) -> BasisSet {
    BasisSet::from_indices(
        space.len(),
        space.iter().enumerate().filter(|(_, p)| ideal.is_subset(p)).map(|(i, _)| i),
    )
}

/// `V_B(X) = {P : X ∩ P = ∅}`.
pub fn balmer_closed_set(space: &[BasisSet], objects: &BasisSet) -> BasisSet {
    BasisSet::from_indices(
        space.len(),
        space.iter().enumerate().filter(|(_, p)| objects.is_disjoint(p)).map(|(i, _)| i),
    )
}

/// Generates the closed-set family of the given style and completes it under
/// finite unions and intersections.
pub fn build_topology(
    lattice: &SerreLattice<'_>,
    spec: &SpectrumReport,
    style: TopologyStyle,
) -> ClosedSetFamily {
    let space = spec.ideals();
    let generators = match style {
        TopologyStyle::Zariski => zariski_generators(lattice, &space),
        TopologyStyle::Balmer => balmer_generators(lattice.ring(), &space),
    };
    let generators_union_closed = generators.iter().all(|a| {
        generators.iter().all(|b| {
            let u = a.points.union(&b.points);
            generators.iter().any(|c| c.points == u)
        })
    });
    let closed = complete(generators);
    ClosedSetFamily { style, space, closed, generators_union_closed }
}

fn push_new(family: &mut Vec<ClosedSet>, points: BasisSet, tag: ClosedTag) -> bool {
    if family.iter().any(|c| c.points == points) {
        return false;
    }
    family.push(ClosedSet { points, tag });
    true
}

fn zariski_generators(lattice: &SerreLattice<'_>, space: &[BasisSet]) -> Vec<ClosedSet> {
    let mut out = Vec::new();
    for ideal in lattice.ideals() {
        push_new(&mut out, zariski_closed_set(space, ideal), ClosedTag::Ideal(ideal.clone()));
    }
    out
}

fn balmer_generators(ring: &ZPlusRing, space: &[BasisSet]) -> Vec<ClosedSet> {
    // V_B(X) = ∩_{x∈X} V_B({x}); close the singleton sets under intersection
    let singles: Vec<BasisSet> = (0..ring.len())
        .map(|x| balmer_closed_set(space, &BasisSet::singleton(ring.len(), x)))
        .collect();
    let mut extents: Vec<BasisSet> = alloc::vec![BasisSet::full(space.len())];
    let mut head = 0;
    while head < extents.len() {
        let current = extents[head].clone();
        head += 1;
        for s in &singles {
            let next = current.intersection(s);
            if !extents.contains(&next) {
                extents.push(next);
            }
        }
    }
    let mut out: Vec<ClosedSet> = extents
        .into_iter()
        .map(|points| {
            let objects = BasisSet::from_indices(
                ring.len(),
                (0..ring.len()).filter(|x| points.is_subset(&singles[*x])),
            );
            debug_assert_eq!(balmer_closed_set(space, &objects), points);
            ClosedSet { points, tag: ClosedTag::Objects(objects) }
        })
        .collect();
    push_new(&mut out, BasisSet::empty(space.len()), ClosedTag::ZeroObject);
    out
}

fn complete(mut family: Vec<ClosedSet>) -> Vec<ClosedSet> {
    loop {
        let mut added = false;
        let n = family.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let u = family[i].points.union(&family[j].points);
                added |= push_new(&mut family, u, ClosedTag::Union(i, j));
                let x = family[i].points.intersection(&family[j].points);
                added |= push_new(&mut family, x, ClosedTag::Intersection(i, j));
            }
        }
        if !added {
            return family;
        }
    }
}

impl ClosedSetFamily {
    pub fn points(&self) -> usize {
        self.space.len()
    }

    pub fn contains_extent(&self, points: &BasisSet) -> bool {
        self.closed.iter().any(|c| &c.points == points)
    }

    /// Smallest closed set containing the point.
    pub fn point_closure(&self, point: usize) -> BasisSet {
        let mut out = BasisSet::full(self.points());
        for c in self.closed.iter().filter(|c| c.points.contains(point)) {
            out.intersect_with(&c.points);
        }
        out
    }

    /// Edges `P -> Q` (by index) whenever `Q ≠ P` lies in the closure of `P`.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.points() {
            for q in &self.point_closure(p) {
                if q != p {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Contains `∅` and the whole space and is closed under pairwise union
    /// and intersection.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.points();
        if !self.contains_extent(&BasisSet::empty(n)) || !self.contains_extent(&BasisSet::full(n)) {
            return false;
        }
        self.closed.iter().all(|a| {
            self.closed.iter().all(|b| {
                self.contains_extent(&a.points.union(&b.points))
                    && self.contains_extent(&a.points.intersection(&b.points))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::CoeffMode;
    use crate::spectrum::spectrum_of;
    use crate::zring::{EnumerationGuard, RingBuilder};
    use alloc::vec;

    fn zx2_x() -> ZPlusRing {
        let mut b = RingBuilder::with_labels("zx2-x", CoeffMode::Int, &["1", "x"]);
        b.units_by_label(&["1"]).mul("x", "x", &[(1, "x")]).fill_unit_defaults();
        b.build().unwrap()
    }

    fn two_idem() -> ZPlusRing {
        let mut b = RingBuilder::with_labels("two-idem", CoeffMode::Int, &["a", "b"]);
        b.mul("a", "a", &[(1, "a")]).mul("b", "b", &[(1, "b")]);
        b.build().unwrap()
    }

    fn extents(f: &ClosedSetFamily) -> Vec<Vec<usize>> {
        let mut v: Vec<BasisSet> = f.closed.iter().map(|c| c.points.clone()).collect();
        v.sort();
        v.iter().map(BasisSet::to_vec).collect()
    }

    #[test]
    fn closed_set_examples() {
        let r = zx2_x();
        let lattice = SerreLattice::new(&r, EnumerationGuard::default()).unwrap();
        let spec = spectrum_of(&lattice);
        let space = spec.ideals();
        // points: 0 = ∅, 1 = {x}
        let x = BasisSet::singleton(2, 1);
        assert_eq!(zariski_closed_set(&space, &x).to_vec(), vec![1]);
        assert_eq!(balmer_closed_set(&space, &x).to_vec(), vec![0]);
        assert_eq!(zariski_closed_set(&space, &r.empty_set()).to_vec(), vec![0, 1]);
    }

    #[test]
    fn specialization_orders_are_opposite() {
        let r = zx2_x();
        let lattice = SerreLattice::new(&r, EnumerationGuard::default()).unwrap();
        let spec = spectrum_of(&lattice);
        let z = build_topology(&lattice, &spec, TopologyStyle::Zariski);
        let b = build_topology(&lattice, &spec, TopologyStyle::Balmer);
        assert_eq!(extents(&z), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(extents(&b), vec![vec![], vec![0], vec![0, 1]]);
        assert_eq!(z.point_closure(0).to_vec(), vec![0, 1]);
        assert_eq!(z.point_closure(1).to_vec(), vec![1]);
        assert_eq!(b.point_closure(0).to_vec(), vec![0]);
        assert_eq!(b.point_closure(1).to_vec(), vec![0, 1]);
        assert_eq!(z.specialization_edges(), vec![(0, 1)]);
        assert_eq!(b.specialization_edges(), vec![(1, 0)]);
        assert!(z.satisfies_axioms() && b.satisfies_axioms());
    }

    #[test]
    fn two_idempotents_give_discrete_zariski() {
        let r = two_idem();
        let lattice = SerreLattice::new(&r, EnumerationGuard::default()).unwrap();
        let spec = spectrum_of(&lattice);
        let z = build_topology(&lattice, &spec, TopologyStyle::Zariski);
        assert_eq!(extents(&z), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert!(z.generators_union_closed);
        assert_eq!(z.point_closure(0).to_vec(), vec![0]);
    }

    #[test]
    fn singleton_spectrum() {
        let mut b = RingBuilder::with_labels("trivial", CoeffMode::Int, &["1"]);
        b.mul("1", "1", &[(1, "1")]);
        let r = b.build().unwrap();
        let lattice = SerreLattice::new(&r, EnumerationGuard::default()).unwrap();
        let spec = spectrum_of(&lattice);
        for style in [TopologyStyle::Zariski, TopologyStyle::Balmer] {
            let f = build_topology(&lattice, &spec, style);
            assert_eq!(f.point_closure(0).to_vec(), vec![0]);
        }
    }
}
