//! Z+-rings: a finite labeled basis with nonnegative structure constants.
//!
//! `b_α b_β = Σ_γ n_{αβ}^γ b_γ` with every `n_{αβ}^γ` a [`Coefficient`].
//! Rings may be non-unital. Optionally the basis is partitioned into blocks
//! `(source, target)` (the hom-categories of a finite 2-category) and a set of
//! basis elements is declared as the identity classes `[1_A]`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::coefficients::{CoeffMode, Coefficient, Laurent};

/// Exhaustive operations refuse bases larger than this unless overridden.
pub const DEFAULT_BASIS_GUARD: usize = 24;

/// Size guard for operations that scan all `2^|Γ|` basis subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_basis: usize,
}

impl EnumerationGuard {
    pub fn unlimited() -> Self {
        EnumerationGuard { max_basis: usize::MAX }
    }

    pub fn check(&self, basis: usize) -> Result<(), BasisTooLarge> {
        if basis > self.max_basis {
            return Err(BasisTooLarge { basis, limit: self.max_basis });
        }
        Ok(())
    }
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard { max_basis: DEFAULT_BASIS_GUARD }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("basis has {basis} elements, above the enumeration guard of {limit}")]
pub struct BasisTooLarge {
    pub basis: usize,
    pub limit: usize,
}

/// Object-level block structure: basis element `i` is a 1-morphism
/// `source(i) -> target(i)`.
///
/// Composition convention: `b_α b_β` is nonzero only when
/// `target(β) == source(α)` and then lands in block `(source(β), target(α))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    objects: Vec<String>,
    assignment: Vec<(usize, usize)>,
}

impl Blocks {
    pub fn new(objects: Vec<String>, assignment: Vec<(usize, usize)>) -> Self {
        Blocks { objects, assignment }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn source(&self, basis: usize) -> usize {
        self.assignment[basis].0
    }

    pub fn target(&self, basis: usize) -> usize {
        self.assignment[basis].1
    }

    pub fn block_of(&self, basis: usize) -> (usize, usize) {
        self.assignment[basis]
    }

    pub fn assignment(&self) -> &[(usize, usize)] {
        &self.assignment
    }

    /// Basis elements with the given `(source, target)`.
    pub fn members(&self, source: usize, target: usize, universe: usize) -> BasisSet {
        BasisSet::from_indices(
            universe,
            self.assignment
                .iter()
                .enumerate()
                .filter(|(_, st)| **st == (source, target))
                .map(|(i, _)| i),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("duplicate basis label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown basis label '{0}'")]
    UnknownLabel(String),
    #[error("structure constant for ({a}, {b}) -> {c} has mode {found}, ring mode is {expected}")]
    ModeMismatch { a: usize, b: usize, c: usize, expected: CoeffMode, found: CoeffMode },
    #[error(
        "associativity fails for ({a}, {b}, {c}) at basis {e}: (ab)c has {left}, a(bc) has {right}"
    )]
    AssociativityViolation { a: usize, b: usize, c: usize, e: usize, left: String, right: String },
    #[error("product of {a} and {b} is not composable in the block structure")]
    BlockIncompatibility { a: usize, b: usize, result: Option<usize> },
    #[error("unit axiom fails (unit {unit:?}, witness {witness}): {detail}")]
    UnitViolation { unit: Option<usize>, witness: usize, detail: &'static str },
}

/// Every failure found while validating a ring table.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring validation failed with {} error(s)", self.errors.len())?;
        for e in &self.errors {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// A validated Z+-ring. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPlusRing {
    name: String,
    labels: Vec<String>,
    mode: CoeffMode,
    // row-major (α, β); entries sorted by γ, all nonzero
    table: Vec<Vec<(usize, Coefficient)>>,
    supports: Vec<BasisSet>,
    blocks: Option<Blocks>,
    units: Option<BasisSet>,
}

impl ZPlusRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn blocks(&self) -> Option<&Blocks> {
        self.blocks.as_ref()
    }

    pub fn units(&self) -> Option<&BasisSet> {
        self.units.as_ref()
    }

    /// Structure constants of `b_a b_b`, sorted by result index.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, Coefficient)] {
        &self.table[a * self.len() + b]
    }

    /// `n_{ab}^c`, zero if absent.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Coefficient {
        self.product(a, b)
            .iter()
            .find(|(g, _)| *g == c)
            .map(|(_, n)| n.clone())
            .unwrap_or_else(|| Coefficient::zero(self.mode))
    }

    /// `support(b_a b_b)`.
    #[inline]
    pub fn product_support(&self, a: usize, b: usize) -> &BasisSet {
        &self.supports[a * self.len() + b]
    }

    pub fn empty_set(&self) -> BasisSet {
        BasisSet::empty(self.len())
    }

    pub fn full_set(&self) -> BasisSet {
        BasisSet::full(self.len())
    }

    /// Labels of a subset, in basis order.
    pub fn subset_labels(&self, set: &BasisSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// Resolves labels to a subset; returns the first unknown label on failure.
    pub fn subset_from_labels<'a, I>(&self, labels: I) -> Result<BasisSet, String>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut out = self.empty_set();
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| String::from(l))?;
            out.insert(i);
        }
        Ok(out)
    }

    /// The product `u·x` (or `x·u`) the unit axioms force, as a support with
    /// unit coefficients; see [`RingBuilder::unit_default`].
    pub fn unit_default(&self, u: usize, x: usize, unit_on_left: bool) -> Option<Vec<usize>> {
        let units = self.units.as_ref()?.to_vec();
        implied_unit_product(&units, self.blocks.as_ref(), u, x, unit_on_left)
    }

    /// ∪_{α∈left, β∈right} support(b_α b_β).
    pub fn set_product_support(&self, left: &BasisSet, right: &BasisSet) -> BasisSet {
        let mut out = self.empty_set();
        for a in left {
            for b in right {
                out.union_with(self.product_support(a, b));
            }
        }
        out
    }

    /// Support of `b_a R^1 b_b`: the union over `t ∈ Γ` of `support(b_a b_t b_b)`
    /// together with `support(b_a b_b)` (the empty middle factor).
    ///
    /// Including the bare product keeps primality tests correct for rings
    /// without a unit; for unital rings it adds nothing.
    pub fn triple_support(&self, a: usize, b: usize) -> BasisSet {
        let mut out = self.product_support(a, b).clone();
        for t in 0..self.len() {
            for d in self.product_support(a, t) {
                out.union_with(self.product_support(d, b));
            }
        }
        out
    }

    /// Finds a unit that is not idempotent, or a basis element on which
    /// `Σ_{u∈units} b_u` fails to be a two-sided identity (preferring one that
    /// fails on both sides).
    pub fn unit_decomposition_failure(&self, units: &BasisSet) -> Option<ValidationError> {
        for u in units {
            let p = self.product(u, u);
            if p.len() != 1 || p[0].0 != u || p[0].1 != Coefficient::one(self.mode) {
                return Some(ValidationError::UnitViolation {
                    unit: Some(u),
                    witness: u,
                    detail: "declared unit is not idempotent",
                });
            }
        }
        let one = Coefficient::one(self.mode);
        let failures: Vec<(usize, bool, bool)> = (0..self.len())
            .map(|x| {
                let mut left: BTreeMap<usize, Coefficient> = BTreeMap::new();
                let mut right: BTreeMap<usize, Coefficient> = BTreeMap::new();
                for u in units {
                    accumulate_into(&mut left, self.product(u, x));
                    accumulate_into(&mut right, self.product(x, u));
                }
                let is_basis =
                    |m: &BTreeMap<usize, Coefficient>| m.len() == 1 && m.get(&x) == Some(&one);
                (x, !is_basis(&left), !is_basis(&right))
            })
            .filter(|(_, l, r)| *l || *r)
            .collect();
        // prefer an element the unit sum fixes on neither side
        let (witness, left, right) = failures
            .iter()
            .find(|(_, l, r)| *l && *r)
            .or_else(|| failures.first())
            .copied()?;
        let detail = match (left, right) {
            (true, true) => "sum of units is neither a left nor a right identity",
            (true, false) => "sum of units is not a left identity",
            _ => "sum of units is not a right identity",
        };
        Some(ValidationError::UnitViolation { unit: None, witness, detail })
    }

    /// Ring restricted to the basis elements in `keep`, with structure constants
    /// landing outside `keep` dropped. The result is re-validated.
    pub fn restrict(&self, name: String, keep: &BasisSet) -> Result<ZPlusRing, ValidationReport> {
        let old: Vec<usize> = keep.to_vec();
        let mut new_index = alloc::vec![usize::MAX; self.len()];
        for (new, &o) in old.iter().enumerate() {
            new_index[o] = new;
        }
        let labels = old.iter().map(|&i| self.labels[i].clone()).collect();
        let mut builder = RingBuilder::new(name, self.mode, labels);
        for (na, &a) in old.iter().enumerate() {
            for (nb, &b) in old.iter().enumerate() {
                let terms = self
                    .product(a, b)
                    .iter()
                    .filter(|(g, _)| keep.contains(*g))
                    .map(|(g, n)| (new_index[*g], n.clone()));
                builder.product(na, nb, terms);
            }
        }
        if let Some(blocks) = &self.blocks {
            let assignment = old.iter().map(|&i| blocks.block_of(i)).collect();
            builder.set_blocks(Blocks::new(blocks.objects.clone(), assignment));
        }
        if let Some(units) = &self.units {
            builder.set_units(units.intersection(keep).iter().map(|u| new_index[u]));
        }
        builder.build()
    }
}

fn implied_unit_product(
    units: &[usize],
    blocks: Option<&Blocks>,
    u: usize,
    x: usize,
    unit_on_left: bool,
) -> Option<Vec<usize>> {
    if !units.contains(&u) {
        return None;
    }
    if let Some(blocks) = blocks {
        let obj = blocks.assignment.get(u)?.0;
        let (s, t) = *blocks.assignment.get(x)?;
        let hit = if unit_on_left { t == obj } else { s == obj };
        return Some(if hit { alloc::vec![x] } else { Vec::new() });
    }
    if units.contains(&x) {
        return Some(if u == x { alloc::vec![x] } else { Vec::new() });
    }
    if units.len() == 1 {
        return Some(alloc::vec![x]);
    }
    None
}

fn accumulate_into(map: &mut BTreeMap<usize, Coefficient>, terms: &[(usize, Coefficient)]) {
    for (g, n) in terms {
        match map.get_mut(g) {
            Some(c) => c.accumulate(n),
            None => {
                map.insert(*g, n.clone());
            }
        }
    }
}

/// Collects basis, structure constants, blocks and units; [`RingBuilder::build`]
/// validates every ring invariant.
#[derive(Clone, Debug)]
pub struct RingBuilder {
    name: String,
    mode: CoeffMode,
    labels: Vec<String>,
    products: BTreeMap<(usize, usize), BTreeMap<usize, Coefficient>>,
    blocks: Option<Blocks>,
    units: Option<Vec<usize>>,
    errors: Vec<ValidationError>,
}

impl RingBuilder {
    pub fn new(name: impl Into<String>, mode: CoeffMode, labels: Vec<String>) -> Self {
        RingBuilder {
            name: name.into(),
            mode,
            labels,
            products: BTreeMap::new(),
            blocks: None,
            units: None,
            errors: Vec::new(),
        }
    }

    /// Convenience constructor from string labels.
    pub fn with_labels(name: impl Into<String>, mode: CoeffMode, labels: &[&str]) -> Self {
        Self::new(name, mode, labels.iter().map(|l| String::from(*l)).collect())
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_product(&self, a: usize, b: usize) -> bool {
        self.products.contains_key(&(a, b))
    }

    /// Adds terms to `b_a b_b`. Zero terms are dropped; repeated calls accumulate.
    pub fn product<I>(&mut self, a: usize, b: usize, terms: I) -> &mut Self
    where
        I: IntoIterator<Item = (usize, Coefficient)>,
    {
        let entry = self.products.entry((a, b)).or_default();
        for (c, n) in terms {
            if n.mode() != self.mode {
                self.errors.push(ValidationError::ModeMismatch {
                    a,
                    b,
                    c,
                    expected: self.mode,
                    found: n.mode(),
                });
                continue;
            }
            if n.is_zero() {
                continue;
            }
            match entry.get_mut(&c) {
                Some(existing) => existing.accumulate(&n),
                None => {
                    entry.insert(c, n);
                }
            }
        }
        self
    }

    /// Integer-coefficient product by labels: `mul("s", "s", &[(1, "t")])`.
    pub fn mul(&mut self, a: &str, b: &str, rhs: &[(u32, &str)]) -> &mut Self {
        let Some(ia) = self.lookup(a) else { return self };
        let Some(ib) = self.lookup(b) else { return self };
        let mut terms = Vec::new();
        for (n, c) in rhs {
            if let Some(ic) = self.lookup(c) {
                terms.push((ic, Coefficient::from_int(self.mode, *n)));
            }
        }
        self.product(ia, ib, terms)
    }

    fn lookup(&mut self, label: &str) -> Option<usize> {
        let found = self.index_of(label);
        if found.is_none() {
            self.errors.push(ValidationError::UnknownLabel(String::from(label)));
        }
        found
    }

    pub fn set_blocks(&mut self, blocks: Blocks) -> &mut Self {
        self.blocks = Some(blocks);
        self
    }

    /// Block structure by labels: `(object names, [(label, source, target)])`.
    pub fn blocks_by_label(&mut self, objects: &[&str], assignment: &[(&str, &str, &str)]) -> &mut Self {
        let objs: Vec<String> = objects.iter().map(|o| String::from(*o)).collect();
        let mut assign = alloc::vec![(usize::MAX, usize::MAX); self.labels.len()];
        for (label, s, t) in assignment {
            let (Some(i), Some(si), Some(ti)) = (
                self.lookup(label),
                objs.iter().position(|o| o == s),
                objs.iter().position(|o| o == t),
            ) else {
                continue;
            };
            assign[i] = (si, ti);
        }
        self.set_blocks(Blocks::new(objs, assign))
    }

    pub fn set_units<I: IntoIterator<Item = usize>>(&mut self, units: I) -> &mut Self {
        let mut u: Vec<usize> = units.into_iter().collect();
        u.sort_unstable();
        u.dedup();
        self.units = Some(u);
        self
    }

    pub fn units_by_label(&mut self, units: &[&str]) -> &mut Self {
        let idx: Vec<usize> = units.iter().filter_map(|u| self.lookup(u)).collect();
        self.set_units(idx)
    }

    /// The product `u·x` (or `x·u`) implied by the unit axioms, if determined.
    ///
    /// With blocks, `u_A · x = x` iff `target(x) = A` and `x · u_A = x` iff
    /// `source(x) = A`. Without blocks, distinct units are orthogonal
    /// idempotents and a single unit is a two-sided identity.
    pub fn unit_default(&self, u: usize, x: usize, unit_on_left: bool) -> Option<Vec<usize>> {
        implied_unit_product(self.units.as_deref()?, self.blocks.as_ref(), u, x, unit_on_left)
    }

    /// Fills every product involving a declared unit that has not been set
    /// explicitly, per [`RingBuilder::unit_default`].
    pub fn fill_unit_defaults(&mut self) -> &mut Self {
        let Some(units) = self.units.clone() else { return self };
        let n = self.labels.len();
        for &u in &units {
            if u >= n {
                continue;
            }
            for x in 0..n {
                for left in [true, false] {
                    let key = if left { (u, x) } else { (x, u) };
                    if self.products.contains_key(&key) {
                        continue;
                    }
                    if let Some(rhs) = self.unit_default(u, x, left) {
                        let one = Coefficient::one(self.mode);
                        self.product(key.0, key.1, rhs.into_iter().map(|g| (g, one.clone())));
                    }
                }
            }
        }
        self
    }

    /// Validates and freezes the ring.
    pub fn build(self) -> Result<ZPlusRing, ValidationReport> {
        let mut errors = self.errors;
        let n = self.labels.len();
        if n == 0 {
            errors.push(ValidationError::EmptyBasis);
        }
        for (i, l) in self.labels.iter().enumerate() {
            if self.labels[..i].contains(l) {
                errors.push(ValidationError::DuplicateLabel(l.clone()));
            }
        }
        for ((a, b), terms) in &self.products {
            if *a >= n || *b >= n || terms.keys().any(|c| *c >= n) {
                errors.push(ValidationError::UnknownLabel(alloc::format!("#{a}*#{b}")));
            }
        }
        if !errors.is_empty() {
            return Err(ValidationReport { errors });
        }

        let mut table = alloc::vec![Vec::new(); n * n];
        let mut supports = alloc::vec![BasisSet::empty(n); n * n];
        for ((a, b), terms) in self.products {
            let slot = a * n + b;
            for (c, coeff) in terms {
                if !coeff.is_zero() {
                    supports[slot].insert(c);
                    table[slot].push((c, coeff));
                }
            }
        }

        let units = self.units.map(|u| BasisSet::from_indices(n, u.into_iter().filter(|i| *i < n)));
        let ring = ZPlusRing {
            name: self.name,
            labels: self.labels,
            mode: self.mode,
            table,
            supports,
            blocks: self.blocks,
            units,
        };

        check_blocks(&ring, &mut errors);
        check_associativity(&ring, &mut errors);
        if let Some(units) = &ring.units {
            if let Some(blocks) = &ring.blocks {
                for u in units {
                    let (s, t) = blocks.block_of(u);
                    if s != t {
                        errors.push(ValidationError::UnitViolation {
                            unit: Some(u),
                            witness: u,
                            detail: "unit lies in an off-diagonal block",
                        });
                    }
                }
            }
            if let Some(e) = ring.unit_decomposition_failure(units) {
                errors.push(e);
            }
        }
        if errors.is_empty() {
            Ok(ring)
        } else {
            Err(ValidationReport { errors })
        }
    }
}

fn check_blocks(ring: &ZPlusRing, errors: &mut Vec<ValidationError>) {
    let Some(blocks) = &ring.blocks else { return };
    let objects = blocks.objects.len();
    for (i, (s, t)) in blocks.assignment.iter().enumerate() {
        if *s >= objects || *t >= objects {
            errors.push(ValidationError::UnknownLabel(alloc::format!(
                "block of '{}'",
                ring.labels[i]
            )));
        }
    }
    if errors.iter().any(|e| matches!(e, ValidationError::UnknownLabel(_))) {
        return;
    }
    for a in 0..ring.len() {
        for b in 0..ring.len() {
            let support = ring.product_support(a, b);
            if support.is_empty() {
                continue;
            }
            if blocks.target(b) != blocks.source(a) {
                errors.push(ValidationError::BlockIncompatibility { a, b, result: None });
                continue;
            }
            let expected = (blocks.source(b), blocks.target(a));
            if let Some(c) = support.iter().find(|c| blocks.block_of(*c) != expected) {
                errors.push(ValidationError::BlockIncompatibility { a, b, result: Some(c) });
            }
        }
    }
}

/// `(b_a b_b) b_c` and `b_a (b_b b_c)` as sparse coefficient maps.
fn triple_products(
    ring: &ZPlusRing,
    a: usize,
    b: usize,
    c: usize,
) -> (BTreeMap<usize, Coefficient>, BTreeMap<usize, Coefficient>) {
    let mut left = BTreeMap::new();
    for (d, n_ab) in ring.product(a, b) {
        for (e, n_dc) in ring.product(*d, c) {
            let term = n_ab.mul_unchecked(n_dc);
            accumulate_into(&mut left, &[(*e, term)]);
        }
    }
    let mut right = BTreeMap::new();
    for (d, n_bc) in ring.product(b, c) {
        for (e, n_ad) in ring.product(a, *d) {
            let term = n_bc.mul_unchecked(n_ad);
            accumulate_into(&mut right, &[(*e, term)]);
        }
    }
    (left, right)
}

fn check_associativity(ring: &ZPlusRing, errors: &mut Vec<ValidationError>) {
    let n = ring.len();
    let zero = Coefficient::zero(ring.mode);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (left, right) = triple_products(ring, a, b, c);
                if left == right {
                    continue;
                }
                let mut keys: Vec<usize> = left.keys().chain(right.keys()).copied().collect();
                keys.sort_unstable();
                keys.dedup();
                for e in keys {
                    let l = left.get(&e).unwrap_or(&zero);
                    let r = right.get(&e).unwrap_or(&zero);
                    if l != r {
                        errors.push(ValidationError::AssociativityViolation {
                            a,
                            b,
                            c,
                            e,
                            left: l.to_canonical_string(),
                            right: r.to_canonical_string(),
                        });
                    }
                }
            }
        }
    }
}

/// Builds and validates a ring from its parts.
pub fn build_ring(
    name: impl Into<String>,
    labels: Vec<String>,
    mode: CoeffMode,
    tensor: BTreeMap<(usize, usize), BTreeMap<usize, Coefficient>>,
    blocks: Option<Blocks>,
    units: Option<Vec<usize>>,
) -> Result<ZPlusRing, ValidationReport> {
    let mut builder = RingBuilder::new(name, mode, labels);
    for ((a, b), terms) in tensor {
        builder.product(a, b, terms);
    }
    if let Some(blocks) = blocks {
        builder.set_blocks(blocks);
    }
    if let Some(units) = units {
        builder.set_units(units);
    }
    builder.build()
}

/// Element of the ring: a sparse integer (or Laurent) combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    coeffs: BTreeMap<usize, Laurent>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(index: usize) -> Self {
        let mut e = RingElement::zero();
        e.add_term(index, Laurent::constant(1));
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Laurent)>>(terms: I) -> Self {
        let mut e = RingElement::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    /// Positive element `Σ_{i∈set} b_i`.
    pub fn sum_of(set: &BasisSet) -> Self {
        Self::from_terms(set.iter().map(|i| (i, Laurent::constant(1))))
    }

    pub fn add_term(&mut self, index: usize, coeff: Laurent) {
        let merged = match self.coeffs.remove(&index) {
            Some(existing) => existing.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.coeffs.insert(index, merged);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Laurent> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Membership in `R_+`: all coefficients nonnegative.
    pub fn is_positive_part(&self) -> bool {
        self.coeffs.values().all(Laurent::is_nonnegative)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(*i, c.clone());
        }
        out
    }

    pub fn neg(&self) -> RingElement {
        RingElement { coeffs: self.coeffs.iter().map(|(i, c)| (*i, c.neg())).collect() }
    }
}

/// Indices with nonzero coefficient.
pub fn support_of(universe: usize, x: &RingElement) -> BasisSet {
    BasisSet::from_indices(universe, x.coeffs.keys().copied())
}

/// Bilinear extension of the structure constants.
pub fn multiply_elements(ring: &ZPlusRing, x: &RingElement, y: &RingElement) -> RingElement {
    let mut out = RingElement::zero();
    for (a, ca) in &x.coeffs {
        for (b, cb) in &y.coeffs {
            let scalar = ca.mul(cb);
            for (c, n) in ring.product(*a, *b) {
                out.add_term(*c, scalar.mul(&n.to_laurent()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn ising() -> ZPlusRing {
        let mut b = RingBuilder::with_labels("ising", CoeffMode::Int, &["1", "eps", "sigma"]);
        b.units_by_label(&["1"])
            .mul("sigma", "sigma", &[(1, "1"), (1, "eps")])
            .mul("eps", "eps", &[(1, "1")])
            .mul("eps", "sigma", &[(1, "sigma")])
            .mul("sigma", "eps", &[(1, "sigma")])
            .fill_unit_defaults();
        b.build().unwrap()
    }

    fn m2() -> ZPlusRing {
        let mut b =
            RingBuilder::with_labels("m2", CoeffMode::Int, &["e11", "e12", "e21", "e22"]);
        for i in 1..=2 {
            for j in 1..=2 {
                for l in 1..=2 {
                    let a = alloc::format!("e{i}{j}");
                    let bb = alloc::format!("e{j}{l}");
                    let c = alloc::format!("e{i}{l}");
                    b.mul(&a, &bb, &[(1, &c)]);
                }
            }
        }
        b.blocks_by_label(
            &["1", "2"],
            &[("e11", "1", "1"), ("e12", "2", "1"), ("e21", "1", "2"), ("e22", "2", "2")],
        )
        .units_by_label(&["e11", "e22"]);
        b.build().unwrap()
    }

    /// Independent oracle: associativity over all triples with plain integer arithmetic.
    fn brute_associative(table: &[[[u64; 3]; 3]; 3]) -> bool {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for e in 0..3 {
                        let l: u64 = (0..3).map(|d| table[a][b][d] * table[d][c][e]).sum();
                        let r: u64 = (0..3).map(|d| table[b][c][d] * table[a][d][e]).sum();
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::needless_range_loop)]
    fn ising_table() -> [[[u64; 3]; 3]; 3] {
        // indices 0 = 1, 1 = eps, 2 = sigma
        let mut t = [[[0u64; 3]; 3]; 3];
        for x in 0..3 {
            t[0][x][x] = 1;
            t[x][0][x] = 1;
        }
        t[1][1][0] = 1;
        t[1][2][2] = 1;
        t[2][1][2] = 1;
        t[2][2][0] = 1;
        t[2][2][1] = 1;
        t
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn ising_is_valid_and_matches_oracle() {
        assert!(brute_associative(&ising_table()));
        let r = ising();
        assert_eq!(r.len(), 3);
        let t = ising_table();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let n = r.structure_constant(a, b, c);
                    assert_eq!(n, Coefficient::from_int(CoeffMode::Int, t[a][b][c] as u32));
                }
            }
        }
    }

    #[test]
    fn broken_ising_reports_associativity() {
        let mut t = ising_table();
        t[1][2] = [1, 0, 0];
        assert!(!brute_associative(&t));
        let mut b = RingBuilder::with_labels("bad", CoeffMode::Int, &["1", "eps", "sigma"]);
        b.units_by_label(&["1"])
            .mul("sigma", "sigma", &[(1, "1"), (1, "eps")])
            .mul("eps", "eps", &[(1, "1")])
            .mul("eps", "sigma", &[(1, "1")])
            .mul("sigma", "eps", &[(1, "sigma")])
            .fill_unit_defaults();
        let report = b.build().unwrap_err();
        // (eps eps) sigma = sigma, eps (eps sigma) = eps
        assert!(report.errors.iter().any(|e| matches!(
            e,
            ValidationError::AssociativityViolation { a: 1, b: 1, c: 2, .. }
        )));
    }

    #[test]
    fn m2_block_ring_is_valid() {
        let r = m2();
        assert_eq!(r.blocks().unwrap().objects().len(), 2);
        assert_eq!(r.units().unwrap().to_vec(), vec![0, 3]);
    }

    #[test]
    fn block_incompatibility_detected() {
        let mut b = RingBuilder::with_labels("bad", CoeffMode::Int, &["e11", "e12"]);
        b.mul("e12", "e12", &[(1, "e12")]).blocks_by_label(
            &["1", "2"],
            &[("e11", "1", "1"), ("e12", "2", "1")],
        );
        let report = b.build().unwrap_err();
        assert!(report
            .errors
            .contains(&ValidationError::BlockIncompatibility { a: 1, b: 1, result: None }));
    }

    #[test]
    fn unit_violation_detected() {
        let mut b = RingBuilder::with_labels("bad", CoeffMode::Int, &["1", "x"]);
        b.mul("1", "1", &[(1, "1")]).mul("x", "x", &[(1, "x")]).units_by_label(&["1"]);
        let report = b.build().unwrap_err();
        assert!(report.errors.iter().any(|e| matches!(
            e,
            ValidationError::UnitViolation { unit: None, witness: 1, .. }
        )));
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        let b = RingBuilder::with_labels("dup", CoeffMode::Int, &["a", "a"]);
        assert_eq!(
            b.build().unwrap_err().errors,
            vec![ValidationError::DuplicateLabel("a".into())]
        );
        let mut b = RingBuilder::with_labels("unk", CoeffMode::Int, &["a"]);
        b.mul("a", "zz", &[(1, "a")]);
        assert_eq!(
            b.build().unwrap_err().errors,
            vec![ValidationError::UnknownLabel("zz".into())]
        );
        let b = RingBuilder::with_labels("none", CoeffMode::Int, &[]);
        assert_eq!(b.build().unwrap_err().errors, vec![ValidationError::EmptyBasis]);
    }

    #[test]
    fn element_products() {
        let r = ising();
        let sigma = RingElement::basis(2);
        let ss = multiply_elements(&r, &sigma, &sigma);
        assert_eq!(ss, RingElement::basis(0).add(&RingElement::basis(1)));
        assert!(multiply_elements(&r, &sigma, &RingElement::zero()).is_zero());

        let mut b = RingBuilder::with_labels("zx2-1", CoeffMode::Int, &["1", "x"]);
        b.units_by_label(&["1"]).mul("x", "x", &[(1, "1")]).fill_unit_defaults();
        let z = b.build().unwrap();
        let x = RingElement::basis(1);
        assert_eq!(multiply_elements(&z, &x, &x), RingElement::basis(0));
        // (1 - x)(1 + x) = 0 in Z[x]/(x^2 - 1): cancellation needs negative coefficients
        let one_minus_x = RingElement::basis(0).add(&x.neg());
        let one_plus_x = RingElement::basis(0).add(&x);
        assert!(multiply_elements(&z, &one_minus_x, &one_plus_x).is_zero());
    }

    #[test]
    fn supports() {
        let one_eps = RingElement::basis(0).add(&RingElement::basis(1));
        assert_eq!(support_of(3, &one_eps).to_vec(), vec![0, 1]);
        assert!(support_of(3, &RingElement::zero()).is_empty());
        let two_q_sigma = RingElement::from_terms([(2, Laurent::monomial(2, 1))]);
        assert_eq!(support_of(3, &two_q_sigma).to_vec(), vec![2]);
    }

    #[test]
    fn triple_support_examples() {
        let r = ising();
        assert_eq!(r.triple_support(2, 2).to_vec(), vec![0, 1, 2]);
        let m = m2();
        // e12 R e21 = {e11}
        assert_eq!(m.triple_support(1, 2).to_vec(), vec![0]);
        let mut b = RingBuilder::with_labels("two-idem", CoeffMode::Int, &["a", "b"]);
        b.mul("a", "a", &[(1, "a")]).mul("b", "b", &[(1, "b")]);
        let t = b.build().unwrap();
        assert!(t.triple_support(0, 1).is_empty());
    }

    #[test]
    fn restrict_drops_escaping_terms() {
        let mut b = RingBuilder::with_labels("zx2-x", CoeffMode::Int, &["1", "x"]);
        b.units_by_label(&["1"]).mul("x", "x", &[(1, "x")]).fill_unit_defaults();
        let r = b.build().unwrap();
        let q = r.restrict("q".into(), &BasisSet::singleton(2, 0)).unwrap();
        assert_eq!(q.labels(), &["1"]);
        assert_eq!(q.product(0, 0), &[(0, Coefficient::one(CoeffMode::Int))]);
    }
}
