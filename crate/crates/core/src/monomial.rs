//! q-twisted monomial rings on the monoid `N^n`.
//!
//! Basis elements are monomials `b_a`, `a ∈ N^n`, with
//! `b_a b_b = q^{κ(a,b)} b_{a+b}` for the bilinear form `κ(a,b) = Σ Λ_ij a_i b_j`.
//! Bilinearity makes the 2-cocycle identity automatic, so the product is
//! associative for every integer matrix `Λ`. This is a model: the ideals it
//! handles are monoid ideals, in particular face ideals `⟨e_i : i ∈ V⟩`.
//!
//! Variables are 0-based here.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::basis_set::BasisSet;
use crate::coefficients::{CoeffMode, Coefficient};
use crate::verdict::Verdict;
use crate::zring::{RingBuilder, ZPlusRing};

/// An exponent vector in `N^n`.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("twist matrix must be {n}x{n}")]
    BadTwist { n: usize },
    #[error("variable {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("face contains every variable")]
    FullFace,
    #[error("monoid ideal contains the unit monomial")]
    ImproperIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRing {
    name: String,
    twist: Vec<Vec<i64>>,
    names: Vec<String>,
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| String::from(*s)).collect()
    } else {
        (1..=n).map(|i| alloc::format!("x{i}")).collect()
    }
}

impl MonomialRing {
    pub fn new(name: impl Into<String>, twist: Vec<Vec<i64>>) -> Result<Self, MonomialError> {
        let n = twist.len();
        if twist.iter().any(|row| row.len() != n) {
            return Err(MonomialError::BadTwist { n });
        }
        Ok(MonomialRing { name: name.into(), names: default_names(n), twist })
    }

    /// Quantum affine `n`-space: `x_j x_i = q x_i x_j` for `i < j`.
    pub fn quantum_affine(n: usize) -> Self {
        let twist = (0..n).map(|i| (0..n).map(|j| i64::from(i > j)).collect()).collect();
        MonomialRing { name: alloc::format!("qaffine{n}"), names: default_names(n), twist }
    }

    pub fn quantum_plane() -> Self {
        let mut m = Self::quantum_affine(2);
        m.name = String::from("qplane");
        m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> usize {
        self.twist.len()
    }

    pub fn twist(&self) -> &[Vec<i64>] {
        &self.twist
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    fn check_dim(&self, a: &[u32]) -> Result<(), MonomialError> {
        if a.len() != self.vars() {
            return Err(MonomialError::DimensionMismatch { expected: self.vars(), found: a.len() });
        }
        Ok(())
    }

    pub fn kappa(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut k = 0;
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                k += self.twist[i][j] * i64::from(ai) * i64::from(bj);
            }
        }
        k
    }

    /// `b_a b_b = q^k b_c`, returned as `(k, c)`.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<(i64, Exponent), MonomialError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok((self.kappa(a, b), a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    /// `"1"` for the unit monomial, otherwise e.g. `x2y`; exponents after a
    /// name ending in a digit are written `x1_e2`.
    pub fn monomial_label(&self, a: &[u32]) -> String {
        let mut out = String::new();
        for (name, &e) in self.names.iter().zip(a) {
            if e == 0 {
                continue;
            }
            out.push_str(name);
            if e > 1 {
                if name.ends_with(|c: char| c.is_ascii_digit()) {
                    out.push_str("_e");
                }
                out.push_str(&alloc::format!("{e}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Monomials of total degree `≤ d`: by degree, then descending lex.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        for k in 0..=d {
            compositions(self.vars(), k, &mut Vec::new(), &mut out);
        }
        out
    }

    /// The finite ring on monomials of degree `≤ d`; longer products are zero.
    ///
    /// This is the quotient by the Serre ideal of monomials of degree `> d`.
    pub fn truncate_to_ring(&self, d: u32) -> ZPlusRing {
        let basis = self.monomials_up_to(d);
        let labels = basis.iter().map(|a| self.monomial_label(a)).collect();
        let mut builder =
            RingBuilder::new(alloc::format!("{}-trunc-{d}", self.name), CoeffMode::Laurent, labels);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let sum: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(k) = basis.iter().position(|c| *c == sum) {
                    let coeff = Coefficient::monomial(CoeffMode::Laurent, 1u32, self.kappa(a, b))
                        .expect("Laurent mode accepts any exponent");
                    builder.product(i, j, [(k, coeff)]);
                }
            }
        }
        builder.set_units([0]);
        builder.build().expect("bilinear twist gives an associative truncation")
    }

    /// Quotient by the face ideal of `face`: the ring on the other variables
    /// with the restricted twist. Variable names are kept.
    pub fn face_quotient(&self, face: &[usize]) -> Result<MonomialRing, MonomialError> {
        let n = self.vars();
        if let Some(&index) = face.iter().find(|&&i| i >= n) {
            return Err(MonomialError::VariableOutOfRange { index, n });
        }
        let keep: Vec<usize> = (0..n).filter(|i| !face.contains(i)).collect();
        if keep.is_empty() {
            return Err(MonomialError::FullFace);
        }
        let twist = keep.iter().map(|&i| keep.iter().map(|&j| self.twist[i][j]).collect()).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let name = if face.is_empty() {
            self.name.clone()
        } else {
            let mut f: Vec<usize> = face.to_vec();
            f.sort_unstable();
            f.dedup();
            let killed: Vec<&str> = f.iter().map(|&i| self.names[i].as_str()).collect();
            alloc::format!("{}/({})", self.name, killed.join(","))
        };
        Ok(MonomialRing { name, twist, names })
    }
}

// all vectors of length n summing to k, first coordinate descending
fn compositions(n: usize, k: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
    if n == 0 {
        if k == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if n == 1 {
        prefix.push(k);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=k).rev() {
        prefix.push(first);
        compositions(n - 1, k - first, prefix, out);
        prefix.pop();
    }
}

fn dominates(a: &[u32], g: &[u32]) -> bool {
    a.iter().zip(g).all(|(x, y)| x >= y)
}

/// An upward-closed subset `∪_g (g + N^n)` of `N^n`, stored by its
/// Dickson-minimal generators in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidIdeal {
    n: usize,
    gens: Vec<Exponent>,
}

/// Result of the face-ideal primality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidPrimality {
    /// The ideal is the face ideal of these variables.
    Prime { face: Vec<usize> },
    /// `left + right ∈ S` with neither summand in `S`.
    NotPrime { left: Exponent, right: Exponent },
}

impl MonoidPrimality {
    pub fn is_prime(&self) -> bool {
        matches!(self, MonoidPrimality::Prime { .. })
    }
}

pub fn build_monoid_ideal(n: usize, gens: &[Exponent]) -> Result<MonoidIdeal, MonomialError> {
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(MonomialError::DimensionMismatch { expected: n, found: g.len() });
    }
    let mut sorted: Vec<Exponent> = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let minimal = sorted
        .iter()
        .filter(|g| !sorted.iter().any(|h| h != *g && dominates(g, h)))
        .cloned()
        .collect();
    Ok(MonoidIdeal { n, gens: minimal })
}

impl MonoidIdeal {
    /// `⟨e_i : i ∈ face⟩`.
    pub fn face_ideal(n: usize, face: &[usize]) -> Result<Self, MonomialError> {
        let mut gens = Vec::new();
        for &i in face {
            if i >= n {
                return Err(MonomialError::VariableOutOfRange { index: i, n });
            }
            let mut e = alloc::vec![0; n];
            e[i] = 1;
            gens.push(e);
        }
        build_monoid_ideal(n, &gens)
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(&alloc::vec![0; self.n])
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        a.len() == self.n && self.gens.iter().any(|g| dominates(a, g))
    }

    /// Prime iff every generator involves a variable `i` with `e_i ∈ S`; then
    /// `S` is the face ideal of those variables. Otherwise a generator `g`
    /// that misses them splits as `e_j + (g - e_j)` at its first positive
    /// coordinate `j`, and neither summand lies in `S` by minimality.
    pub fn is_prime(&self) -> Result<MonoidPrimality, MonomialError> {
        if !self.is_proper() {
            return Err(MonomialError::ImproperIdeal);
        }
        let face: Vec<usize> = (0..self.n).filter(|&i| self.contains(&unit_vector(self.n, i))).collect();
        for g in &self.gens {
            if face.iter().all(|&i| g[i] == 0) {
                let j = g.iter().position(|&x| x > 0).expect("proper ideal has nonzero generators");
                let left = unit_vector(self.n, j);
                let mut right = g.clone();
                right[j] -= 1;
                return Ok(MonoidPrimality::NotPrime { left, right });
            }
        }
        Ok(MonoidPrimality::Prime { face })
    }

    /// Members among the basis of `ring.truncate_to_ring(d)`.
    pub fn subset_in_truncation(&self, ring: &MonomialRing, d: u32) -> BasisSet {
        let basis = ring.monomials_up_to(d);
        BasisSet::from_indices(basis.len(), (0..basis.len()).filter(|&i| self.contains(&basis[i])))
    }
}

fn unit_vector(n: usize, i: usize) -> Exponent {
    let mut e = alloc::vec![0; n];
    e[i] = 1;
    e
}

/// All vectors of `{0..bound}^n`, lexicographic.
pub fn box_points(n: usize, bound: u32) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = alloc::vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Brute-force primality on the box `{0..bound}^n`: for all `a, b` with
/// `a + b` in the box, `a + b ∈ S` forces `a ∈ S` or `b ∈ S`.
pub fn box_primality(ideal: &MonoidIdeal, bound: u32) -> Verdict<(Exponent, Exponent)> {
    let points = box_points(ideal.vars(), bound);
    let member: Vec<bool> = points.iter().map(|p| ideal.contains(p)).collect();
    // points are in lexicographic order, i.e. mixed radix `bound + 1`
    let index = |p: &[u32]| p.iter().fold(0usize, |acc, &x| acc * (bound as usize + 1) + x as usize);
    for (i, a) in points.iter().enumerate() {
        if member[i] {
            continue;
        }
        for (j, b) in points.iter().enumerate() {
            if member[j] {
                continue;
            }
            let sum: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&x| x <= bound) && member[index(&sum)] {
                return Verdict::Fails((a.clone(), b.clone()));
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::quotient_ring;
    use alloc::vec;

    #[test]
    fn dickson_normal_form() {
        assert_eq!(build_monoid_ideal(2, &[vec![3, 1], vec![2, 0]]).unwrap().generators(), &[vec![2, 0]]);
        assert_eq!(
            build_monoid_ideal(2, &[vec![1, 0], vec![0, 1]]).unwrap().generators(),
            &[vec![0, 1], vec![1, 0]]
        );
        assert!(build_monoid_ideal(2, &[]).unwrap().is_zero());
        assert_eq!(
            build_monoid_ideal(2, &[vec![1]]),
            Err(MonomialError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn membership() {
        let s = build_monoid_ideal(2, &[vec![2, 0]]).unwrap();
        assert!(s.contains(&[3, 1]));
        assert!(!s.contains(&[1, 1]));
        assert!(!build_monoid_ideal(2, &[]).unwrap().contains(&[5, 5]));
    }

    #[test]
    fn primality_examples() {
        let p = build_monoid_ideal(2, &[vec![1, 0]]).unwrap();
        assert_eq!(p.is_prime().unwrap(), MonoidPrimality::Prime { face: vec![0] });
        let s = build_monoid_ideal(2, &[vec![2, 0]]).unwrap();
        assert_eq!(
            s.is_prime().unwrap(),
            MonoidPrimality::NotPrime { left: vec![1, 0], right: vec![1, 0] }
        );
        let t = build_monoid_ideal(2, &[vec![1, 1]]).unwrap();
        assert_eq!(
            t.is_prime().unwrap(),
            MonoidPrimality::NotPrime { left: vec![1, 0], right: vec![0, 1] }
        );
        assert!(build_monoid_ideal(2, &[]).unwrap().is_prime().unwrap().is_prime());
        assert_eq!(
            build_monoid_ideal(1, &[vec![0]]).unwrap().is_prime(),
            Err(MonomialError::ImproperIdeal)
        );
        for s in [p, s, t] {
            assert_eq!(s.is_prime().unwrap().is_prime(), box_primality(&s, 4).holds());
        }
    }

    #[test]
    fn truncation_examples() {
        let m = MonomialRing::quantum_plane();
        let r1 = m.truncate_to_ring(1);
        assert_eq!(r1.labels(), &["1", "x", "y"]);
        assert!(r1.product(2, 1).is_empty());
        let r2 = m.truncate_to_ring(2);
        assert_eq!(r2.labels(), &["1", "x", "y", "x2", "xy", "y2"]);
        let xy = r2.index_of("xy").unwrap();
        let q = Coefficient::monomial(CoeffMode::Laurent, 1u32, 1).unwrap();
        assert_eq!(r2.product(2, 1), &[(xy, q)]);
        assert_eq!(r2.product(1, 2), &[(xy, Coefficient::one(CoeffMode::Laurent))]);
        assert_eq!(m.truncate_to_ring(0).labels(), &["1"]);
    }

    #[test]
    fn labels_for_many_variables() {
        let m = MonomialRing::quantum_affine(4);
        assert_eq!(m.monomial_label(&[2, 0, 1, 0]), "x1_e2x3");
        assert_eq!(MonomialRing::quantum_affine(3).monomial_label(&[0, 3, 1]), "y3z");
    }

    #[test]
    fn face_quotient_examples() {
        let m3 = MonomialRing::quantum_affine(3);
        let q = m3.face_quotient(&[0]).unwrap();
        assert_eq!(q.twist(), MonomialRing::quantum_affine(2).twist());
        assert_eq!(q.variable_names(), &["y", "z"]);
        let plane = MonomialRing::quantum_plane();
        let line = plane.face_quotient(&[1]).unwrap();
        assert_eq!(line.twist(), &[vec![0]]);
        assert_eq!(plane.face_quotient(&[]).unwrap(), plane);
        assert_eq!(plane.face_quotient(&[0, 1]), Err(MonomialError::FullFace));
    }

    #[test]
    fn truncated_quotient_by_face() {
        let m = MonomialRing::quantum_plane();
        let face = MonoidIdeal::face_ideal(2, &[0]).unwrap();
        let r = m.truncate_to_ring(2);
        let q = quotient_ring(&r, &face.subset_in_truncation(&m, 2)).unwrap();
        assert_eq!(q.labels(), &["1", "y", "y2"]);
        let direct = m.face_quotient(&[0]).unwrap().truncate_to_ring(2);
        assert_eq!(direct.labels(), q.labels());
        for a in 0..q.len() {
            for b in 0..q.len() {
                assert_eq!(direct.product(a, b), q.product(a, b));
            }
        }
    }
}
