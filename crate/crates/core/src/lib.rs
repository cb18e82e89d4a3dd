//! Exact computations with Z+-rings: Serre ideal lattices, prime spectra,
//! minimal primes, spectral topologies, block-ring classification and a
//! q-twisted monomial model.
//!
//! `no_std`; needs `alloc`.

#![no_std]

extern crate alloc;

pub mod basis_set;
pub mod coefficients;
pub mod gallery;
pub mod ideals;
pub mod monomial;
pub mod oracle;
pub mod spectrum;
pub mod topology;
pub mod twocat;
pub mod verdict;
pub mod zring;

pub use basis_set::BasisSet;
pub use coefficients::{CoeffMode, Coefficient, CoefficientError, Laurent};
pub use ideals::{IdealSubset, Side};
pub use verdict::Verdict;
pub use zring::{build_ring, EnumerationGuard, RingBuilder, ValidationError, ValidationReport, ZPlusRing};
