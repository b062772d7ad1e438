//! Oriented Hantzsche-Wendt flat manifolds and their degree-2 mod-2
//! cohomology.
//!
//! An `n`-dimensional HW-manifold is encoded as an [`HWMatrix`]; the
//! [`enumerate`] module lists and classifies them, [`cohomology`] computes the
//! transgression basis and its factorizable set, and [`reconstruct`] recovers
//! the manifold from the basis-free ring invariant.

pub mod cohomology;
pub mod dict;
pub mod enumerate;
pub mod error;
pub mod f2;
pub mod hwmatrix;
pub mod io;
pub mod reconstruct;
pub mod suites;

pub use dict::DictElem;
pub use enumerate::{canonical_form, classify, enumerate_hw, CanonicalForm, Catalog};
pub use error::{Error, Result, Violation};
pub use f2::{lin_mul, quad_factor, F2Matrix, LinForm, QuadPoly, Subspace};
pub use hwmatrix::{AffineGen, HWMatrix, SubsetN};
pub use cohomology::{transgression, TransBasis};
pub use reconstruct::{invariant_of, recover, rigidity_equal, scramble, RingInvariant};
