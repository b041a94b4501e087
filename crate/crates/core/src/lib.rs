//! A toolkit for matroid adjoints.
//!
//! The crate builds matroids over prime fields or from explicit basis
//! lists, computes their geometric lattices of flats, verifies and
//! constructs adjoints (including the type I adjoint of a represented
//! matroid), iterates and classifies adjoint sequences, enumerates
//! extension lattices from linear subclasses, and computes derived
//! matroids both linear-algebraically and combinatorially.

pub mod adjoint;
pub mod derived;
mod error;
pub mod extension;
pub mod field;
pub mod fixtures;
pub mod iso;
pub mod lattice;
pub mod matroid;

pub use error::{Error, Result};
pub use field::{MatrixF, PrimeModulus, VectorF};
pub use matroid::{Flat, GroundSet, Matroid, SubsetMask};
