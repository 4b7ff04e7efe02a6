//! Lie-Yamaguti algebras over exact rationals: axiom checking,
//! representations, Yamaguti cohomology and truncated deformations.

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod representation;
pub mod sample;
pub mod scalar;
pub mod selftest;
mod tensor;

pub use algebra::{Axiom, AxiomReport, BinaryEntry, LyaStructure, TernaryEntry, Witness};
pub use cochain::{Cochain, CochainPair, OneCochain};
pub use error::{Error, Result};
pub use linalg::RationalMatrix;
pub use representation::{Relation, RepReport, Representation};
pub use scalar::{Scalar, Vector};
