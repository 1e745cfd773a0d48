//! One-point Hermitian and norm-trace codes with permutation decoding.
//!
//! The crate builds the evaluation codes, lifts curve automorphisms to
//! coordinate permutations, constructs PD sets for line bursts and pairs of
//! errors, and decodes. Small instances can be checked against brute-force
//! oracles in [`decoder`].

pub mod aut;
pub mod code;
pub mod curve;
pub mod decoder;
pub mod error;
pub mod field;
pub mod matrix;
pub mod pdset;
pub mod sim;
pub mod verify;

pub use aut::{CoordPerm, CurveAut, OrbitPartition};
pub use code::{CodeSpec, InfoForm, MonomialBasis};
pub use curve::{Axis, CurveKind, CurveSpec, Point, PointOrder, PointTable};
pub use decoder::{DecodeResult, DecodeStatus};
pub use error::{Error, Result};
pub use field::{make_field, FieldDescriptor, FieldElement, FieldSpec, Tower};
pub use pdset::{PdFamily, PdSet};
