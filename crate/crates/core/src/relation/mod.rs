//! Binary relations over a finite universe and the operators the identity
//! language is built from: composition, converse, intersection, union,
//! alternating composition `;_m`, powers, transitive closure, and `+`.
//!
//! Closures that depend on the algebra (admissible closure, generated
//! tolerance and congruence) live in [`closure`]; lattices of
//! reflexive-admissible relations, tolerances and congruences in [`lattice`].

mod binrel;
pub mod closure;
pub mod lattice;

use thiserror::Error;

pub use binrel::{BinRel, MAX_SIZE};
pub use closure::{
    congruence_generated, is_admissible, is_congruence, is_tolerance, refl_adm_closure,
    tolerance_of,
};
pub use lattice::{enumerate, RelKind, RelLattice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelError {
    #[error("relation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("alternating composition needs at least one factor")]
    ZeroFactors,
    #[error("universe size {0} is not supported for relations (1..=64)")]
    UnsupportedSize(usize),
    #[error("bad relation literal `{text}`: {message}")]
    Literal { text: String, message: String },
    #[error("lattice cap exceeded: more than {limit} members")]
    CapExceeded { limit: usize },
}
