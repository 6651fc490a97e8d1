//! Relation identities over finite algebras, with directed Gumm and Day
//! term search and witness chains for congruence modular varieties.

pub mod algebra;
pub mod corpus;
pub mod free;
pub mod identity;
pub mod maltsev;
pub mod relation;
pub mod report;
pub mod term;
