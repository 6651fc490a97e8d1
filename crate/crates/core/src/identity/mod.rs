//! Relation identities: syntax, evaluation, checking, and the built-in catalog.

pub mod ast;
pub mod catalog;
pub mod check;
pub mod eval;
pub mod parser;

pub use ast::{IdentityStatement, Multiplicity, Quantifier, RelExpr, Relation, Sort};
pub use catalog::{catalog, lookup, CatalogError, CatalogParams, LABELS};
pub use check::{
    check_identity, random_member, CheckError, CheckMode, CheckOptions, Counterexample,
    Direction, Verdict,
};
pub use eval::{eval_expr, Env, EvalError};
pub use parser::{parse_expr, parse_identity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable `{0}` is not quantified")]
    Unquantified(String),
    #[error("duplicate quantifier `{0}`")]
    DuplicateQuantifier(String),
    #[error("at offset {offset}: {source}")]
    At {
        offset: usize,
        source: Box<IdentityError>,
    },
}
