//! Built-in identities, instantiated for given parameters.
//!
//! Every entry is written in the textual syntax and parsed, so the catalog
//! exercises the same front end as user input. Labels ending in `.eq` are
//! the equivalent equality forms of the preceding inclusion.

use super::ast::{IdentityStatement, Multiplicity};
use super::parser::parse_identity;
use super::IdentityError;
use crate::maltsev::{q_bound, r_bound, BoundError};

/// All labels, in catalog order.
pub const LABELS: &[&str] = &[
    "(1.1)",
    "(1.2)",
    "(1.3)",
    "(1.4)",
    "(1.5)",
    "(dist-variant)",
    "(mperm-variant)",
    "(turt)",
    "(turtt)",
    "(a1)",
    "(a2)",
    "(a3)",
    "(A1)",
    "(A1.eq)",
    "(A2)",
    "(A3)",
    "(B1)",
    "(B1.eq)",
    "(B2)",
    "(B2.eq)",
    "(C1)",
    "(C2)",
    "(C2.eq)",
    "(C3)",
    "(C4)",
    "(C4.eq)",
    "(D1)",
    "(D2)",
    "(D3)",
    "(D4)",
    "(D5)",
    "(day)",
];

/// Largest accepted `h`; `2^h` factors are materialized by the checker.
pub const MAX_H: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogParams {
    /// Number of directed Gumm (or Day) terms beyond the first.
    pub k: usize,
    pub h: usize,
    pub m: Multiplicity,
    pub ell: usize,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            k: 2,
            h: 1,
            m: Multiplicity::Finite(2),
            ell: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("parameter {name} = {value} out of range ({range})")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("catalog entry {label} does not parse: {source}")]
    Internal {
        label: String,
        source: IdentityError,
    },
}

impl CatalogParams {
    fn validate(&self) -> Result<(), CatalogError> {
        let bad = |name, value: String, range| {
            Err(CatalogError::OutOfRange { name, value, range })
        };
        if self.k < 2 {
            return bad("k", self.k.to_string(), "k >= 2");
        }
        if !(1..=MAX_H).contains(&self.h) {
            return bad("h", self.h.to_string(), "1 <= h <= 16");
        }
        if let Multiplicity::Finite(m) = self.m {
            if m < 2 {
                return bad("m", m.to_string(), "m >= 2 or inf");
            }
        }
        if self.ell < 1 {
            return bad("ell", self.ell.to_string(), "ell >= 1");
        }
        Ok(())
    }
}

fn texts(p: &CatalogParams) -> Result<Vec<(&'static str, String)>, CatalogError> {
    p.validate()?;
    let k = p.k;
    let m = p.m;
    let two_h = 1usize << p.h;
    let q = q_bound(p.h, k)?;
    let r = r_bound(p.h, k)?;
    let ss: Vec<String> = (1..=p.ell).map(|i| format!("S{i}")).collect();
    let s_quants: String = ss.iter().map(|s| format!(", {s}:REFL")).collect();
    let s_chain = ss.join(" ; ");
    let lambda = ss
        .iter()
        .map(|s| format!("tol(R) & {s}"))
        .collect::<Vec<_>>()
        .join(" ; ");
    let turt_lhs = format!("R & (V ; W) & ({s_chain})");

    let th_s = "Theta:TOL, S:REFL |-";
    let th_st = "Theta:TOL, S:REFL, T:REFL |-";
    let r_st = "R:REFL, S:REFL, T:REFL |-";
    let tail = "(tol(R) & S + tol(R) & T)";
    let d4 = [
        "T ; S",
        "T ; conv(T)",
        "conv(S) ; S",
        "conv(S) ; T",
        "conv(S) ; conv(T)",
        "conv(T) ; S",
        "conv(T) ; T",
    ]
    .map(|x| format!("Theta & ({x})"))
    .join(" + ");

    Ok(vec![
        ("(1.1)", format!("{th_s} Theta & (S ; S) <= star(Theta & S)")),
        ("(1.2)", format!("{th_s} Theta & star(S) <= star(Theta & S)")),
        (
            "(1.3)",
            format!("{th_s} Theta & (S ; conv(S)) <= star(Theta & S ; Theta & conv(S))"),
        ),
        (
            "(1.4)",
            format!(
                "{th_st} Theta & star(S ; T) <= Theta & cl(S | T) ; star(Theta & S ; Theta & T)"
            ),
        ),
        (
            "(1.5)",
            format!(
                "{th_st} Theta & (S ; T) <= Theta & cl(conv(S) | T) ; star(Theta & S ; Theta & T)"
            ),
        ),
        (
            "(dist-variant)",
            format!("{th_st} Theta & (S ; conv(T)) <= star(Theta & S ; Theta & conv(T))"),
        ),
        (
            "(mperm-variant)",
            format!("{th_s} Theta & (S ; S) <= star(Theta & conv(S))"),
        ),
        (
            "(turt)",
            format!(
                "R:REFL, V:REFL, W:REFL{s_quants} |- {turt_lhs} <= R & cl(V | W) ; pow({lambda}, {})",
                2 * k - 3
            ),
        ),
        (
            "(turtt)",
            format!(
                "R:REFL, V:REFL, W:REFL{s_quants} |- {turt_lhs} <= R & conv(R) & cl(conv(V) | W) ; pow({lambda}, {})",
                k - 1
            ),
        ),
        (
            "(a1)",
            format!("{th_s} Theta & (S ;^{two_h} S) <= pow(Theta & S, {})", q + 1),
        ),
        (
            "(a2)",
            format!(
                "R:REFL, S:REFL, T:REFL |- R & (S ;^{two_h} T) <= R & cl(S | T) ; (tol(R) & S ;^{q} tol(R) & T)"
            ),
        ),
        (
            "(a3)",
            format!(
                "{th_s} Theta & (S ;^{two_h} conv(S)) <= Theta & conv(S) ;^{r} Theta & S"
            ),
        ),
        ("(A1)", format!("{th_s} Theta & (S ;^{m} S) <= star(Theta & S)")),
        (
            "(A1.eq)",
            format!("{th_s} star(Theta & (S ;^{m} S)) = star(Theta & S)"),
        ),
        (
            "(A2)",
            format!("{th_s} Theta & (S ;^{m} S) <= Theta & S + Theta & conv(S)"),
        ),
        (
            "(A3)",
            format!("{th_s} Theta & (S ;^{m} S) <= star(Theta & (conv(S) ; S))"),
        ),
        (
            "(B1)",
            format!("{th_s} Theta & (S ;^{m} conv(S)) <= Theta & S + Theta & conv(S)"),
        ),
        (
            "(B1.eq)",
            format!("{th_s} star(Theta & (S ;^{m} conv(S))) = Theta & S + Theta & conv(S)"),
        ),
        (
            "(B2)",
            format!("{th_s} Theta & (S ;^{m} conv(S)) <= star(Theta & (conv(S) ; S))"),
        ),
        (
            "(B2.eq)",
            format!("{th_s} star(Theta & (S ;^{m} conv(S))) = star(Theta & (conv(S) ; S))"),
        ),
        (
            "(C1)",
            format!("{r_st} R & (S ;^{m} T) <= R & cl(S | T) ; {tail}"),
        ),
        (
            "(C2)",
            format!("{th_st} Theta & (S ;^{m} T) <= star(Theta & cl(S | T))"),
        ),
        (
            "(C2.eq)",
            format!("{th_st} star(Theta & (S ;^{m} T)) = star(Theta & cl(S | T))"),
        ),
        (
            "(C3)",
            format!("{r_st} R & (S ;^{m} T) <= R & (T ; cl(S | T)) ; {tail}"),
        ),
        (
            "(C4)",
            format!("{th_st} Theta & (S ;^{m} T) <= star(Theta & (T ; S))"),
        ),
        (
            "(C4.eq)",
            format!("{th_st} star(Theta & (S ;^{m} T)) = star(Theta & (T ; S))"),
        ),
        (
            "(D1)",
            format!("{r_st} R & (S ;^{m} T) <= R & cl(conv(S) | T) ; {tail}"),
        ),
        (
            "(D2)",
            format!(
                "{r_st} R & (S ;^{m} T) <= R & cl(S | T) & cl(conv(S) | T) & cl(S | conv(T)) & cl(conv(S) | conv(T)) ; {tail}"
            ),
        ),
        (
            "(D3)",
            format!(
                "{r_st} R & (S ;^{m} T) <= R & cl(S | conv(S) | T | conv(T)) ; (tol(R) & S + tol(R) & T + tol(R) & conv(S) + tol(R) & conv(T))"
            ),
        ),
        ("(D4)", format!("{th_st} Theta & (S ;^{m} T) <= {d4}")),
        (
            "(D5)",
            format!(
                "{th_st} Theta & (S ;^{m} T) <= Theta & ((T + conv(T)) ; S) + Theta & (conv(S) ; S) + Theta & (conv(S) ; (T + conv(T)))"
            ),
        ),
        (
            "(day)",
            format!(
                "{th_s} Theta & (S ; conv(S)) <= Theta & S ;^{} Theta & conv(S)",
                k - 1
            ),
        ),
    ])
}

fn parse_entry(label: &str, text: &str) -> Result<IdentityStatement, CatalogError> {
    parse_identity(text).map_err(|source| CatalogError::Internal {
        label: label.to_string(),
        source,
    })
}

/// Every catalog identity, instantiated for `params`.
pub fn catalog(params: &CatalogParams) -> Result<Vec<(String, IdentityStatement)>, CatalogError> {
    texts(params)?
        .into_iter()
        .map(|(label, text)| Ok((label.to_string(), parse_entry(label, &text)?)))
        .collect()
}

/// One catalog identity. The parentheses around the label are optional.
pub fn lookup(label: &str, params: &CatalogParams) -> Result<IdentityStatement, CatalogError> {
    let wanted = if label.starts_with('(') {
        label.to_string()
    } else {
        format!("({label})")
    };
    let (label, text) = texts(params)?
        .into_iter()
        .find(|(l, _)| *l == wanted)
        .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))?;
    parse_entry(label, &text)
}
