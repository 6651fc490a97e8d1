use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::relation::RelKind;

use super::IdentityError;

/// Factor count of an alternating composition; `Infinite` is `+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "INF" | "infinity" => Ok(Multiplicity::Infinite),
            _ => s
                .parse::<usize>()
                .map(Multiplicity::Finite)
                .map_err(|_| format!("expected a positive integer or `inf`, got `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelExpr {
    Var(String),
    Delta,
    Nabla,
    Intersect(Box<RelExpr>, Box<RelExpr>),
    Union(Box<RelExpr>, Box<RelExpr>),
    Compose(Box<RelExpr>, Box<RelExpr>),
    ComposeM(Box<RelExpr>, Box<RelExpr>, Multiplicity),
    Power(Box<RelExpr>, usize),
    Converse(Box<RelExpr>),
    Star(Box<RelExpr>),
    Overline(Box<RelExpr>),
    ToleranceOf(Box<RelExpr>),
    Plus(Box<RelExpr>, Box<RelExpr>),
}

impl RelExpr {
    pub fn var(name: &str) -> RelExpr {
        RelExpr::Var(name.to_string())
    }

    pub fn and(self, rhs: RelExpr) -> RelExpr {
        RelExpr::Intersect(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: RelExpr) -> RelExpr {
        RelExpr::Union(Box::new(self), Box::new(rhs))
    }

    pub fn then(self, rhs: RelExpr) -> RelExpr {
        RelExpr::Compose(Box::new(self), Box::new(rhs))
    }

    pub fn conv(self) -> RelExpr {
        RelExpr::Converse(Box::new(self))
    }

    /// Names of all variables occurring in the expression.
    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            RelExpr::Var(name) => {
                out.insert(name);
            }
            RelExpr::Delta | RelExpr::Nabla => {}
            RelExpr::Intersect(a, b)
            | RelExpr::Union(a, b)
            | RelExpr::Compose(a, b)
            | RelExpr::ComposeM(a, b, _)
            | RelExpr::Plus(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            RelExpr::Power(a, _)
            | RelExpr::Converse(a)
            | RelExpr::Star(a)
            | RelExpr::Overline(a)
            | RelExpr::ToleranceOf(a) => a.collect_vars(out),
        }
    }

    fn level(&self) -> u8 {
        match self {
            RelExpr::Plus(..) => 1,
            RelExpr::Compose(..) | RelExpr::ComposeM(..) => 2,
            RelExpr::Union(..) => 3,
            RelExpr::Intersect(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        let lvl = self.level();
        if lvl < parent || (right && lvl == parent) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for RelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lvl = self.level();
        let infix = |f: &mut fmt::Formatter<'_>, a: &RelExpr, op: &str, b: &RelExpr| {
            a.fmt_child(f, lvl, false)?;
            write!(f, " {op} ")?;
            b.fmt_child(f, lvl, true)
        };
        match self {
            RelExpr::Var(name) => f.write_str(name),
            RelExpr::Delta => f.write_str("delta"),
            RelExpr::Nabla => f.write_str("nabla"),
            RelExpr::Intersect(a, b) => infix(f, a, "&", b),
            RelExpr::Union(a, b) => infix(f, a, "|", b),
            RelExpr::Compose(a, b) => infix(f, a, ";", b),
            RelExpr::ComposeM(a, b, m) => infix(f, a, &format!(";^{m}"), b),
            RelExpr::Plus(a, b) => infix(f, a, "+", b),
            RelExpr::Power(a, h) => write!(f, "pow({a}, {h})"),
            RelExpr::Converse(a) => write!(f, "conv({a})"),
            RelExpr::Star(a) => write!(f, "star({a})"),
            RelExpr::Overline(a) => write!(f, "cl({a})"),
            RelExpr::ToleranceOf(a) => write!(f, "tol({a})"),
        }
    }
}

/// Range of a quantified variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sort {
    #[serde(rename = "REFL")]
    Refl,
    #[serde(rename = "TOL")]
    Tol,
    #[serde(rename = "CON")]
    Con,
}

impl Sort {
    pub fn kind(self) -> RelKind {
        match self {
            Sort::Refl => RelKind::ReflAdm,
            Sort::Tol => RelKind::Tolerance,
            Sort::Con => RelKind::Congruence,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Refl => "REFL",
            Sort::Tol => "TOL",
            Sort::Con => "CON",
        })
    }
}

impl FromStr for Sort {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "REFL" => Ok(Sort::Refl),
            "TOL" => Ok(Sort::Tol),
            "CON" => Ok(Sort::Con),
            other => Err(format!("unknown sort `{other}` (expected REFL, TOL or CON)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantifier {
    pub name: String,
    pub sort: Sort,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    IncludedIn,
    Equals,
}

/// `quantifiers |- lhs <= rhs` or `quantifiers |- lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdentityStatement {
    quantifiers: Vec<Quantifier>,
    relation: Relation,
    lhs: RelExpr,
    rhs: RelExpr,
}

impl IdentityStatement {
    /// Checks that quantifier names are distinct and every variable is bound.
    pub fn new(
        quantifiers: Vec<Quantifier>,
        relation: Relation,
        lhs: RelExpr,
        rhs: RelExpr,
    ) -> Result<Self, IdentityError> {
        let mut names = BTreeSet::new();
        for q in &quantifiers {
            if !names.insert(q.name.as_str()) {
                return Err(IdentityError::DuplicateQuantifier(q.name.clone()));
            }
        }
        for v in lhs.vars().into_iter().chain(rhs.vars()) {
            if !names.contains(v) {
                return Err(IdentityError::Unquantified(v.to_string()));
            }
        }
        Ok(IdentityStatement {
            quantifiers,
            relation,
            lhs,
            rhs,
        })
    }

    pub fn quantifiers(&self) -> &[Quantifier] {
        &self.quantifiers
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn lhs(&self) -> &RelExpr {
        &self.lhs
    }

    pub fn rhs(&self) -> &RelExpr {
        &self.rhs
    }

    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        self.quantifiers.iter().find(|q| q.name == name).map(|q| q.sort)
    }

    /// The same statement with `name` ranging over `sort` instead.
    pub fn with_sort(&self, name: &str, sort: Sort) -> Result<Self, IdentityError> {
        let mut out = self.clone();
        let q = out
            .quantifiers
            .iter_mut()
            .find(|q| q.name == name)
            .ok_or_else(|| IdentityError::Unquantified(name.to_string()))?;
        q.sort = sort;
        Ok(out)
    }
}

impl fmt::Display for IdentityStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.quantifiers.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", q.name, q.sort)?;
        }
        let rel = match self.relation {
            Relation::IncludedIn => "<=",
            Relation::Equals => "=",
        };
        write!(f, " |- {} {rel} {}", self.lhs, self.rhs)
    }
}
