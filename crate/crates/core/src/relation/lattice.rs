//! Lattices of reflexive-admissible relations, tolerances, and congruences.
//!
//! Every member of such a lattice is the join of the principal members it
//! contains (closures of `Δ ∪ {(a,b)}`), so the lattice is enumerated by
//! saturating `{Δ}` under joins with principals instead of filtering all
//! `2^(n²)` subsets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::closure::{congruence_generated, is_congruence, is_tolerance, refl_adm_closure};
use super::{is_admissible, tolerance_of, BinRel, RelError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelKind {
    #[serde(rename = "REFL_ADM")]
    ReflAdm,
    #[serde(rename = "TOLERANCE")]
    Tolerance,
    #[serde(rename = "CONGRUENCE")]
    Congruence,
}

impl RelKind {
    /// The least member of this kind containing `r`.
    pub fn close(self, alg: &FiniteAlgebra, r: &BinRel) -> Result<BinRel, RelError> {
        match self {
            RelKind::ReflAdm => refl_adm_closure(alg, r),
            RelKind::Tolerance => tolerance_of(alg, r),
            RelKind::Congruence => congruence_generated(alg, r),
        }
    }

    pub fn admits(self, alg: &FiniteAlgebra, r: &BinRel) -> Result<bool, RelError> {
        match self {
            RelKind::ReflAdm => Ok(r.is_reflexive() && is_admissible(alg, r)?),
            RelKind::Tolerance => is_tolerance(alg, r),
            RelKind::Congruence => is_congruence(alg, r),
        }
    }
}

impl fmt::Display for RelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelKind::ReflAdm => "REFL_ADM",
            RelKind::Tolerance => "TOLERANCE",
            RelKind::Congruence => "CONGRUENCE",
        })
    }
}

impl FromStr for RelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "refl_adm" | "refl" | "refl-adm" => Ok(RelKind::ReflAdm),
            "tolerance" | "tol" => Ok(RelKind::Tolerance),
            "congruence" | "con" => Ok(RelKind::Congruence),
            other => Err(format!("unknown relation kind `{other}`")),
        }
    }
}

/// All relations of one kind on an algebra, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelLattice {
    pub kind: RelKind,
    pub members: Vec<BinRel>,
}

impl RelLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BinRel> {
        self.members.iter()
    }

    pub fn contains(&self, r: &BinRel) -> bool {
        self.members.binary_search(r).is_ok()
    }
}

/// Enumerates every relation of `kind` on `alg`, failing once more than
/// `cap` members have been found.
pub fn enumerate(alg: &FiniteAlgebra, kind: RelKind, cap: usize) -> Result<RelLattice, RelError> {
    let n = alg.size();
    if n > super::MAX_SIZE {
        return Err(RelError::UnsupportedSize(n));
    }
    let bottom = kind.close(alg, &BinRel::delta(n))?;
    let mut principals: Vec<BinRel> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let p = kind.close(alg, &BinRel::from_pairs(n, [(a, b)]))?;
            if p != bottom && !principals.contains(&p) {
                principals.push(p);
            }
        }
    }
    let mut seen: HashSet<BinRel> = HashSet::from([bottom.clone()]);
    let mut work = vec![bottom];
    while let Some(x) = work.pop() {
        for p in &principals {
            if p.is_subset_unchecked(&x) {
                continue;
            }
            let join = kind.close(alg, &x.zip_rows(p, |u, v| u | v))?;
            if seen.insert(join.clone()) {
                if seen.len() > cap {
                    return Err(RelError::CapExceeded { limit: cap });
                }
                work.push(join);
            }
        }
    }
    let mut members: Vec<BinRel> = seen.into_iter().collect();
    members.sort();
    Ok(RelLattice { kind, members })
}
