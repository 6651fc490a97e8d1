//! Checking an identity on one finite algebra, either over the full product of
//! the quantifier lattices or over seeded random assignments.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, FiniteAlgebra};
use crate::free::DEFAULT_CAP;
use crate::relation::{enumerate, BinRel, RelError, RelLattice};

use super::ast::{IdentityStatement, Relation, Sort};
use super::eval::{eval_expr, Env, EvalError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sample { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    /// Worker threads; the verdict does not depend on it.
    pub jobs: usize,
    /// Bound on the size of each enumerated lattice.
    pub cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: CheckMode::Exhaustive,
            jobs: 1,
            cap: DEFAULT_CAP,
        }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions::default()
    }

    pub fn sample(seed: u64, count: usize) -> Self {
        CheckOptions {
            mode: CheckMode::Sample { seed, count },
            ..CheckOptions::default()
        }
    }

    pub fn with_jobs(self, jobs: usize) -> Self {
        CheckOptions {
            jobs: jobs.max(1),
            ..self
        }
    }
}

/// Which inclusion of the statement failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `lhs <= rhs` (the only direction of an inclusion statement).
    LhsInRhs,
    /// `rhs <= lhs`, the second half of an equality.
    RhsInLhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(String, BinRel)>,
    /// Least pair (row-major) in the failing side but not in the other.
    pub pair: (Element, Element),
    pub direction: Direction,
    pub lhs: BinRel,
    pub rhs: BinRel,
}

impl Counterexample {
    /// Re-evaluates both sides under the assignment and confirms the violation.
    pub fn recheck(&self, alg: &FiniteAlgebra, stmt: &IdentityStatement) -> bool {
        let env: Env = self.assignment.iter().cloned().collect();
        let (Ok(lhs), Ok(rhs)) = (
            eval_expr(alg, stmt.lhs(), &env),
            eval_expr(alg, stmt.rhs(), &env),
        ) else {
            return false;
        };
        let (a, c) = self.pair;
        match self.direction {
            Direction::LhsInRhs => lhs.contains(a, c) && !rhs.contains(a, c),
            Direction::RhsInLhs => {
                stmt.relation() == Relation::Equals && rhs.contains(a, c) && !lhs.contains(a, c)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Assignments examined, up to and including the counterexample.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("assignment space too large to enumerate")]
    TooManyAssignments,
}

fn least_difference(a: &BinRel, b: &BinRel) -> Option<(Element, Element)> {
    a.pairs().find(|&(x, y)| !b.contains(x, y))
}

/// Evaluates the statement under `env`; returns a violation if any.
fn violation(
    alg: &FiniteAlgebra,
    stmt: &IdentityStatement,
    env: &Env,
) -> Result<Option<Counterexample>, EvalError> {
    let lhs = eval_expr(alg, stmt.lhs(), env)?;
    let rhs = eval_expr(alg, stmt.rhs(), env)?;
    let found = match least_difference(&lhs, &rhs) {
        Some(pair) => Some((pair, Direction::LhsInRhs)),
        None if stmt.relation() == Relation::Equals => {
            least_difference(&rhs, &lhs).map(|pair| (pair, Direction::RhsInLhs))
        }
        None => None,
    };
    Ok(found.map(|(pair, direction)| Counterexample {
        assignment: env.clone().into_vec(),
        pair,
        direction,
        lhs,
        rhs,
    }))
}

/// Scans assignments `0..total` in contiguous chunks, one per worker, and
/// returns the least failing index with its counterexample.
fn scan<F>(
    alg: &FiniteAlgebra,
    stmt: &IdentityStatement,
    total: u64,
    jobs: usize,
    assign: F,
) -> Result<Option<(u64, Counterexample)>, CheckError>
where
    F: Fn(u64, &mut Env) + Sync,
{
    let fresh_env = || -> Env {
        stmt.quantifiers()
            .iter()
            .map(|q| (q.name.clone(), BinRel::delta(alg.size())))
            .collect()
    };
    let run = |lo: u64, hi: u64| -> Result<Option<(u64, Counterexample)>, CheckError> {
        let mut env = fresh_env();
        for idx in lo..hi {
            assign(idx, &mut env);
            if let Some(cex) = violation(alg, stmt, &env)? {
                return Ok(Some((idx, cex)));
            }
        }
        Ok(None)
    };
    let jobs = (jobs.max(1) as u64).min(total.max(1));
    if jobs == 1 {
        return run(0, total);
    }
    let chunk = total.div_ceil(jobs);
    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let lo = j * chunk;
                let hi = ((j + 1) * chunk).min(total);
                let run = &run;
                s.spawn(move || run(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker worker panicked"))
            .collect()
    });
    let mut best: Option<(u64, Counterexample)> = None;
    for r in results {
        if let Some((idx, cex)) = r? {
            if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                best = Some((idx, cex));
            }
        }
    }
    Ok(best)
}

/// A uniformly random relation (each bit with probability 1/2, row-major)
/// closed to the sort.
pub fn random_member(
    alg: &FiniteAlgebra,
    sort: Sort,
    rng: &mut impl Rng,
) -> Result<BinRel, RelError> {
    let n = alg.size();
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen()).collect();
    sort.kind().close(alg, &BinRel::from_bits(n, &bits))
}

/// Checks `stmt` on `alg`.
///
/// Exhaustive mode walks the product of the quantifiers' lattices with the
/// first quantifier most significant, each lattice in canonical order, and
/// reports the first violation in that order regardless of `jobs`.
pub fn check_identity(
    alg: &FiniteAlgebra,
    stmt: &IdentityStatement,
    opts: &CheckOptions,
) -> Result<Verdict, CheckError> {
    let verdict = |total: u64, hit: Option<(u64, Counterexample)>| match hit {
        Some((idx, cex)) => Verdict {
            holds: false,
            checked: idx + 1,
            counterexample: Some(cex),
        },
        None => Verdict {
            holds: true,
            checked: total,
            counterexample: None,
        },
    };
    match opts.mode {
        CheckMode::Exhaustive => {
            let mut lattices: BTreeMap<Sort, RelLattice> = BTreeMap::new();
            for q in stmt.quantifiers() {
                if !lattices.contains_key(&q.sort) {
                    lattices.insert(q.sort, enumerate(alg, q.sort.kind(), opts.cap)?);
                }
            }
            let ranges: Vec<&RelLattice> =
                stmt.quantifiers().iter().map(|q| &lattices[&q.sort]).collect();
            let total = ranges
                .iter()
                .try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64))
                .ok_or(CheckError::TooManyAssignments)?;
            let hit = scan(alg, stmt, total, opts.jobs, |mut idx, env| {
                for (i, lat) in ranges.iter().enumerate().rev() {
                    let len = lat.len() as u64;
                    env.set_at(i, lat.members[(idx % len) as usize].clone());
                    idx /= len;
                }
            })?;
            Ok(verdict(total, hit))
        }
        CheckMode::Sample { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Repeated draws are checked once, in order of first occurrence,
            // so the least failing distinct sample is the least failing draw.
            let mut first_seen: HashMap<Vec<BinRel>, u64> = HashMap::new();
            let mut distinct: Vec<(u64, Vec<BinRel>)> = Vec::new();
            for idx in 0..count as u64 {
                let mut one = Vec::with_capacity(stmt.quantifiers().len());
                for q in stmt.quantifiers() {
                    one.push(random_member(alg, q.sort, &mut rng)?);
                }
                if let Entry::Vacant(slot) = first_seen.entry(one) {
                    distinct.push((idx, slot.key().clone()));
                    slot.insert(idx);
                }
            }
            let hit = scan(alg, stmt, distinct.len() as u64, opts.jobs, |idx, env| {
                for (i, r) in distinct[idx as usize].1.iter().enumerate() {
                    env.set_at(i, r.clone());
                }
            })?;
            let hit = hit.map(|(idx, cex)| (distinct[idx as usize].0, cex));
            Ok(verdict(count as u64, hit))
        }
    }
}
