//! Subuniverses of powers `A^width` and free algebras `F(g)` realized as the
//! subalgebra of `A^(A^g)` generated by the projections.
//!
//! Every generated element remembers the term that first produced it during
//! breadth-first saturation, so its term depth is minimal among all
//! derivations.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{decode_tuple, Element, FiniteAlgebra};
use crate::term::{Term, TermError};

/// Default bound on vector length and on closure size.
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapKind {
    VectorLength,
    ClosureSize,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapKind::VectorLength => f.write_str("vector length"),
            CapKind::ClosureSize => f.write_str("closure size"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeError {
    #[error("{kind} cap exceeded: reached {reached} with limit {limit}")]
    CapExceeded {
        kind: CapKind,
        reached: usize,
        limit: usize,
    },
    #[error("generator {index} has length {found}, expected {expected}")]
    GeneratorWidth {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} has entry {value} outside the universe")]
    GeneratorEntry { index: usize, value: Element },
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A term function: its value table together with a term producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    pub vector: Vec<Element>,
    pub term: Term,
}

/// A closed subset of `A^width`, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct Subuniverse {
    width: usize,
    elements: Vec<FreeElement>,
    index: HashMap<Vec<Element>, usize>,
}

impl Subuniverse {
    fn with_width(width: usize) -> Self {
        Subuniverse {
            width,
            elements: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn insert(&mut self, vector: Vec<Element>, term: Term) -> bool {
        if self.index.contains_key(&vector) {
            return false;
        }
        self.index.insert(vector.clone(), self.elements.len());
        self.elements.push(FreeElement { vector, term });
        true
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FreeElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &FreeElement {
        &self.elements[i]
    }

    /// Discovery index of the element with this value vector.
    pub fn position(&self, vector: &[Element]) -> Option<usize> {
        self.index.get(vector).copied()
    }

    pub fn contains(&self, vector: &[Element]) -> bool {
        self.index.contains_key(vector)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FreeElement> {
        self.elements.iter()
    }
}

/// Calls `f` on every tuple in `[0, end)^arity` having at least one
/// coordinate in `[start, end)`, in a fixed order.
pub(crate) fn for_each_new_tuple<E>(
    arity: usize,
    start: usize,
    end: usize,
    mut f: impl FnMut(&[usize]) -> Result<(), E>,
) -> Result<(), E> {
    if arity == 0 || start >= end {
        return Ok(());
    }
    let mut tuple = vec![0; arity];
    let mut lo = vec![0; arity];
    let mut hi = vec![0; arity];
    for pivot in 0..arity {
        // coordinates before the pivot are old, the pivot is new, the rest are arbitrary
        if pivot > 0 && start == 0 {
            break;
        }
        for i in 0..arity {
            (lo[i], hi[i]) = match i.cmp(&pivot) {
                std::cmp::Ordering::Less => (0, start),
                std::cmp::Ordering::Equal => (start, end),
                std::cmp::Ordering::Greater => (0, end),
            };
            tuple[i] = lo[i];
        }
        'odometer: loop {
            f(&tuple)?;
            for i in (0..arity).rev() {
                tuple[i] += 1;
                if tuple[i] < hi[i] {
                    continue 'odometer;
                }
                tuple[i] = lo[i];
            }
            break;
        }
    }
    Ok(())
}

/// Least subset of `A^width` containing `generators` and closed under every
/// operation applied coordinatewise. Terms use `Var(i)` for generator `i`.
pub fn generate_subuniverse(
    alg: &FiniteAlgebra,
    width: usize,
    generators: &[Vec<Element>],
    cap: usize,
) -> Result<Subuniverse, FreeError> {
    let n = alg.size();
    let mut sub = Subuniverse::with_width(width);
    let over_cap = |reached| FreeError::CapExceeded {
        kind: CapKind::ClosureSize,
        reached,
        limit: cap,
    };
    for (index, g) in generators.iter().enumerate() {
        if g.len() != width {
            return Err(FreeError::GeneratorWidth {
                index,
                expected: width,
                found: g.len(),
            });
        }
        if let Some(&value) = g.iter().find(|&&v| v >= n) {
            return Err(FreeError::GeneratorEntry { index, value });
        }
        sub.insert(g.clone(), Term::Var(index));
        if sub.len() > cap {
            return Err(over_cap(sub.len()));
        }
    }

    let mut buf = vec![0; width];
    let mut args = Vec::new();
    let mut start = 0;
    let mut first_round = true;
    loop {
        let end = sub.len();
        if !first_round && start == end {
            break;
        }
        for op in alg.operations() {
            if op.arity() == 0 {
                if first_round {
                    let c = op.apply(n, &[]);
                    sub.insert(vec![c; width], Term::Apply(op.symbol().to_string(), vec![]));
                    if sub.len() > cap {
                        return Err(over_cap(sub.len()));
                    }
                }
                continue;
            }
            args.resize(op.arity(), 0);
            for_each_new_tuple(op.arity(), start, end, |tuple| {
                for (pos, slot) in buf.iter_mut().enumerate() {
                    for (arg, &t) in args.iter_mut().zip(tuple) {
                        *arg = sub.elements[t].vector[pos];
                    }
                    *slot = op.apply(n, &args);
                }
                if !sub.contains(&buf) {
                    let term = Term::Apply(
                        op.symbol().to_string(),
                        tuple.iter().map(|&t| sub.elements[t].term.clone()).collect(),
                    );
                    sub.insert(buf.clone(), term);
                    if sub.len() > cap {
                        return Err(over_cap(sub.len()));
                    }
                }
                Ok(())
            })?;
        }
        first_round = false;
        start = end;
    }
    Ok(sub)
}

fn table_width(n: usize, g: usize, cap: usize) -> Result<usize, FreeError> {
    let width = u32::try_from(g)
        .ok()
        .and_then(|g| n.checked_pow(g))
        .unwrap_or(usize::MAX);
    if width > cap {
        return Err(FreeError::CapExceeded {
            kind: CapKind::VectorLength,
            reached: width,
            limit: cap,
        });
    }
    Ok(width)
}

/// The `g` projection functions `A^g -> A` as value vectors.
pub fn projections(n: usize, g: usize) -> Vec<Vec<Element>> {
    let width = n.pow(g as u32);
    let mut out = vec![Vec::with_capacity(width); g];
    let mut tuple = vec![0; g];
    for idx in 0..width {
        decode_tuple(idx, n, &mut tuple);
        for (proj, &a) in out.iter_mut().zip(&tuple) {
            proj.push(a);
        }
    }
    out
}

/// Value table of the `g`-ary term function of `t`.
pub fn term_table(
    alg: &FiniteAlgebra,
    t: &Term,
    g: usize,
    cap: usize,
) -> Result<FreeElement, FreeError> {
    t.check(alg, g)?;
    let n = alg.size();
    let width = table_width(n, g, cap)?;
    let mut tuple = vec![0; g];
    let mut vector = Vec::with_capacity(width);
    for idx in 0..width {
        decode_tuple(idx, n, &mut tuple);
        vector.push(t.eval(alg, &tuple)?);
    }
    Ok(FreeElement {
        vector,
        term: t.clone(),
    })
}

/// The free algebra on `g` generators in the variety generated by `alg`.
/// Elements `0..g` are the projections (unless `n = 1`, where they coincide).
pub fn free_algebra(alg: &FiniteAlgebra, g: usize, cap: usize) -> Result<Subuniverse, FreeError> {
    let n = alg.size();
    let width = table_width(n, g, cap)?;
    generate_subuniverse(alg, width, &projections(n, g), cap)
}
