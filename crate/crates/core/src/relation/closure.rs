//! Algebra-dependent predicates and closure operators on relations.

use crate::algebra::{Element, FiniteAlgebra};
use crate::free::for_each_new_tuple;

use super::{BinRel, RelError};

fn check_universe(alg: &FiniteAlgebra, r: &BinRel) -> Result<(), RelError> {
    if alg.size() != r.size() {
        return Err(RelError::SizeMismatch {
            left: alg.size(),
            right: r.size(),
        });
    }
    Ok(())
}

/// True iff `r` is a subuniverse of `A x A`: closed under every operation
/// applied componentwise (constants must appear on the diagonal).
pub fn is_admissible(alg: &FiniteAlgebra, r: &BinRel) -> Result<bool, RelError> {
    check_universe(alg, r)?;
    let n = alg.size();
    let pairs: Vec<(Element, Element)> = r.pairs().collect();
    for op in alg.operations() {
        let mut left = vec![0; op.arity()];
        let mut right = vec![0; op.arity()];
        let all = for_each_new_tuple(op.arity(), 0, pairs.len(), |t| {
            for (i, &p) in t.iter().enumerate() {
                (left[i], right[i]) = pairs[p];
            }
            if r.contains(op.apply(n, &left), op.apply(n, &right)) {
                Ok(())
            } else {
                Err(())
            }
        });
        if all.is_err() {
            return Ok(false);
        }
        if op.arity() == 0 {
            let c = op.apply(n, &[]);
            if !r.contains(c, c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_tolerance(alg: &FiniteAlgebra, r: &BinRel) -> Result<bool, RelError> {
    Ok(r.is_reflexive() && r.is_symmetric() && is_admissible(alg, r)?)
}

pub fn is_congruence(alg: &FiniteAlgebra, r: &BinRel) -> Result<bool, RelError> {
    Ok(is_tolerance(alg, r)? && r.is_transitive())
}

/// Subuniverse of `A x A` generated by `seed`, by semi-naive saturation over
/// the list of pairs found so far.
pub(crate) fn admissible_closure(alg: &FiniteAlgebra, seed: &BinRel) -> BinRel {
    let n = alg.size();
    let mut rel = seed.clone();
    let mut pairs: Vec<(Element, Element)> = seed.pairs().collect();
    for op in alg.operations().iter().filter(|op| op.arity() == 0) {
        let c = op.apply(n, &[]);
        if !rel.contains(c, c) {
            rel.insert(c, c);
            pairs.push((c, c));
        }
    }
    let mut start = 0;
    while start < pairs.len() {
        let end = pairs.len();
        for op in alg.operations().iter().filter(|op| op.arity() > 0) {
            let mut left = vec![0; op.arity()];
            let mut right = vec![0; op.arity()];
            let _ = for_each_new_tuple::<()>(op.arity(), start, end, |t| {
                for (i, &p) in t.iter().enumerate() {
                    (left[i], right[i]) = pairs[p];
                }
                let (x, y) = (op.apply(n, &left), op.apply(n, &right));
                if !rel.contains(x, y) {
                    rel.insert(x, y);
                    pairs.push((x, y));
                }
                Ok(())
            });
        }
        start = end;
    }
    rel
}

/// The least reflexive admissible relation containing `r`.
pub fn refl_adm_closure(alg: &FiniteAlgebra, r: &BinRel) -> Result<BinRel, RelError> {
    check_universe(alg, r)?;
    let seed = r.zip_rows(&BinRel::delta(r.size()), |x, y| x | y);
    Ok(admissible_closure(alg, &seed))
}

/// The least tolerance containing `r`: the reflexive admissible closure of
/// `r` joined with its converse.
pub fn tolerance_of(alg: &FiniteAlgebra, r: &BinRel) -> Result<BinRel, RelError> {
    check_universe(alg, r)?;
    refl_adm_closure(alg, &r.zip_rows(&r.converse(), |x, y| x | y))
}

/// The least congruence containing `r`, alternating tolerance closure and
/// transitive closure until both are stable.
pub fn congruence_generated(alg: &FiniteAlgebra, r: &BinRel) -> Result<BinRel, RelError> {
    let mut cur = tolerance_of(alg, r)?;
    loop {
        let next = tolerance_of(alg, &cur.star())?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}
