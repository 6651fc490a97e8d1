//! Term conditions for congruence modularity: search for directed Gumm and
//! Day terms in free algebras, verification of term systems, the exponent
//! bounds, and the element chains that certify the corresponding identities.

mod search;
mod witness;

pub use search::{
    decide_modularity, find_day, find_directed_gumm, verify_day, verify_directed_gumm,
    DaySystem, DirectedGummSystem, Modularity, Search, SearchError,
};
pub use witness::{
    witness_day, witness_turt, witness_turtt, ChainLink, ChainPart, TurtInstance, WitnessChain,
    WitnessError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("{name} = {value} out of range (need {name} >= {min})")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("bound overflows for h = {h}, k = {k}")]
    Overflow { h: usize, k: usize },
}

fn check_bound_args(h: usize, k: usize) -> Result<usize, BoundError> {
    if h < 1 {
        return Err(BoundError::OutOfRange {
            name: "h",
            value: h,
            min: 1,
        });
    }
    if k < 2 {
        return Err(BoundError::OutOfRange {
            name: "k",
            value: k,
            min: 2,
        });
    }
    // 2^(h+1) - 2
    u32::try_from(h + 1)
        .ok()
        .and_then(|e| 1usize.checked_shl(e))
        .filter(|&p| p != 0)
        .map(|p| p - 2)
        .ok_or(BoundError::Overflow { h, k })
}

/// `(2^(h+1) - 2)(2k - 3)`.
pub fn q_bound(h: usize, k: usize) -> Result<usize, BoundError> {
    let base = check_bound_args(h, k)?;
    (2 * k - 3)
        .checked_mul(base)
        .ok_or(BoundError::Overflow { h, k })
}

/// `1 + (2^(h+1) - 2)(k - 1)`.
pub fn r_bound(h: usize, k: usize) -> Result<usize, BoundError> {
    let base = check_bound_args(h, k)?;
    (k - 1)
        .checked_mul(base)
        .and_then(|x| x.checked_add(1))
        .ok_or(BoundError::Overflow { h, k })
}
