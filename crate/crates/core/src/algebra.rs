//! Finite algebras given by operation tables.
//!
//! The universe of an algebra of size `n` is `{0, .., n-1}`. Each operation of
//! arity `r` is stored as a flat row-major table of length `n^r`, with the
//! first argument most significant.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element of a finite universe.
pub type Element = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("universe must have at least one element")]
    EmptyUniverse,
    #[error("table length mismatch for `{symbol}`: expected {expected}, found {found}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("entry out of range in `{symbol}` at position {position}: {value} is not below {size}")]
    EntryOutOfRange {
        symbol: String,
        position: usize,
        value: u64,
        size: usize,
    },
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("table of `{symbol}` is too large ({size}^{arity} entries)")]
    TableTooLarge {
        symbol: String,
        size: usize,
        arity: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    symbol: String,
    arity: usize,
    table: Vec<Element>,
}

impl Operation {
    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Looks up the value at `args`, which must have length `arity` with
    /// every entry below the universe size `n`.
    #[inline]
    pub fn apply(&self, n: usize, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * n + a);
        self.table[idx]
    }
}

/// A finite algebra: universe `{0..size-1}` plus a list of operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<Operation>,
}

#[derive(Serialize, Deserialize)]
struct RawOperation {
    symbol: String,
    arity: usize,
    table: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    name: String,
    size: usize,
    operations: Vec<RawOperation>,
}

impl FiniteAlgebra {
    /// Builds an algebra from `(symbol, arity, table)` triples, checking every
    /// table against the universe size.
    pub fn new<S, I>(name: S, size: usize, operations: I) -> Result<Self, AlgebraError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (String, usize, Vec<u64>)>,
    {
        if size == 0 {
            return Err(AlgebraError::EmptyUniverse);
        }
        let mut seen = HashSet::new();
        let mut ops = Vec::new();
        for (symbol, arity, table) in operations {
            if !seen.insert(symbol.clone()) {
                return Err(AlgebraError::DuplicateSymbol(symbol));
            }
            let expected = u32::try_from(arity)
                .ok()
                .and_then(|a| size.checked_pow(a))
                .ok_or_else(|| AlgebraError::TableTooLarge {
                    symbol: symbol.clone(),
                    size,
                    arity,
                })?;
            if table.len() != expected {
                return Err(AlgebraError::TableLength {
                    symbol,
                    expected,
                    found: table.len(),
                });
            }
            if let Some((position, &value)) =
                table.iter().enumerate().find(|(_, &v)| v >= size as u64)
            {
                return Err(AlgebraError::EntryOutOfRange {
                    symbol,
                    position,
                    value,
                    size,
                });
            }
            ops.push(Operation {
                symbol,
                arity,
                table: table.into_iter().map(|v| v as Element).collect(),
            });
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            operations: ops,
        })
    }

    /// Parses the structured text format
    /// `{"name": .., "size": .., "operations": [{"symbol", "arity", "table"}]}`.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let raw: RawAlgebra = serde_json::from_str(text).map_err(|e| AlgebraError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        FiniteAlgebra::new(
            raw.name,
            raw.size,
            raw.operations
                .into_iter()
                .map(|op| (op.symbol, op.arity, op.table)),
        )
    }

    pub fn to_json(&self) -> String {
        let raw = RawAlgebra {
            name: self.name.clone(),
            size: self.size,
            operations: self
                .operations
                .iter()
                .map(|op| RawOperation {
                    symbol: op.symbol.clone(),
                    arity: op.arity,
                    table: op.table.iter().map(|&v| v as u64).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("algebra serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn operation(&self, symbol: &str) -> Option<&Operation> {
        self.operations.iter().find(|op| op.symbol == symbol)
    }

    /// Direct product with operations matched by symbol. Elements of the
    /// product are encoded as `a * other.size + b`.
    pub fn product(&self, other: &FiniteAlgebra) -> Option<FiniteAlgebra> {
        if self.operations.len() != other.operations.len() {
            return None;
        }
        let n = self.size * other.size;
        let mut ops = Vec::new();
        for op in &self.operations {
            let rhs = other.operation(&op.symbol)?;
            if rhs.arity != op.arity {
                return None;
            }
            let len = n.pow(op.arity as u32);
            let mut table = Vec::with_capacity(len);
            let mut args = vec![0; op.arity];
            let mut left = vec![0; op.arity];
            let mut right = vec![0; op.arity];
            for idx in 0..len {
                decode_tuple(idx, n, &mut args);
                for (i, &x) in args.iter().enumerate() {
                    left[i] = x / other.size;
                    right[i] = x % other.size;
                }
                let v = op.apply(self.size, &left) * other.size + rhs.apply(other.size, &right);
                table.push(v as u64);
            }
            ops.push((op.symbol.clone(), op.arity, table));
        }
        FiniteAlgebra::new(format!("{}x{}", self.name, other.name), n, ops).ok()
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (size {}; ", self.name, self.size)?;
        for (i, op) in self.operations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", op.symbol, op.arity)?;
        }
        write!(f, ")")
    }
}

/// Writes the mixed-radix digits of `idx` (first digit most significant) into `out`.
pub fn decode_tuple(mut idx: usize, n: usize, out: &mut [Element]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Inverse of [`decode_tuple`].
pub fn encode_tuple(n: usize, tuple: &[Element]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * n + a)
}
