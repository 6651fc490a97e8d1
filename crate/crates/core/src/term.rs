//! Terms over the operation symbols of an algebra.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("variable index {index} out of range for {len} arguments")]
    VariableOutOfRange { index: usize, len: usize },
    #[error("term syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Apply(String, Vec<Term>),
}

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn apply(symbol: impl Into<String>, children: Vec<Term>) -> Term {
        Term::Apply(symbol.into(), children)
    }

    /// Evaluates the term bottom-up in `alg` with variable `i` bound to `env[i]`.
    pub fn eval(&self, alg: &FiniteAlgebra, env: &[Element]) -> Result<Element, TermError> {
        match self {
            Term::Var(i) => env.get(*i).copied().ok_or(TermError::VariableOutOfRange {
                index: *i,
                len: env.len(),
            }),
            Term::Apply(symbol, children) => {
                let op = alg
                    .operation(symbol)
                    .ok_or_else(|| TermError::UnknownSymbol(symbol.clone()))?;
                if op.arity() != children.len() {
                    return Err(TermError::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: op.arity(),
                        found: children.len(),
                    });
                }
                let mut args = Vec::with_capacity(children.len());
                for child in children {
                    args.push(child.eval(alg, env)?);
                }
                Ok(op.apply(alg.size(), &args))
            }
        }
    }

    /// Checks symbols and arities against `alg` and that every variable is
    /// below `vars`.
    pub fn check(&self, alg: &FiniteAlgebra, vars: usize) -> Result<(), TermError> {
        match self {
            Term::Var(i) if *i < vars => Ok(()),
            Term::Var(i) => Err(TermError::VariableOutOfRange {
                index: *i,
                len: vars,
            }),
            Term::Apply(symbol, children) => {
                let op = alg
                    .operation(symbol)
                    .ok_or_else(|| TermError::UnknownSymbol(symbol.clone()))?;
                if op.arity() != children.len() {
                    return Err(TermError::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: op.arity(),
                        found: children.len(),
                    });
                }
                children.iter().try_for_each(|c| c.check(alg, vars))
            }
        }
    }

    /// Largest variable index occurring in the term, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Apply(_, children) => children.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Apply(_, children) => 1 + children.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Replaces every `Var(i)` by `args[i]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(i) => args[*i].clone(),
            Term::Apply(symbol, children) => Term::Apply(
                symbol.clone(),
                children.iter().map(|c| c.substitute(args)).collect(),
            ),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => match VAR_NAMES.get(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "v{i}"),
            },
            Term::Apply(symbol, children) => {
                write!(f, "{symbol}(")?;
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{child}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses the prefix form produced by `Display`: `f(g(x,y),z)`, with
/// variables `x`, `y`, `z`, `w` or `v<index>`.
impl FromStr for Term {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser { src: s, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, message: &str) -> TermError {
        TermError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<&str, TermError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a symbol or variable"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let name = self.ident()?.to_string();
        if self.eat('(') {
            let mut children = Vec::new();
            if !self.eat(')') {
                loop {
                    children.push(self.term()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.error("expected `,` or `)`"));
                    }
                }
            }
            return Ok(Term::Apply(name, children));
        }
        if let Some(i) = VAR_NAMES.iter().position(|v| *v == name) {
            return Ok(Term::Var(i));
        }
        if let Some(idx) = name.strip_prefix('v').and_then(|d| d.parse().ok()) {
            return Ok(Term::Var(idx));
        }
        // a bare symbol is a nullary application
        Ok(Term::Apply(name, Vec::new()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAlgebra {
        FiniteAlgebra::new("z2", 2, vec![("xor".to_string(), 2, vec![0, 1, 1, 0])]).unwrap()
    }

    fn sl2() -> FiniteAlgebra {
        FiniteAlgebra::new("sl2", 2, vec![("meet".to_string(), 2, vec![0, 0, 0, 1])]).unwrap()
    }

    #[test]
    fn eval_parity() {
        let t: Term = "xor(xor(x,y),z)".parse().unwrap();
        assert_eq!(t.eval(&z2(), &[1, 1, 0]), Ok(0));
    }

    #[test]
    fn eval_projection() {
        assert_eq!(Term::var(2).eval(&z2(), &[0, 1, 1]), Ok(1));
    }

    #[test]
    fn eval_meet() {
        let t = Term::apply("meet", vec![Term::var(0), Term::var(1)]);
        assert_eq!(t.eval(&sl2(), &[0, 1]), Ok(0));
    }

    #[test]
    fn eval_errors() {
        let alg = z2();
        assert_eq!(
            Term::apply("and", vec![]).eval(&alg, &[]),
            Err(TermError::UnknownSymbol("and".into()))
        );
        assert!(matches!(
            Term::apply("xor", vec![Term::var(0)]).eval(&alg, &[0]),
            Err(TermError::ArityMismatch { expected: 2, found: 1, .. })
        ));
        assert_eq!(
            Term::var(3).eval(&alg, &[0, 1]),
            Err(TermError::VariableOutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn display_round_trip() {
        let t: Term = "join(meet(x,y),meet(z,w))".parse().unwrap();
        assert_eq!(t.to_string(), "join(meet(x,y),meet(z,w))");
        let u: Term = "f(v7, c)".parse().unwrap();
        assert_eq!(u, Term::apply("f", vec![Term::var(7), Term::apply("c", vec![])]));
        assert_eq!(u.to_string(), "f(v7,c())");
    }

    #[test]
    fn substitution() {
        let t: Term = "xor(x,y)".parse().unwrap();
        let s = t.substitute(&[Term::var(1), "xor(x,z)".parse().unwrap()]);
        assert_eq!(s.to_string(), "xor(y,xor(x,z))");
        assert_eq!(s.max_var(), Some(2));
        assert_eq!(s.depth(), 2);
    }
}
