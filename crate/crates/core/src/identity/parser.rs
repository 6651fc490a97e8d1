//! Recursive-descent parser for identity statements.
//!
//! ```text
//! stmt    := quants "|-" expr ("<=" | "=") expr
//! quants  := NAME ":" SORT ("," NAME ":" SORT)*
//! expr    := plus
//! plus    := compose ("+" compose)*
//! compose := union ((";" | ";^" (INT | "inf")) union)*
//! union   := inter ("|" inter)*
//! inter   := atom ("&" atom)*
//! atom    := "delta" | "nabla" | NAME | "(" expr ")"
//!          | ("conv" | "star" | "cl" | "tol") "(" expr ")"
//!          | "pow" "(" expr "," INT ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::ast::{IdentityStatement, Multiplicity, Quantifier, RelExpr, Relation, Sort};
use super::IdentityError;

const RESERVED: [&str; 8] = ["delta", "nabla", "conv", "star", "cl", "tol", "pow", "inf"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Amp,
    Pipe,
    Semi,
    SemiCaret,
    Plus,
    LParen,
    RParen,
    Comma,
    Colon,
    Turnstile,
    Le,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::SemiCaret => f.write_str("`;^`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, IdentityError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| src[i..].starts_with(s);
        let tok = if two("|-") {
            i += 2;
            Tok::Turnstile
        } else if two(";^") {
            i += 2;
            Tok::SemiCaret
        } else if two("<=") {
            i += 2;
            Tok::Le
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| IdentityError::Syntax {
                offset: start,
                message: "integer too large".into(),
            })?;
            Tok::Int(n)
        } else {
            i += 1;
            match c {
                b'&' => Tok::Amp,
                b'|' => Tok::Pipe,
                b';' => Tok::Semi,
                b'+' => Tok::Plus,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b':' => Tok::Colon,
                b'=' => Tok::Eq,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(IdentityError::Syntax {
                        offset: start,
                        message: format!("unexpected character `{ch}`"),
                    });
                }
            }
        };
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> IdentityError {
        IdentityError::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), IdentityError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn name(&mut self) -> Result<String, IdentityError> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("a variable name")),
        }
    }

    fn positive(&mut self) -> Result<usize, IdentityError> {
        match self.peek() {
            Tok::Int(0) => Err(IdentityError::Syntax {
                offset: self.offset(),
                message: "factor count must be at least 1".into(),
            }),
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("a positive integer")),
        }
    }

    fn quantifiers(&mut self) -> Result<Vec<Quantifier>, IdentityError> {
        let mut out = Vec::new();
        loop {
            let at = self.offset();
            let name = self.name()?;
            self.expect(Tok::Colon)?;
            let sort_at = self.offset();
            let sort = match self.bump() {
                Tok::Ident(s) => s.parse::<Sort>().map_err(|message| IdentityError::Syntax {
                    offset: sort_at,
                    message,
                })?,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("a sort (REFL, TOL or CON)"));
                }
            };
            if !self.names.insert(name.clone()) {
                return Err(IdentityError::At {
                    offset: at,
                    source: Box::new(IdentityError::DuplicateQuantifier(name)),
                });
            }
            out.push(Quantifier { name, sort });
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn expr(&mut self) -> Result<RelExpr, IdentityError> {
        let mut lhs = self.compose()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.compose()?;
            lhs = RelExpr::Plus(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn compose(&mut self) -> Result<RelExpr, IdentityError> {
        let mut lhs = self.union()?;
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    let rhs = self.union()?;
                    lhs = RelExpr::Compose(Box::new(lhs), Box::new(rhs));
                }
                Tok::SemiCaret => {
                    self.bump();
                    let m = match self.peek() {
                        Tok::Ident(s) if s == "inf" => {
                            self.bump();
                            Multiplicity::Infinite
                        }
                        _ => Multiplicity::Finite(self.positive()?),
                    };
                    let rhs = self.union()?;
                    lhs = RelExpr::ComposeM(Box::new(lhs), Box::new(rhs), m);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn union(&mut self) -> Result<RelExpr, IdentityError> {
        let mut lhs = self.inter()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.inter()?;
            lhs = RelExpr::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> Result<RelExpr, IdentityError> {
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.atom()?;
            lhs = RelExpr::Intersect(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn wrapped(&mut self) -> Result<Box<RelExpr>, IdentityError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(Box::new(e))
    }

    fn atom(&mut self) -> Result<RelExpr, IdentityError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::LParen => Ok(*self.wrapped()?),
            Tok::Ident(s) => {
                self.bump();
                match s.as_str() {
                    "delta" => Ok(RelExpr::Delta),
                    "nabla" => Ok(RelExpr::Nabla),
                    "conv" => Ok(RelExpr::Converse(self.wrapped()?)),
                    "star" => Ok(RelExpr::Star(self.wrapped()?)),
                    "cl" => Ok(RelExpr::Overline(self.wrapped()?)),
                    "tol" => Ok(RelExpr::ToleranceOf(self.wrapped()?)),
                    "pow" => {
                        self.expect(Tok::LParen)?;
                        let e = self.expr()?;
                        self.expect(Tok::Comma)?;
                        let h = self.positive()?;
                        self.expect(Tok::RParen)?;
                        Ok(RelExpr::Power(Box::new(e), h))
                    }
                    "inf" => {
                        self.pos -= 1;
                        Err(self.error("an expression"))
                    }
                    _ if self.names.contains(&s) => Ok(RelExpr::Var(s)),
                    _ => Err(IdentityError::At {
                        offset: at,
                        source: Box::new(IdentityError::Unquantified(s)),
                    }),
                }
            }
            _ => Err(self.error("an expression")),
        }
    }
}

/// Parses `quants |- lhs (<= | =) rhs`.
pub fn parse_identity(text: &str) -> Result<IdentityStatement, IdentityError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        names: BTreeSet::new(),
    };
    let quantifiers = p.quantifiers()?;
    p.expect(Tok::Turnstile)?;
    let lhs = p.expr()?;
    let relation = match p.bump() {
        Tok::Le => Relation::IncludedIn,
        Tok::Eq => Relation::Equals,
        _ => {
            p.pos -= 1;
            return Err(p.error("`<=` or `=`"));
        }
    };
    let rhs = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    IdentityStatement::new(quantifiers, relation, lhs, rhs)
}

/// Parses a bare expression over the given variable names.
pub fn parse_expr<'a>(
    text: &str,
    names: impl IntoIterator<Item = &'a str>,
) -> Result<RelExpr, IdentityError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        names: names.into_iter().map(str::to_string).collect(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RelExpr {
        RelExpr::var(s)
    }

    #[test]
    fn parses_modularity_identity() {
        let stmt = parse_identity("Theta:TOL, S:REFL |- Theta & (S ; S) <= star(Theta & S)").unwrap();
        assert_eq!(stmt.quantifiers().len(), 2);
        assert_eq!(stmt.sort_of("Theta"), Some(Sort::Tol));
        assert_eq!(stmt.relation(), Relation::IncludedIn);
        assert_eq!(*stmt.lhs(), v("Theta").and(v("S").then(v("S"))));
        assert_eq!(
            *stmt.rhs(),
            RelExpr::Star(Box::new(v("Theta").and(v("S"))))
        );
    }

    #[test]
    fn trivial_statement() {
        let stmt = parse_identity("S:REFL |- S <= S").unwrap();
        assert_eq!(stmt.to_string(), "S:REFL |- S <= S");
    }

    #[test]
    fn unquantified_variable() {
        let err = parse_identity("S:REFL |- S <= T").unwrap_err();
        match err {
            IdentityError::At { offset, source } => {
                assert_eq!(offset, 15);
                assert_eq!(*source, IdentityError::Unquantified("T".into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_quantifier() {
        let err = parse_identity("S:REFL, S:TOL |- S <= S").unwrap_err();
        assert!(err.to_string().contains("duplicate quantifier `S`"), "{err}");
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("A & B ; C | D + E ;^3 F", ["A", "B", "C", "D", "E", "F"]).unwrap();
        let expect = RelExpr::Plus(
            Box::new(v("A").and(v("B")).then(v("C").or(v("D")))),
            Box::new(RelExpr::ComposeM(
                Box::new(v("E")),
                Box::new(v("F")),
                Multiplicity::Finite(3),
            )),
        );
        assert_eq!(e, expect);
        let left = parse_expr("A ; B ; C", ["A", "B", "C"]).unwrap();
        assert_eq!(left, v("A").then(v("B")).then(v("C")));
    }

    #[test]
    fn wrappers_and_multiplicity() {
        let e = parse_expr("pow(tol(R) & conv(S), 3) ;^inf cl(star(S))", ["R", "S"]).unwrap();
        assert_eq!(e.to_string(), "pow(tol(R) & conv(S), 3) ;^inf cl(star(S))");
    }

    #[test]
    fn syntax_errors_are_positioned() {
        for (text, offset) in [
            ("S:REFL |- S <= S S", 17),
            ("S:REFL |- S ;^0 S <= S", 14),
            ("S:FOO |- S <= S", 2),
            ("S:REFL S <= S", 7),
            ("S:REFL |- (S <= S", 13),
            ("S:REFL |- S # S", 12),
            ("delta:REFL |- delta <= delta", 0),
        ] {
            let err = parse_identity(text).unwrap_err();
            let got = match err {
                IdentityError::Syntax { offset, .. } => offset,
                IdentityError::At { offset, .. } => offset,
                other => panic!("{text}: unexpected {other:?}"),
            };
            assert_eq!(got, offset, "{text}: {err:?}");
        }
    }

    #[test]
    fn printer_adds_needed_parentheses() {
        let e = v("A").then(v("B").then(v("C")));
        assert_eq!(e.to_string(), "A ; (B ; C)");
        let f = v("A").and(v("B").or(v("C")));
        assert_eq!(f.to_string(), "A & (B | C)");
        let g = RelExpr::Plus(Box::new(v("A")), Box::new(v("B"))).then(v("C"));
        assert_eq!(g.to_string(), "(A + B) ; C");
    }

    #[test]
    fn equality_statement() {
        let stmt = parse_identity("S:REFL |- star(S) = S + S").unwrap();
        assert_eq!(stmt.relation(), Relation::Equals);
        assert_eq!(parse_identity(&stmt.to_string()).unwrap(), stmt);
    }
}
