use crate::algebra::FiniteAlgebra;
use crate::relation::{refl_adm_closure, tolerance_of, BinRel, RelError};

use super::ast::{Multiplicity, RelExpr};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error(transparent)]
    Rel(#[from] RelError),
}

/// Variable bindings, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    bindings: Vec<(String, BinRel)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    /// Binds `name`, replacing any previous binding.
    pub fn bind(&mut self, name: &str, rel: BinRel) {
        match self.bindings.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = rel,
            None => self.bindings.push((name.to_string(), rel)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&BinRel> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub(crate) fn set_at(&mut self, i: usize, rel: BinRel) {
        self.bindings[i].1 = rel;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BinRel)> {
        self.bindings.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn into_vec(self) -> Vec<(String, BinRel)> {
        self.bindings
    }
}

impl<S: Into<String>> FromIterator<(S, BinRel)> for Env {
    fn from_iter<I: IntoIterator<Item = (S, BinRel)>>(iter: I) -> Self {
        let mut env = Env::new();
        for (name, rel) in iter {
            env.bind(&name.into(), rel);
        }
        env
    }
}

/// Evaluates `e` compositionally; every node delegates to the relations module.
pub fn eval_expr(alg: &FiniteAlgebra, e: &RelExpr, env: &Env) -> Result<BinRel, EvalError> {
    let n = alg.size();
    if !(1..=crate::relation::MAX_SIZE).contains(&n) {
        return Err(RelError::UnsupportedSize(n).into());
    }
    let rec = |x: &RelExpr| eval_expr(alg, x, env);
    Ok(match e {
        RelExpr::Var(name) => {
            let r = env.get(name).ok_or_else(|| EvalError::Unbound(name.clone()))?;
            if r.size() != n {
                return Err(RelError::SizeMismatch {
                    left: n,
                    right: r.size(),
                }
                .into());
            }
            r.clone()
        }
        RelExpr::Delta => BinRel::delta(n),
        RelExpr::Nabla => BinRel::nabla(n),
        RelExpr::Intersect(a, b) => rec(a)?.intersect(&rec(b)?)?,
        RelExpr::Union(a, b) => rec(a)?.union(&rec(b)?)?,
        RelExpr::Compose(a, b) => rec(a)?.compose(&rec(b)?)?,
        RelExpr::ComposeM(a, b, Multiplicity::Finite(m)) => rec(a)?.m_compose(&rec(b)?, *m)?,
        RelExpr::ComposeM(a, b, Multiplicity::Infinite) | RelExpr::Plus(a, b) => {
            rec(a)?.plus(&rec(b)?)?
        }
        RelExpr::Power(a, h) => rec(a)?.power(*h)?,
        RelExpr::Converse(a) => rec(a)?.converse(),
        RelExpr::Star(a) => rec(a)?.star(),
        RelExpr::Overline(a) => refl_adm_closure(alg, &rec(a)?)?,
        RelExpr::ToleranceOf(a) => tolerance_of(alg, &rec(a)?)?,
    })
}
