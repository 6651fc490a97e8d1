//! Element chains replaying the constructive proofs behind (turt), (turtt)
//! and the Day identity. Each chain is re-validated link by link against
//! the relations it was built from before it is returned.

use std::fmt;

use crate::algebra::{Element, FiniteAlgebra};
use crate::identity::{eval_expr, parse_expr, Env, EvalError, RelExpr};
use crate::relation::{BinRel, RelKind};
use crate::term::{Term, TermError};

use super::{DaySystem, DirectedGummSystem};

/// Which segment of the right-hand side a link belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainPart {
    Head,
    /// 1-based index of a Λ-block.
    Block(usize),
    /// 1-based position in an alternating composition.
    Step(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub from: Element,
    pub to: Element,
    pub label: RelExpr,
    pub part: ChainPart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub a: Element,
    pub c: Element,
    pub links: Vec<ChainLink>,
    /// The relations the labels refer to.
    pub relations: Vec<(String, BinRel)>,
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("system has k = {k}; at least {min} required")]
    KTooSmall { k: usize, min: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("chain validation failed at link {index}: {message}")]
    Invalid { index: usize, message: String },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl WitnessChain {
    /// The elements visited, from `a` to `c`.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![self.a];
        out.extend(self.links.iter().map(|l| l.to));
        out
    }

    pub fn lambda_blocks(&self) -> usize {
        self.links
            .iter()
            .filter_map(|l| match l.part {
                ChainPart::Block(i) => Some(i),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Re-checks connectivity, endpoints, and every labelled link.
    pub fn validate(&self, alg: &FiniteAlgebra) -> Result<(), WitnessError> {
        let env: Env = self.relations.iter().cloned().collect();
        let mut cur = self.a;
        for (index, link) in self.links.iter().enumerate() {
            let invalid = |message: String| WitnessError::Invalid { index, message };
            if link.from != cur {
                return Err(invalid(format!("starts at {} instead of {cur}", link.from)));
            }
            let rel = eval_expr(alg, &link.label, &env)?;
            if !rel.contains(link.from, link.to) {
                return Err(invalid(format!(
                    "({}, {}) is not in {}",
                    link.from, link.to, link.label
                )));
            }
            cur = link.to;
        }
        if cur != self.c {
            return Err(WitnessError::Invalid {
                index: self.links.len(),
                message: format!("ends at {cur} instead of {}", self.c),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WitnessChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        for l in &self.links {
            write!(f, " -[{}]-> {}", l.label, l.to)?;
        }
        Ok(())
    }
}

/// Input of [`witness_turt`] and [`witness_turtt`]: relations `R, V, W,
/// S_1..S_ℓ`, a middle element `b` with `a V b W c`, and a chain
/// `a = a_0 S_1 a_1 ... S_ℓ a_ℓ = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurtInstance {
    pub r: BinRel,
    pub v: BinRel,
    pub w: BinRel,
    pub s: Vec<BinRel>,
    pub b: Element,
    pub chain: Vec<Element>,
}

impl TurtInstance {
    fn relations(&self) -> Vec<(String, BinRel)> {
        let mut out = vec![
            ("R".to_string(), self.r.clone()),
            ("V".to_string(), self.v.clone()),
            ("W".to_string(), self.w.clone()),
        ];
        for (i, s) in self.s.iter().enumerate() {
            out.push((format!("S{}", i + 1), s.clone()));
        }
        out
    }

    fn check(&self, alg: &FiniteAlgebra) -> Result<(Element, Element), WitnessError> {
        let pre = |msg: String| Err(WitnessError::Precondition(msg));
        let n = alg.size();
        if self.s.is_empty() {
            return pre("at least one S relation is required".into());
        }
        if self.chain.len() != self.s.len() + 1 {
            return pre(format!(
                "chain has {} elements, expected {}",
                self.chain.len(),
                self.s.len() + 1
            ));
        }
        if let Some(&x) = self.chain.iter().chain([&self.b]).find(|&&x| x >= n) {
            return pre(format!("element {x} outside the universe"));
        }
        for (name, rel) in self.relations() {
            if rel.size() != n {
                return pre(format!("{name} has size {}, expected {n}", rel.size()));
            }
            if !RelKind::ReflAdm
                .admits(alg, &rel)
                .map_err(|e| WitnessError::Eval(e.into()))?
            {
                return pre(format!("{name} is not reflexive and admissible"));
            }
        }
        let a = self.chain[0];
        let c = self.chain[self.chain.len() - 1];
        if !self.r.contains(a, c) {
            return pre(format!("({a}, {c}) is not in R"));
        }
        if !self.v.contains(a, self.b) {
            return pre(format!("({a}, {}) is not in V", self.b));
        }
        if !self.w.contains(self.b, c) {
            return pre(format!("({}, {c}) is not in W", self.b));
        }
        for (h, pair) in self.chain.windows(2).enumerate() {
            if !self.s[h].contains(pair[0], pair[1]) {
                return pre(format!("({}, {}) is not in S{}", pair[0], pair[1], h + 1));
            }
        }
        Ok((a, c))
    }
}

struct Builder<'a> {
    alg: &'a FiniteAlgebra,
    chain: WitnessChain,
    names: Vec<String>,
}

impl Builder<'_> {
    fn label(&self, text: &str) -> RelExpr {
        parse_expr(text, self.names.iter().map(String::as_str))
            .expect("witness labels are well formed")
    }

    fn last(&self) -> Element {
        self.chain.links.last().map_or(self.chain.a, |l| l.to)
    }

    fn push(&mut self, to: Element, label: RelExpr, part: ChainPart) {
        let from = self.last();
        self.chain.links.push(ChainLink {
            from,
            to,
            label,
            part,
        });
    }

    /// One Λ-block: the elements `elems[0..=ℓ]`, where `elems[0]` must be
    /// the current end of the chain.
    fn block(&mut self, elems: &[Element], index: usize) -> Result<(), WitnessError> {
        if elems[0] != self.last() {
            return Err(WitnessError::Invalid {
                index: self.chain.links.len(),
                message: format!(
                    "block {index} starts at {} but the chain is at {}",
                    elems[0],
                    self.last()
                ),
            });
        }
        for (h, &e) in elems.iter().enumerate().skip(1) {
            let label = self.label(&format!("tol(R) & S{h}"));
            self.push(e, label, ChainPart::Block(index));
        }
        Ok(())
    }

    fn finish(self) -> Result<WitnessChain, WitnessError> {
        self.chain.validate(self.alg)?;
        Ok(self.chain)
    }
}

fn gumm_builder<'a>(
    alg: &'a FiniteAlgebra,
    sys: &DirectedGummSystem,
    inst: &TurtInstance,
) -> Result<(Builder<'a>, Element, Element), WitnessError> {
    if sys.k < 2 {
        return Err(WitnessError::KTooSmall { k: sys.k, min: 2 });
    }
    if sys.j.len() != sys.k {
        return Err(WitnessError::Precondition(format!(
            "system lists {} j-terms for k = {}",
            sys.j.len(),
            sys.k
        )));
    }
    sys.p.check(alg, 3)?;
    for j in &sys.j {
        j.check(alg, 3)?;
    }
    let (a, c) = inst.check(alg)?;
    let relations = inst.relations();
    let names = relations.iter().map(|(n, _)| n.clone()).collect();
    let builder = Builder {
        alg,
        chain: WitnessChain {
            a,
            c,
            links: Vec::new(),
            relations,
        },
        names,
    };
    Ok((builder, a, c))
}

fn ev(alg: &FiniteAlgebra, t: &Term, args: &[Element]) -> Result<Element, WitnessError> {
    Ok(t.eval(alg, args)?)
}

/// Certifies `(a, c) ∈ R ∩ cl(V ∪ W) ∘ Λ^(2k-3)` where
/// `Λ = Θ_R S_1 ∘ ... ∘ Θ_R S_ℓ`.
pub fn witness_turt(
    alg: &FiniteAlgebra,
    sys: &DirectedGummSystem,
    inst: &TurtInstance,
) -> Result<WitnessChain, WitnessError> {
    let (mut bld, a, c) = gumm_builder(alg, sys, inst)?;
    let j = &sys.j;
    let k = sys.k;
    let jstar = |y: Element| -> Result<Element, WitnessError> {
        let inner = ev(alg, &j[0], &[a, y, c])?;
        ev(alg, &j[0], &[a, y, inner])
    };

    let head = bld.label("R & cl(V | W)");
    bld.push(jstar(a)?, head, ChainPart::Head);

    let elems: Vec<Element> = inst.chain.iter().map(|&y| jstar(y)).collect::<Result<_, _>>()?;
    bld.block(&elems, 1)?;
    let mut index = 2;
    for ji in &j[1..k - 1] {
        let elems: Vec<Element> = inst
            .chain
            .iter()
            .map(|&y| {
                let inner = ev(alg, ji, &[a, y, c])?;
                ev(alg, &j[0], &[a, c, inner])
            })
            .collect::<Result<_, _>>()?;
        bld.block(&elems, index)?;
        index += 1;
    }
    for ji in &j[1..k - 1] {
        let elems: Vec<Element> = inst
            .chain
            .iter()
            .map(|&y| ev(alg, ji, &[a, y, c]))
            .collect::<Result<_, _>>()?;
        bld.block(&elems, index)?;
        index += 1;
    }
    bld.finish()
}

/// Certifies `(a, c) ∈ R ∩ R˘ ∩ cl(V˘ ∪ W) ∘ Λ^(k-1)`.
pub fn witness_turtt(
    alg: &FiniteAlgebra,
    sys: &DirectedGummSystem,
    inst: &TurtInstance,
) -> Result<WitnessChain, WitnessError> {
    let (mut bld, a, c) = gumm_builder(alg, sys, inst)?;
    let head = bld.label("R & conv(R) & cl(conv(V) | W)");
    bld.push(ev(alg, &sys.j[0], &[a, a, c])?, head, ChainPart::Head);
    for (i, ji) in sys.j[..sys.k - 1].iter().enumerate() {
        let elems: Vec<Element> = inst
            .chain
            .iter()
            .map(|&y| ev(alg, ji, &[a, y, c]))
            .collect::<Result<_, _>>()?;
        bld.block(&elems, i + 1)?;
    }
    bld.finish()
}

/// Certifies `(a, c) ∈ ΘS ∘_(k-1) ΘS˘` from `(a, c) ∈ Θ`, `a S b` and `c S b`.
pub fn witness_day(
    alg: &FiniteAlgebra,
    sys: &DaySystem,
    theta: &BinRel,
    s: &BinRel,
    a: Element,
    b: Element,
    c: Element,
) -> Result<WitnessChain, WitnessError> {
    if sys.k < 2 {
        return Err(WitnessError::KTooSmall { k: sys.k, min: 2 });
    }
    if sys.d.len() != sys.k + 1 {
        return Err(WitnessError::Precondition(format!(
            "system lists {} terms for k = {}",
            sys.d.len(),
            sys.k
        )));
    }
    for d in &sys.d {
        d.check(alg, 4)?;
    }
    let n = alg.size();
    let pre = |msg: String| Err(WitnessError::Precondition(msg));
    if let Some(x) = [a, b, c].into_iter().find(|&x| x >= n) {
        return pre(format!("element {x} outside the universe"));
    }
    for (name, rel, kind) in [("Theta", theta, RelKind::Tolerance), ("S", s, RelKind::ReflAdm)] {
        if rel.size() != n {
            return pre(format!("{name} has size {}, expected {n}", rel.size()));
        }
        if !kind.admits(alg, rel).map_err(|e| WitnessError::Eval(e.into()))? {
            return pre(format!("{name} is not a member of {kind}"));
        }
    }
    if !theta.contains(a, c) {
        return pre(format!("({a}, {c}) is not in Theta"));
    }
    if !s.contains(a, b) {
        return pre(format!("({a}, {b}) is not in S"));
    }
    if !s.contains(c, b) {
        return pre(format!("({c}, {b}) is not in S"));
    }
    let relations = vec![("Theta".to_string(), theta.clone()), ("S".to_string(), s.clone())];
    let mut bld = Builder {
        alg,
        chain: WitnessChain {
            a,
            c,
            links: Vec::new(),
            relations,
        },
        names: vec!["Theta".into(), "S".into()],
    };
    for i in 1..sys.k {
        let aacc = ev(alg, &sys.d[i], &[a, a, c, c])?;
        let abbc = ev(alg, &sys.d[i], &[a, b, b, c])?;
        let (from, to, label) = if i % 2 == 1 {
            (aacc, abbc, "Theta & S")
        } else {
            (abbc, aacc, "Theta & conv(S)")
        };
        if from != bld.last() {
            return Err(WitnessError::Invalid {
                index: i - 1,
                message: format!("step {i} starts at {from} but the chain is at {}", bld.last()),
            });
        }
        let label = bld.label(label);
        bld.push(to, label, ChainPart::Step(i));
    }
    bld.finish()
}
