//! Run reports printed by the command-line tool, as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::identity::{Counterexample, Direction, IdentityStatement, Verdict};
use crate::maltsev::{ChainPart, DaySystem, DirectedGummSystem, WitnessChain};
use crate::relation::BinRel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub name: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub assignment: Vec<Binding>,
    pub pair: [usize; 2],
    /// `"lhs<=rhs"` or `"rhs<=lhs"`: the inclusion that failed.
    pub failed: &'static str,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Counterexample> for CounterexampleReport {
    fn from(c: &Counterexample) -> Self {
        CounterexampleReport {
            assignment: c
                .assignment
                .iter()
                .map(|(name, r)| Binding {
                    name: name.clone(),
                    relation: r.to_string(),
                })
                .collect(),
            pair: [c.pair.0, c.pair.1],
            failed: match c.direction {
                Direction::LhsInRhs => "lhs<=rhs",
                Direction::RhsInLhs => "rhs<=lhs",
            },
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub label: String,
    pub statement: String,
    pub holds: bool,
    pub checked: u64,
    pub counterexample: Option<CounterexampleReport>,
}

impl VerdictReport {
    pub fn new(label: &str, stmt: &IdentityStatement, v: &Verdict) -> Self {
        VerdictReport {
            label: label.to_string(),
            statement: stmt.to_string(),
            holds: v.holds,
            checked: v.checked,
            counterexample: v.counterexample.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedTerm {
    pub name: String,
    pub term: String,
}

impl NamedTerm {
    pub fn gumm(sys: &DirectedGummSystem) -> Vec<NamedTerm> {
        let mut out = vec![NamedTerm {
            name: "p".into(),
            term: sys.p.to_string(),
        }];
        out.extend(sys.j.iter().enumerate().map(|(i, t)| NamedTerm {
            name: format!("j{}", i + 1),
            term: t.to_string(),
        }));
        out
    }

    pub fn day(sys: &DaySystem) -> Vec<NamedTerm> {
        sys.d
            .iter()
            .enumerate()
            .map(|(i, t)| NamedTerm {
                name: format!("d{i}"),
                term: t.to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub from: usize,
    pub to: usize,
    pub label: String,
    pub part: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Body {
    Check {
        mode: String,
        verdicts: Vec<VerdictReport>,
    },
    Enumerate {
        kind: String,
        count: usize,
        relations: Vec<String>,
    },
    FindTerms {
        family: String,
        found: bool,
        k: Option<usize>,
        max_k: usize,
        /// Set when no system exists for any `k`.
        definitive: bool,
        terms: Vec<NamedTerm>,
    },
    Witness {
        theorem: String,
        k: usize,
        a: usize,
        c: usize,
        lambda_blocks: usize,
        links: Vec<LinkReport>,
        relations: Vec<Binding>,
        terms: Vec<NamedTerm>,
    },
    Catalog {
        entries: Vec<CatalogEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub invocation: String,
    pub algebra: Option<AlgebraInfo>,
    pub result: Body,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Body {
    pub fn witness(theorem: &str, k: usize, chain: &WitnessChain, terms: Vec<NamedTerm>) -> Body {
        Body::Witness {
            theorem: theorem.to_string(),
            k,
            a: chain.a,
            c: chain.c,
            lambda_blocks: chain.lambda_blocks(),
            links: chain
                .links
                .iter()
                .map(|l| LinkReport {
                    from: l.from,
                    to: l.to,
                    label: l.label.to_string(),
                    part: match l.part {
                        ChainPart::Head => "head".to_string(),
                        ChainPart::Block(i) => format!("block {i}"),
                        ChainPart::Step(i) => format!("step {i}"),
                    },
                })
                .collect(),
            relations: chain
                .relations
                .iter()
                .map(|(name, r)| Binding {
                    name: name.clone(),
                    relation: r.to_string(),
                })
                .collect(),
            terms,
        }
    }

    pub fn enumerate(kind: &str, members: &[BinRel]) -> Body {
        Body::Enumerate {
            kind: kind.to_string(),
            count: members.len(),
            relations: members.iter().map(BinRel::to_string).collect(),
        }
    }
}

impl RunReport {
    /// Whether every requested check held or search succeeded.
    pub fn success(&self) -> bool {
        match &self.result {
            Body::Check { verdicts, .. } => verdicts.iter().all(|v| v.holds),
            Body::FindTerms { found, .. } => *found,
            _ => true,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.algebra {
            let _ = writeln!(out, "algebra: {} (size {})", a.name, a.size);
        }
        match &self.result {
            Body::Check { mode, verdicts } => {
                let _ = writeln!(out, "mode: {mode}");
                for v in verdicts {
                    let _ = writeln!(out, "{} {}", v.label, v.statement);
                    if v.holds {
                        let _ = writeln!(out, "  holds ({} assignments)", v.checked);
                    }
                    if let Some(c) = &v.counterexample {
                        let _ = writeln!(out, "  FAILS at assignment {}", v.checked);
                        for b in &c.assignment {
                            let _ = writeln!(out, "    {} = {}", b.name, b.relation);
                        }
                        let (first, second) = if c.failed == "lhs<=rhs" {
                            ("lhs", "rhs")
                        } else {
                            ("rhs", "lhs")
                        };
                        let _ = writeln!(
                            out,
                            "    pair ({}, {}) is in {first} but not in {second}",
                            c.pair[0], c.pair[1]
                        );
                        let _ = writeln!(out, "    lhs = {}", c.lhs);
                        let _ = writeln!(out, "    rhs = {}", c.rhs);
                    }
                }
            }
            Body::Enumerate {
                kind,
                count,
                relations,
            } => {
                let _ = writeln!(out, "{kind}: {count}");
                for r in relations {
                    let _ = writeln!(out, "  {r}");
                }
            }
            Body::FindTerms {
                family,
                found,
                k,
                max_k,
                definitive,
                terms,
            } => {
                if *found {
                    let _ = writeln!(out, "{family}: found k = {}", k.unwrap_or(0));
                    for t in terms {
                        let _ = writeln!(out, "  {} = {}", t.name, t.term);
                    }
                } else if *definitive {
                    let _ = writeln!(out, "{family}: none exist (search space exhausted)");
                } else {
                    let _ = writeln!(out, "{family}: none with k <= {max_k}");
                }
            }
            Body::Witness {
                theorem,
                k,
                a,
                c,
                lambda_blocks,
                links,
                relations,
                terms,
            } => {
                let _ = writeln!(
                    out,
                    "{theorem}: k = {k}, ({a}, {c}) certified by {} links",
                    links.len()
                );
                if *theorem != "day" {
                    let _ = writeln!(out, "  lambda blocks: {lambda_blocks}");
                }
                for t in terms {
                    let _ = writeln!(out, "  {} = {}", t.name, t.term);
                }
                for b in relations {
                    let _ = writeln!(out, "  {} = {}", b.name, b.relation);
                }
                for l in links {
                    let _ = writeln!(out, "  {} -> {}  [{}]  {}", l.from, l.to, l.part, l.label);
                }
            }
            Body::Catalog { entries } => {
                for e in entries {
                    let _ = writeln!(out, "{} {}", e.label, e.statement);
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}
