use std::collections::{HashMap, VecDeque};

use crate::algebra::{Element, FiniteAlgebra};
use crate::free::{free_algebra, FreeError, Subuniverse};
use crate::term::{Term, TermError};

/// Directed Gumm terms `p, j_1, ..., j_k` (ternary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGummSystem {
    pub k: usize,
    pub p: Term,
    pub j: Vec<Term>,
}

/// Day terms `d_0, ..., d_k` (quaternary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaySystem {
    pub k: usize,
    pub d: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// No system with at most `max_k` terms. `definitive` means that no
    /// system exists for any `k`, because the target is unreachable.
    NotFound { max_k: usize, definitive: bool },
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            Search::NotFound { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modularity {
    Modular(DirectedGummSystem),
    NoTermsUpTo { max_k: usize, definitive: bool },
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("max_k must be at least 1")]
    ZeroMaxK,
    #[error(transparent)]
    Free(#[from] FreeError),
}

/// Reads `f(t)` from a value vector indexed with the first argument most significant.
fn at(v: &[Element], n: usize, t: &[Element]) -> Element {
    v[t.iter().fold(0, |acc, &x| acc * n + x)]
}

/// The vector `(f(shape(a, c)))_{a, c}`, used to compare elements on a
/// two-variable substitution.
fn signature(v: &[Element], n: usize, shape: impl Fn(Element, Element) -> Vec<Element>) -> Vec<Element> {
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for c in 0..n {
            out.push(at(v, n, &shape(a, c)));
        }
    }
    out
}

fn group_by<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = (usize, K)>) -> HashMap<K, Vec<usize>> {
    let mut out: HashMap<K, Vec<usize>> = HashMap::new();
    for (i, key) in keys {
        out.entry(key).or_default().push(i);
    }
    out
}

struct GummGraph {
    /// Free elements satisfying `f(a,b,a) = a`.
    nodes: Vec<bool>,
    xx: Vec<Vec<Element>>,
    zz: Vec<Vec<Element>>,
}

impl GummGraph {
    fn new(free: &Subuniverse, n: usize) -> Self {
        let mut nodes = Vec::with_capacity(free.len());
        let mut xx = Vec::with_capacity(free.len());
        let mut zz = Vec::with_capacity(free.len());
        for e in free.iter() {
            let v = &e.vector;
            nodes.push((0..n).all(|a| (0..n).all(|b| at(v, n, &[a, b, a]) == a)));
            xx.push(signature(v, n, |a, c| vec![a, a, c]));
            zz.push(signature(v, n, |a, c| vec![a, c, c]));
        }
        GummGraph { nodes, xx, zz }
    }
}

/// Breadth-first distances to `targets` over the reversed edges given by
/// `preds`, counted in nodes (a target has distance 1).
fn reverse_distances(
    len: usize,
    targets: &[usize],
    mut preds: impl FnMut(usize) -> Vec<usize>,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; len];
    let mut queue = VecDeque::new();
    for &t in targets {
        if dist[t].is_none() {
            dist[t] = Some(1);
            queue.push_back(t);
        }
    }
    while let Some(g) = queue.pop_front() {
        let d = dist[g].unwrap_or(0);
        for f in preds(g) {
            if dist[f].is_none() {
                dist[f] = Some(d + 1);
                queue.push_back(f);
            }
        }
    }
    dist
}

/// Searches `F(3)` for directed Gumm terms with the least `k`; among
/// shortest paths the node sequence is lexicographically least in
/// discovery order.
pub fn find_directed_gumm(
    alg: &FiniteAlgebra,
    max_k: usize,
    cap: usize,
) -> Result<Search<DirectedGummSystem>, SearchError> {
    if max_k == 0 {
        return Err(SearchError::ZeroMaxK);
    }
    let n = alg.size();
    if n == 1 {
        return Ok(Search::Found(DirectedGummSystem {
            k: 1,
            p: Term::var(0),
            j: vec![Term::var(2)],
        }));
    }
    let free = free_algebra(alg, 3, cap)?;
    let g = GummGraph::new(&free, n);
    let target = free
        .position(&crate::free::projections(n, 3)[2])
        .expect("projections are generators");

    // p candidates: q(a,c,c) = a, keyed by q(a,a,c).
    let mut p_for: HashMap<&[Element], usize> = HashMap::new();
    for (i, e) in free.iter().enumerate() {
        let v = &e.vector;
        if (0..n).all(|a| (0..n).all(|c| at(v, n, &[a, c, c]) == a)) {
            p_for.entry(g.xx[i].as_slice()).or_insert(i);
        }
    }

    let by_zz = group_by((0..free.len()).filter(|&i| g.nodes[i]).map(|i| (i, g.zz[i].clone())));
    let by_xx = group_by((0..free.len()).filter(|&i| g.nodes[i]).map(|i| (i, g.xx[i].clone())));
    let dist = reverse_distances(free.len(), &[target], |j| {
        by_zz.get(&g.xx[j]).cloned().unwrap_or_default()
    });

    let best = (0..free.len())
        .filter(|&i| g.nodes[i] && p_for.contains_key(g.xx[i].as_slice()))
        .filter_map(|i| dist[i].map(|d| (d, i)))
        .min();
    let Some((k, first)) = best else {
        return Ok(Search::NotFound {
            max_k,
            definitive: true,
        });
    };
    if k > max_k {
        return Ok(Search::NotFound {
            max_k,
            definitive: false,
        });
    }
    let mut path = vec![first];
    let mut cur = first;
    for step in (1..k).rev() {
        cur = by_xx[&g.zz[cur]]
            .iter()
            .copied()
            .find(|&nxt| dist[nxt] == Some(step))
            .expect("a successor one step closer exists");
        path.push(cur);
    }
    let p = p_for[g.xx[first].as_slice()];
    Ok(Search::Found(DirectedGummSystem {
        k,
        p: free.get(p).term.clone(),
        j: path.into_iter().map(|i| free.get(i).term.clone()).collect(),
    }))
}

/// Searches `F(4)` for Day terms with the least `k`, with the same
/// tie-breaking as [`find_directed_gumm`].
pub fn find_day(
    alg: &FiniteAlgebra,
    max_k: usize,
    cap: usize,
) -> Result<Search<DaySystem>, SearchError> {
    if max_k == 0 {
        return Err(SearchError::ZeroMaxK);
    }
    let n = alg.size();
    let free = free_algebra(alg, 4, cap)?;
    let len = free.len();
    let proj = crate::free::projections(n, 4);
    let start = free.position(&proj[0]).expect("projections are generators");
    let target = free.position(&proj[3]).expect("projections are generators");

    let mut nodes = Vec::with_capacity(len);
    let mut aacc = Vec::with_capacity(len);
    let mut abbc = Vec::with_capacity(len);
    for e in free.iter() {
        let v = &e.vector;
        nodes.push((0..n).all(|a| (0..n).all(|b| at(v, n, &[a, b, b, a]) == a)));
        aacc.push(signature(v, n, |a, c| vec![a, a, c, c]));
        let mut sig = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    sig.push(at(v, n, &[a, b, b, c]));
                }
            }
        }
        abbc.push(sig);
    }
    let by_aacc = group_by((0..len).filter(|&i| nodes[i]).map(|i| (i, aacc[i].clone())));
    let by_abbc = group_by((0..len).filter(|&i| nodes[i]).map(|i| (i, abbc[i].clone())));

    // States are (node, parity of its index): 2*node + parity. Leaving an
    // even index needs agreement on (a,a,c,c), leaving an odd one on (a,b,b,c).
    let succ = |state: usize| -> Vec<usize> {
        let (f, parity) = (state / 2, state % 2);
        let group = if parity == 0 {
            by_aacc.get(&aacc[f])
        } else {
            by_abbc.get(&abbc[f])
        };
        group
            .map(|g| g.iter().map(|&h| 2 * h + (1 - parity)).collect())
            .unwrap_or_default()
    };
    let pred = |state: usize| -> Vec<usize> {
        let (g, parity) = (state / 2, state % 2);
        // predecessor has the other parity and left through its own signature
        let group = if parity == 1 {
            by_aacc.get(&aacc[g])
        } else {
            by_abbc.get(&abbc[g])
        };
        group
            .map(|x| x.iter().map(|&f| 2 * f + (1 - parity)).collect())
            .unwrap_or_default()
    };
    let dist = reverse_distances(2 * len, &[2 * target, 2 * target + 1], |s| {
        if nodes[s / 2] {
            pred(s)
        } else {
            Vec::new()
        }
    });
    let Some(d) = dist[2 * start] else {
        return Ok(Search::NotFound {
            max_k,
            definitive: true,
        });
    };
    let k = d - 1;
    if k > max_k {
        return Ok(Search::NotFound {
            max_k,
            definitive: false,
        });
    }
    let mut path = vec![start];
    let mut cur = 2 * start;
    for step in (1..d).rev() {
        cur = succ(cur)
            .into_iter()
            .filter(|&s| dist[s] == Some(step))
            .min()
            .expect("a successor one step closer exists");
        path.push(cur / 2);
    }
    Ok(Search::Found(DaySystem {
        k,
        d: path.into_iter().map(|i| free.get(i).term.clone()).collect(),
    }))
}

/// Wraps [`find_directed_gumm`]. Since `F(3)` is finite, a definitive
/// negative answer rules out directed Gumm terms of every length.
pub fn decide_modularity(
    alg: &FiniteAlgebra,
    max_k: usize,
    cap: usize,
) -> Result<Modularity, SearchError> {
    Ok(match find_directed_gumm(alg, max_k, cap)? {
        Search::Found(sys) => Modularity::Modular(sys),
        Search::NotFound { max_k, definitive } => Modularity::NoTermsUpTo { max_k, definitive },
    })
}

fn check_terms(alg: &FiniteAlgebra, terms: &[&Term], vars: usize) -> Result<(), TermError> {
    terms.iter().try_for_each(|t| t.check(alg, vars))
}

/// Checks (DG1)-(DG5) under every assignment in `alg`.
pub fn verify_directed_gumm(alg: &FiniteAlgebra, sys: &DirectedGummSystem) -> Result<bool, TermError> {
    let mut all: Vec<&Term> = vec![&sys.p];
    all.extend(&sys.j);
    check_terms(alg, &all, 3)?;
    if sys.k == 0 || sys.j.len() != sys.k {
        return Ok(false);
    }
    let n = alg.size();
    let ev = |t: &Term, args: [Element; 3]| t.eval(alg, &args);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if ev(&sys.p, [x, z, z])? != x
                    || ev(&sys.p, [x, x, z])? != ev(&sys.j[0], [x, x, z])?
                    || ev(&sys.j[sys.k - 1], [x, y, z])? != z
                {
                    return Ok(false);
                }
                for (i, j) in sys.j.iter().enumerate() {
                    if ev(j, [x, y, x])? != x {
                        return Ok(false);
                    }
                    if i + 1 < sys.k && ev(j, [x, z, z])? != ev(&sys.j[i + 1], [x, x, z])? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Checks the Day conditions under every assignment in `alg`.
pub fn verify_day(alg: &FiniteAlgebra, sys: &DaySystem) -> Result<bool, TermError> {
    check_terms(alg, &sys.d.iter().collect::<Vec<_>>(), 4)?;
    if sys.d.len() != sys.k + 1 {
        return Ok(false);
    }
    let n = alg.size();
    let ev = |t: &Term, args: [Element; 4]| t.eval(alg, &args);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    if ev(&sys.d[0], [x, y, z, w])? != x || ev(&sys.d[sys.k], [x, y, z, w])? != w {
                        return Ok(false);
                    }
                    for (i, d) in sys.d.iter().enumerate() {
                        if ev(d, [x, y, y, x])? != x {
                            return Ok(false);
                        }
                        if i < sys.k {
                            let args = if i % 2 == 0 { [x, x, w, w] } else { [x, y, y, w] };
                            if ev(d, args)? != ev(&sys.d[i + 1], args)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
