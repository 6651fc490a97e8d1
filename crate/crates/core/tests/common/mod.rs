//! Brute-force oracles shared by the integration tests. Everything here works
//! on plain boolean matrices and value vectors, independently of the bitset
//! and closure code under test.
#![allow(dead_code)]

use modcheck::algebra::FiniteAlgebra;
use modcheck::relation::BinRel;

pub type Matrix = Vec<Vec<bool>>;

pub fn to_matrix(r: &BinRel) -> Matrix {
    let n = r.size();
    (0..n).map(|a| (0..n).map(|b| r.contains(a, b)).collect()).collect()
}

pub fn from_matrix(m: &Matrix) -> BinRel {
    let n = m.len();
    BinRel::from_pairs(
        n,
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| m[a][b]),
    )
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect()
}

pub fn compose(r: &Matrix, s: &Matrix) -> Matrix {
    let n = r.len();
    (0..n)
        .map(|a| (0..n).map(|c| (0..n).any(|b| r[a][b] && s[b][c])).collect())
        .collect()
}

pub fn converse(r: &Matrix) -> Matrix {
    let n = r.len();
    (0..n).map(|a| (0..n).map(|b| r[b][a]).collect()).collect()
}

pub fn union(r: &Matrix, s: &Matrix) -> Matrix {
    r.iter()
        .zip(s)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p || *q).collect())
        .collect()
}

/// Transitive closure by Warshall.
pub fn star(r: &Matrix) -> Matrix {
    let n = r.len();
    let mut m = r.clone();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    m
}

/// `r ∘ s ∘ r ∘ ...` with `m` factors.
pub fn alternating(r: &Matrix, s: &Matrix, m: usize) -> Matrix {
    let mut acc = r.clone();
    for i in 1..m {
        acc = compose(&acc, if i % 2 == 1 { s } else { r });
    }
    acc
}

/// Union of the alternating compositions with up to `2 n² + 2` factors,
/// enough for the sequence to have become periodic.
pub fn plus(r: &Matrix, s: &Matrix) -> Matrix {
    let n = r.len();
    let mut acc = vec![vec![false; n]; n];
    let mut cur = r.clone();
    for i in 1..=(2 * n * n + 2) {
        acc = union(&acc, &cur);
        cur = compose(&cur, if i % 2 == 1 { s } else { r });
    }
    acc
}

pub fn is_admissible(alg: &FiniteAlgebra, r: &Matrix) -> bool {
    let n = alg.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| r[a][b])
        .collect();
    for op in alg.operations() {
        let k = op.arity();
        let mut idx = vec![0usize; k];
        if pairs.is_empty() {
            if k == 0 {
                return false;
            }
            continue;
        }
        loop {
            let left: Vec<usize> = idx.iter().map(|&i| pairs[i].0).collect();
            let right: Vec<usize> = idx.iter().map(|&i| pairs[i].1).collect();
            if !r[op.apply(n, &left)][op.apply(n, &right)] {
                return false;
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pairs.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    true
}

/// Every subset of `A²`, as matrices, in increasing bit order.
pub fn all_relations(n: usize) -> impl Iterator<Item = Matrix> {
    let cells = n * n;
    (0u64..(1u64 << cells)).map(move |mask| {
        (0..n)
            .map(|a| (0..n).map(|b| mask >> (a * n + b) & 1 == 1).collect())
            .collect()
    })
}

pub fn brute_refl_adm(alg: &FiniteAlgebra) -> Vec<BinRel> {
    let n = alg.size();
    let mut out: Vec<BinRel> = all_relations(n)
        .filter(|m| (0..n).all(|a| m[a][a]) && is_admissible(alg, m))
        .map(|m| from_matrix(&m))
        .collect();
    out.sort();
    out
}

/// Index of `t` in a value vector over `A^arity` (first argument most significant).
pub fn at(v: &[usize], n: usize, t: &[usize]) -> usize {
    v[t.iter().fold(0, |acc, &x| acc * n + x)]
}
