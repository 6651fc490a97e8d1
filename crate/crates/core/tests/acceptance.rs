//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use modcheck::algebra::FiniteAlgebra;
use modcheck::corpus;
use modcheck::free::{free_algebra, projections, Subuniverse, DEFAULT_CAP};
use modcheck::identity::{
    catalog, check_identity, lookup, parse_identity, CatalogParams, CheckOptions,
    IdentityStatement, Multiplicity, Sort,
};
use modcheck::maltsev::{
    decide_modularity, find_day, find_directed_gumm, q_bound, r_bound, witness_day, witness_turt,
    witness_turtt, DaySystem, DirectedGummSystem, Modularity, Search, TurtInstance,
};
use modcheck::relation::{enumerate, refl_adm_closure, BinRel, RelKind};
use modcheck::term::Term;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn alg(name: &str) -> FiniteAlgebra {
    corpus::load(name).expect("corpus algebra")
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn opts() -> CheckOptions {
    CheckOptions::exhaustive().with_jobs(jobs())
}

fn table(a: &FiniteAlgebra, t: &Term, g: usize) -> Vec<usize> {
    let n = a.size();
    let mut args = vec![0; g];
    (0..n.pow(g as u32))
        .map(|mut idx| {
            for slot in args.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            t.eval(a, &args).expect("term evaluates")
        })
        .collect()
}

/// (DG1)-(DG5) on value tables.
fn dg_holds(n: usize, p: &[usize], j: &[Vec<usize>]) -> bool {
    let k = j.len();
    let t = |v: &[usize], x, y, z| at(v, n, &[x, y, z]);
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                t(p, x, z, z) == x
                    && t(p, x, x, z) == t(&j[0], x, x, z)
                    && t(&j[k - 1], x, y, z) == z
                    && j.iter().all(|ji| t(ji, x, y, x) == x)
                    && (0..k - 1).all(|i| t(&j[i], x, z, z) == t(&j[i + 1], x, x, z))
            })
        })
    })
}

/// The Day conditions on value tables.
fn day_holds(n: usize, d: &[Vec<usize>]) -> bool {
    let k = d.len() - 1;
    let t = |v: &[usize], a: [usize; 4]| at(v, n, &a);
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                (0..n).all(|w| {
                    t(&d[0], [x, y, z, w]) == x
                        && t(&d[k], [x, y, z, w]) == w
                        && d.iter().all(|di| t(di, [x, y, y, x]) == x)
                        && (0..k).all(|i| {
                            let args = if i % 2 == 0 { [x, x, w, w] } else { [x, y, y, w] };
                            t(&d[i], args) == t(&d[i + 1], args)
                        })
                })
            })
        })
    })
}

fn gumm_tables(a: &FiniteAlgebra, sys: &DirectedGummSystem) -> (Vec<usize>, Vec<Vec<usize>>) {
    (table(a, &sys.p, 3), sys.j.iter().map(|t| table(a, t, 3)).collect())
}

/// Whether some source reaches the z projection in the directed Gumm graph,
/// by naive fixpoint iteration over sets.
fn dg_path_exists(n: usize, free: &Subuniverse) -> bool {
    let vs: Vec<&Vec<usize>> = free.iter().map(|e| &e.vector).collect();
    let sig = |v: &[usize], f: &dyn Fn(usize, usize) -> [usize; 3]| -> Vec<usize> {
        (0..n)
            .flat_map(|a| (0..n).map(move |c| (a, c)))
            .map(|(a, c)| at(v, n, &f(a, c)))
            .collect()
    };
    let nodes: Vec<usize> = (0..vs.len())
        .filter(|&i| (0..n).all(|a| (0..n).all(|b| at(vs[i], n, &[a, b, a]) == a)))
        .collect();
    let z = &projections(n, 3)[2];
    let mut reach: HashSet<usize> = nodes.iter().copied().filter(|&i| vs[i] == z).collect();
    loop {
        let before = reach.len();
        for &f in &nodes {
            let fz = sig(vs[f], &|a, c| [a, c, c]);
            if reach.iter().any(|&g| sig(vs[g], &|a, c| [a, a, c]) == fz) {
                reach.insert(f);
            }
        }
        if reach.len() == before {
            break;
        }
    }
    let maltsev_xx: Vec<Vec<usize>> = vs
        .iter()
        .filter(|v| (0..n).all(|a| (0..n).all(|c| at(v, n, &[a, c, c]) == a)))
        .map(|v| sig(v, &|a, c| [a, a, c]))
        .collect();
    reach
        .iter()
        .any(|&g| maltsev_xx.contains(&sig(vs[g], &|a, c| [a, a, c])))
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (name, want) in [("z2", 1), ("l2", 2)] {
        let a = alg(name);
        let n = a.size();
        let Search::Found(sys) = find_directed_gumm(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())?
        else {
            return Err(format!("{name}: no directed Gumm terms"));
        };
        ensure!(sys.k == want, "{name}: k = {}, expected {want}", sys.k);
        let (p, j) = gumm_tables(&a, &sys);
        ensure!(dg_holds(n, &p, &j), "{name}: returned system fails (DG1)-(DG5)");
        // no shorter system: every choice of p, j_1..j_{k-1} from F(3), j_k = z
        let free = free_algebra(&a, 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let z = projections(n, 3)[2].clone();
        for kk in 1..want {
            let mut idx = vec![0usize; kk];
            loop {
                let mut js: Vec<Vec<usize>> =
                    idx[1..].iter().map(|&i| free.get(i).vector.clone()).collect();
                js.push(z.clone());
                ensure!(
                    !dg_holds(n, &free.get(idx[0]).vector, &js),
                    "{name}: found a system with k = {kk}"
                );
                let Some(pos) = idx.iter().rposition(|&i| i + 1 < free.len()) else {
                    break;
                };
                idx[pos] += 1;
                idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
            }
        }
        notes.push(format!("dgumm {name} k={}", sys.k));
    }
    for name in ["sl2", "sl3"] {
        let a = alg(name);
        let free = free_algebra(&a, 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let got = decide_modularity(&a, free.len(), DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(
            got == Modularity::NoTermsUpTo {
                max_k: free.len(),
                definitive: true
            },
            "{name}: expected a definitive NO, got {got:?}"
        );
        ensure!(!dg_path_exists(a.size(), &free), "{name}: oracle finds a path");
        let day = find_day(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(
            day == Search::NotFound {
                max_k: 64,
                definitive: true
            },
            "{name}: Day search returned {day:?}"
        );
        notes.push(format!("{name} NO (|F(3)|={})", free.len()));
    }
    for name in ["z2", "l2"] {
        let a = alg(name);
        let n = a.size();
        let Search::Found(DaySystem { k, d }) = find_day(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())?
        else {
            return Err(format!("{name}: no Day terms"));
        };
        let tables: Vec<Vec<usize>> = d.iter().map(|t| table(&a, t, 4)).collect();
        ensure!(day_holds(n, &tables), "{name}: Day system fails its conditions");
        let free = free_algebra(&a, 4, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let proj = projections(n, 4);
        for kk in 1..k {
            let mut idx = vec![0usize; kk - 1];
            loop {
                let mut seq = vec![proj[0].clone()];
                seq.extend(idx.iter().map(|&i| free.get(i).vector.clone()));
                seq.push(proj[3].clone());
                ensure!(!day_holds(n, &seq), "{name}: Day system with k = {kk}");
                let Some(pos) = idx.iter().rposition(|&i| i + 1 < free.len()) else {
                    break;
                };
                idx[pos] += 1;
                idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
            }
        }
        notes.push(format!("day {name} k={k}"));
    }
    Ok(notes.join(", "))
}

fn modular_corpus() -> Result<Vec<(FiniteAlgebra, DirectedGummSystem)>, String> {
    let mut out = Vec::new();
    for a in corpus::all() {
        if let Modularity::Modular(sys) =
            decide_modularity(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())?
        {
            out.push((a, sys));
        }
    }
    Ok(out)
}

fn holds(a: &FiniteAlgebra, label: &str, stmt: &IdentityStatement, o: &CheckOptions) -> Result<u64, String> {
    let v = check_identity(a, stmt, o).map_err(|e| e.to_string())?;
    match v.counterexample {
        None => Ok(v.checked),
        Some(c) => Err(format!(
            "{label} fails on {}: {:?} pair {:?}",
            a.name(),
            c.assignment,
            c.pair
        )),
    }
}

fn criterion_2() -> Outcome {
    let algebras = modular_corpus()?;
    let names: Vec<&str> = algebras.iter().map(|(a, _)| a.name()).collect();
    for required in ["z2", "l2", "z2xz2", "m3"] {
        ensure!(names.contains(&required), "{required} has no directed Gumm terms");
    }
    let mut total = 0;
    for (a, _) in &algebras {
        for label in ["(1.1)", "(1.2)", "(1.3)", "(1.4)", "(1.5)"] {
            let stmt = lookup(label, &CatalogParams::default()).map_err(|e| e.to_string())?;
            for sort in [Sort::Tol, Sort::Con] {
                let s = stmt.with_sort("Theta", sort).map_err(|e| e.to_string())?;
                total += holds(a, label, &s, &opts())?;
            }
        }
    }
    Ok(format!("{} algebras ({}), {total} assignments, 0 counterexamples", names.len(), names.join(" ")))
}

fn criterion_3() -> Outcome {
    let a = alg("z2xz2");
    let n = a.size();
    let mut stmt = lookup("(dist-variant)", &CatalogParams::default()).map_err(|e| e.to_string())?;
    for name in ["Theta", "S", "T"] {
        stmt = stmt.with_sort(name, Sort::Con).map_err(|e| e.to_string())?;
    }
    // congruences by brute force, in canonical order
    let mut cons: Vec<BinRel> = all_relations(n)
        .filter(|m| {
            let r = from_matrix(m);
            r.is_reflexive() && r.is_symmetric() && r.is_transitive() && is_admissible(&a, m)
        })
        .map(|m| from_matrix(&m))
        .collect();
    cons.sort();
    ensure!(cons.len() == 5, "expected 5 congruences, found {}", cons.len());
    let delta = BinRel::delta(n);
    let atoms: Vec<&BinRel> = cons.iter().filter(|c| **c != delta && **c != BinRel::nabla(n)).collect();
    let mut expected = None;
    'outer: for (i, th) in cons.iter().enumerate() {
        for (j, s) in cons.iter().enumerate() {
            for (k, t) in cons.iter().enumerate() {
                let (thm, sm, tm) = (to_matrix(th), to_matrix(s), to_matrix(t));
                let lhs = and(&thm, &compose(&sm, &converse(&tm)));
                let rhs = star(&compose(&and(&thm, &sm), &and(&thm, &converse(&tm))));
                if lhs.iter().flatten().zip(rhs.iter().flatten()).any(|(l, r)| *l && !*r) {
                    expected = Some((i * 25 + j * 5 + k + 1, [th.clone(), s.clone(), t.clone()]));
                    break 'outer;
                }
            }
        }
    }
    let (index, assignment) = expected.ok_or("oracle finds no violation")?;
    for j in [1, 2, jobs().max(3)] {
        let v = check_identity(&a, &stmt, &CheckOptions::exhaustive().with_jobs(j)).map_err(|e| e.to_string())?;
        let c = v.counterexample.ok_or("variant holds on z2xz2")?;
        let got: Vec<BinRel> = c.assignment.iter().map(|(_, r)| r.clone()).collect();
        ensure!(got == assignment, "jobs={j}: counterexample {got:?} is not the least one");
        ensure!(v.checked == index as u64, "jobs={j}: reported index {} vs {index}", v.checked);
        ensure!(c.recheck(&a, &stmt), "counterexample does not re-verify");
        ensure!(
            got.iter().all(|r| atoms.contains(&r)) && got[0] != got[1] && got[1] != got[2] && got[0] != got[2],
            "assignment is not three distinct atoms"
        );
        ensure!(c.lhs == got[0] && c.rhs == delta, "LHS/RHS are {} / {}", c.lhs, c.rhs);
    }
    Ok(format!(
        "Theta={} S={} T={} LHS=Theta RHS=delta at assignment {index}",
        assignment[0], assignment[1], assignment[2]
    ))
}

fn and(r: &Matrix, s: &Matrix) -> Matrix {
    r.iter()
        .zip(s)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p && *q).collect())
        .collect()
}

fn criterion_4() -> Outcome {
    ensure!(q_bound(1, 2) == Ok(2), "q_bound(1,2) = {:?}", q_bound(1, 2));
    ensure!(r_bound(1, 2) == Ok(3), "r_bound(1,2) = {:?}", r_bound(1, 2));
    ensure!(q_bound(2, 3) == Ok(18), "q_bound(2,3) = {:?}", q_bound(2, 3));
    let a = alg("l2");
    let Search::Found(sys) = find_directed_gumm(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())? else {
        return Err("l2 has no directed Gumm terms".into());
    };
    ensure!(sys.k == 2, "l2 k = {}", sys.k);
    let mut total = 0;
    for h in [1, 2] {
        let params = CatalogParams {
            k: sys.k,
            h,
            ..CatalogParams::default()
        };
        for label in ["(a1)", "(a2)", "(a3)"] {
            let stmt = lookup(label, &params).map_err(|e| e.to_string())?;
            total += holds(&a, label, &stmt, &opts())?;
        }
    }
    Ok(format!("q(1,2)=2 r(1,2)=3 q(2,3)=18; (a1)-(a3) on l2 for h=1,2: {total} assignments"))
}

const COROLLARY: &[&str] = &[
    "(A1)", "(A1.eq)", "(A2)", "(A3)", "(B1)", "(B1.eq)", "(B2)", "(B2.eq)", "(C1)", "(C2)",
    "(C2.eq)", "(C3)", "(C4)", "(C4.eq)", "(D1)", "(D2)", "(D3)", "(D4)", "(D5)",
];

const MS: [Multiplicity; 3] = [Multiplicity::Finite(2), Multiplicity::Finite(3), Multiplicity::Infinite];

fn criterion_5() -> Outcome {
    let mut exhaustive = 0;
    for name in ["l2", "z2xz2"] {
        let a = alg(name);
        for m in MS {
            let params = CatalogParams { m, ..CatalogParams::default() };
            for label in COROLLARY {
                let stmt = lookup(label, &params).map_err(|e| e.to_string())?;
                exhaustive += holds(&a, label, &stmt, &opts())?;
            }
        }
    }
    let mut sampled = 0;
    let algebras = modular_corpus()?;
    for (a, _) in &algebras {
        for (mi, m) in MS.into_iter().enumerate() {
            let params = CatalogParams { m, ..CatalogParams::default() };
            for (li, label) in COROLLARY.iter().enumerate() {
                let stmt = lookup(label, &params).map_err(|e| e.to_string())?;
                let seed = 1000 * mi as u64 + li as u64;
                let o = CheckOptions::sample(seed, 10_000).with_jobs(jobs());
                sampled += holds(a, label, &stmt, &o)?;
            }
        }
    }
    Ok(format!(
        "{} identities x m in {{2,3,inf}}: {exhaustive} exhaustive assignments on l2, z2xz2; {sampled} samples on {} modular algebras, 0 counterexamples",
        COROLLARY.len(),
        algebras.len()
    ))
}

/// All sequences over `0..base` of length `len`.
fn sequences(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..base).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn criterion_6() -> Outcome {
    let mut turt_chains = 0u64;
    let mut turtt_chains = 0u64;
    let mut day_chains = 0u64;
    let mut links = 0u64;
    let mut used = Vec::new();
    for a in corpus::all().into_iter().filter(|a| a.size() == 2) {
        let n = a.size();
        let refl = brute_refl_adm(&a);
        if let Search::Found(sys) = find_directed_gumm(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())? {
            if sys.k >= 2 {
                used.push(format!("{} dgumm k={}", a.name(), sys.k));
                for ell in 1..=3 {
                    for rels in sequences(refl.len(), 3 + ell) {
                        let (r, v, w) = (&refl[rels[0]], &refl[rels[1]], &refl[rels[2]]);
                        let s: Vec<BinRel> = rels[3..].iter().map(|&i| refl[i].clone()).collect();
                        for chain in sequences(n, ell + 1) {
                            let (x, c) = (chain[0], chain[ell]);
                            if !r.contains(x, c) || !chain.windows(2).zip(&s).all(|(p, si)| si.contains(p[0], p[1])) {
                                continue;
                            }
                            for b in (0..n).filter(|&b| v.contains(x, b) && w.contains(b, c)) {
                                let inst = TurtInstance {
                                    r: r.clone(),
                                    v: v.clone(),
                                    w: w.clone(),
                                    s: s.clone(),
                                    b,
                                    chain: chain.clone(),
                                };
                                let t1 = witness_turt(&a, &sys, &inst).map_err(|e| format!("turt {inst:?}: {e}"))?;
                                t1.validate(&a).map_err(|e| e.to_string())?;
                                ensure!(t1.lambda_blocks() <= 2 * sys.k - 3, "turt uses {} blocks", t1.lambda_blocks());
                                let t2 = witness_turtt(&a, &sys, &inst).map_err(|e| format!("turtt {inst:?}: {e}"))?;
                                t2.validate(&a).map_err(|e| e.to_string())?;
                                ensure!(t2.lambda_blocks() <= sys.k - 1, "turtt uses {} blocks", t2.lambda_blocks());
                                links += (t1.links.len() + t2.links.len()) as u64;
                                turt_chains += 1;
                                turtt_chains += 1;
                            }
                        }
                    }
                }
            }
        }
        if let Search::Found(sys) = find_day(&a, 64, DEFAULT_CAP).map_err(|e| e.to_string())? {
            if sys.k >= 2 {
                used.push(format!("{} day k={}", a.name(), sys.k));
                let tols: Vec<&BinRel> = refl.iter().filter(|r| r.is_symmetric()).collect();
                for theta in &tols {
                    for s in &refl {
                        for t in sequences(n, 3) {
                            let (x, b, c) = (t[0], t[1], t[2]);
                            if !(theta.contains(x, c) && s.contains(x, b) && s.contains(c, b)) {
                                continue;
                            }
                            let ch = witness_day(&a, &sys, theta, s, x, b, c).map_err(|e| format!("day: {e}"))?;
                            ch.validate(&a).map_err(|e| e.to_string())?;
                            ensure!(ch.links.len() <= sys.k - 1, "day chain has {} links", ch.links.len());
                            links += ch.links.len() as u64;
                            day_chains += 1;
                        }
                    }
                }
            }
        }
    }
    ensure!(turt_chains > 0 && day_chains > 0, "sweep produced no instances");
    Ok(format!(
        "{}; {turt_chains} turt + {turtt_chains} turtt + {day_chains} day chains, {links} links, all valid",
        used.join(", ")
    ))
}

fn criterion_7() -> Outcome {
    let a = alg("z2");
    let refl = enumerate(&a, RelKind::ReflAdm, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let con = enumerate(&a, RelKind::Congruence, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(refl.members == con.members, "{:?} vs {:?}", refl.members, con.members);
    Ok(format!("{} relations: {}", refl.len(), refl.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    let mut names = Vec::new();
    for a in corpus::all().into_iter().filter(|a| a.size() <= 2) {
        let lat = enumerate(&a, RelKind::ReflAdm, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(lat.members == brute_refl_adm(&a), "{}: enumerate disagrees with brute force", a.name());
        for s in lat.iter() {
            let sm = to_matrix(s);
            ensure!(
                s.star() == s.plus(s).map_err(|e| e.to_string())?,
                "{}: star != plus for {s}",
                a.name()
            );
            for t in lat.iter() {
                let cl = refl_adm_closure(&a, &s.union(t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                let st = from_matrix(&compose(&sm, &to_matrix(t)));
                ensure!(cl.is_subset(&st).map_err(|e| e.to_string())?, "{}: cl({s} | {t}) not in S;T", a.name());
                pairs += 1;
            }
        }
        names.push(format!("{}:{}", a.name(), lat.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for i in 0..1000 {
        let n = 1 + i % 4;
        let density: f64 = rng.gen_range(0.1..0.9);
        let mut random = || -> Matrix {
            (0..n).map(|_| (0..n).map(|_| rng.gen_bool(density)).collect()).collect()
        };
        let (r, s) = (random(), random());
        let (br, bs) = (from_matrix(&r), from_matrix(&s));
        ensure!(br.compose(&bs).unwrap() == from_matrix(&compose(&r, &s)), "compose differs on {br} {bs}");
        ensure!(br.converse() == from_matrix(&converse(&r)), "converse differs on {br}");
        ensure!(br.star() == from_matrix(&star(&r)), "star differs on {br}");
        ensure!(br.plus(&bs).unwrap() == from_matrix(&plus(&r, &s)), "plus differs on {br} {bs}");
        for m in 1..=4 {
            ensure!(
                br.m_compose(&bs, m).unwrap() == from_matrix(&alternating(&r, &s, m)),
                "m_compose {m} differs on {br} {bs}"
            );
        }
    }
    Ok(format!("brute-force lattices {}; {pairs} pairs; 1000 random relations", names.join(" ")))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for k in [2, 3] {
        for h in [1, 2] {
            for m in MS {
                for ell in [1, 2, 3] {
                    let params = CatalogParams { k, h, m, ell };
                    for (label, stmt) in catalog(&params).map_err(|e| e.to_string())? {
                        let printed = stmt.to_string();
                        let back = parse_identity(&printed).map_err(|e| format!("{label}: {e}"))?;
                        ensure!(back == stmt, "{label} {params:?}: round trip changed `{printed}`");
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} catalog entries"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("term-search ground truth", criterion_1),
        ("modularity identities hold on modular corpus", criterion_2),
        ("distributivity variant separated on z2xz2", criterion_3),
        ("exponent bounds", criterion_4),
        ("corollary catalog, exhaustive and sampled", criterion_5),
        ("witness replay", criterion_6),
        ("permutability on z2", criterion_7),
        ("relation-engine oracles", criterion_8),
        ("parser round trip", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
