use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::algebra::Element;

use super::RelError;

/// Largest universe a [`BinRel`] supports (one `u64` word per row).
pub const MAX_SIZE: usize = 64;

/// A binary relation on `{0..n-1}` as an `n x n` bit matrix, one word per row.
///
/// Ordering is lexicographic on the row-major flattened matrix with
/// `false < true`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinRel {
    n: usize,
    rows: Vec<u64>,
}

impl BinRel {
    fn check_size(n: usize) {
        assert!(
            (1..=MAX_SIZE).contains(&n),
            "relation size {n} outside 1..={MAX_SIZE}"
        );
    }

    /// The empty relation on `n` points.
    pub fn empty(n: usize) -> BinRel {
        Self::check_size(n);
        BinRel {
            n,
            rows: vec![0; n],
        }
    }

    pub fn delta(n: usize) -> BinRel {
        let mut r = BinRel::empty(n);
        for a in 0..n {
            r.rows[a] = 1 << a;
        }
        r
    }

    pub fn nabla(n: usize) -> BinRel {
        let mut r = BinRel::empty(n);
        let full = row_mask(n);
        r.rows.iter_mut().for_each(|row| *row = full);
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Element, Element)>) -> BinRel {
        let mut r = BinRel::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// Builds a relation from a row-major flattened bit matrix of length `n*n`.
    pub fn from_bits(n: usize, bits: &[bool]) -> BinRel {
        assert_eq!(bits.len(), n * n);
        BinRel::from_pairs(
            n,
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i / n, i % n)),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: Element, b: Element) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: Element, b: Element) {
        assert!(a < self.n && b < self.n, "pair ({a},{b}) outside universe");
        self.rows[a] |= 1 << b;
    }

    /// Row `a` as a bitmask over the second coordinate.
    #[inline]
    pub fn row(&self, a: Element) -> u64 {
        self.rows[a]
    }

    /// Number of pairs.
    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        (0..self.n).flat_map(move |a| {
            let row = self.rows[a];
            (0..self.n).filter(move |&b| row >> b & 1 == 1).map(move |b| (a, b))
        })
    }

    pub fn is_subset(&self, other: &BinRel) -> Result<bool, RelError> {
        same_size(self, other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(x, y)| x & !y == 0))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.converse()
    }

    pub fn is_transitive(&self) -> bool {
        self.compose_unchecked(self).is_subset_unchecked(self)
    }

    pub(crate) fn is_subset_unchecked(&self, other: &BinRel) -> bool {
        self.rows.iter().zip(&other.rows).all(|(x, y)| x & !y == 0)
    }

    /// `a (R;S) c` iff there is `b` with `a R b` and `b S c`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel, RelError> {
        same_size(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &BinRel) -> BinRel {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0;
                let mut bits = row;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    acc |= other.rows[b];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BinRel { n: self.n, rows }
    }

    /// Matrix transpose.
    pub fn converse(&self) -> BinRel {
        let mut out = BinRel::empty(self.n);
        for (a, b) in self.pairs() {
            out.rows[b] |= 1 << a;
        }
        out
    }

    pub fn intersect(&self, other: &BinRel) -> Result<BinRel, RelError> {
        same_size(self, other)?;
        Ok(self.zip_rows(other, |x, y| x & y))
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel, RelError> {
        same_size(self, other)?;
        Ok(self.zip_rows(other, |x, y| x | y))
    }

    pub(crate) fn zip_rows(&self, other: &BinRel, f: impl Fn(u64, u64) -> u64) -> BinRel {
        BinRel {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(&x, &y)| f(x, y)).collect(),
        }
    }

    /// `R ;_m S`: `m` alternating factors `R ; S ; R ; ...` starting with `R`.
    pub fn m_compose(&self, other: &BinRel, m: usize) -> Result<BinRel, RelError> {
        same_size(self, other)?;
        if m == 0 {
            return Err(RelError::ZeroFactors);
        }
        let mut acc = self.clone();
        for i in 1..m {
            let next = if i % 2 == 0 { self } else { other };
            acc = acc.compose_unchecked(next);
        }
        Ok(acc)
    }

    /// `R^h`: `h`-fold composition of `R` with itself.
    pub fn power(&self, h: usize) -> Result<BinRel, RelError> {
        self.m_compose(self, h)
    }

    /// Transitive closure, by squaring with union until stable.
    pub fn star(&self) -> BinRel {
        let mut t = self.clone();
        loop {
            let next = t.zip_rows(&t.compose_unchecked(&t), |x, y| x | y);
            if next == t {
                return t;
            }
            t = next;
        }
    }

    /// `R + S`: the union of `R ;_m S` over all `m >= 1`.
    ///
    /// The sequence `R ;_m S` is driven by a finite state (the current product
    /// and the parity of `m`), so the union is complete once a state repeats.
    pub fn plus(&self, other: &BinRel) -> Result<BinRel, RelError> {
        same_size(self, other)?;
        let mut seen = HashSet::new();
        let mut current = self.clone();
        let mut union = self.clone();
        // `odd` is true when the factor count so far is odd, so the next factor is `other`.
        let mut odd = true;
        while seen.insert((current.clone(), odd)) {
            current = current.compose_unchecked(if odd { other } else { self });
            odd = !odd;
            union = union.zip_rows(&current, |x, y| x | y);
        }
        Ok(union)
    }
}

fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn same_size(a: &BinRel, b: &BinRel) -> Result<(), RelError> {
    if a.n != b.n {
        return Err(RelError::SizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

impl Ord for BinRel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (&x, &y) in self.rows.iter().zip(&other.rows) {
                let diff = x ^ y;
                if diff != 0 {
                    // the lowest differing column comes first in the flattened order
                    let b = diff.trailing_zeros();
                    return if x >> b & 1 == 1 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BinRel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Literal syntax: `+`-separated items, each `delta`, `nabla`, `empty`, or a
/// pair `a-b`. Printing uses `nabla` for the full relation, otherwise
/// `delta` (when reflexive) followed by the remaining pairs.
impl fmt::Display for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == BinRel::nabla(self.n) {
            return f.write_str("nabla");
        }
        let reflexive = self.is_reflexive();
        let mut items: Vec<String> = Vec::new();
        if reflexive {
            items.push("delta".into());
        }
        items.extend(
            self.pairs()
                .filter(|&(a, b)| !(reflexive && a == b))
                .map(|(a, b)| format!("{a}-{b}")),
        );
        if items.is_empty() {
            return f.write_str("empty");
        }
        f.write_str(&items.join("+"))
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel[{}]({})", self.n, self)
    }
}

impl BinRel {
    /// Parses the literal syntax described on the `Display` impl.
    pub fn parse(n: usize, text: &str) -> Result<BinRel, RelError> {
        if !(1..=MAX_SIZE).contains(&n) {
            return Err(RelError::UnsupportedSize(n));
        }
        let bad = |msg: &str| RelError::Literal {
            text: text.to_string(),
            message: msg.to_string(),
        };
        let mut r = BinRel::empty(n);
        for item in text.split('+').map(str::trim) {
            match item {
                "delta" => r = r.zip_rows(&BinRel::delta(n), |x, y| x | y),
                "nabla" => r = BinRel::nabla(n),
                "empty" => {}
                "" => return Err(bad("empty item")),
                pair => {
                    let (a, b) = pair.split_once('-').ok_or_else(|| bad("expected `a-b`"))?;
                    let a: Element = a.trim().parse().map_err(|_| bad("bad element"))?;
                    let b: Element = b.trim().parse().map_err(|_| bad("bad element"))?;
                    if a >= n || b >= n {
                        return Err(bad("element outside universe"));
                    }
                    r.insert(a, b);
                }
            }
        }
        Ok(r)
    }
}
