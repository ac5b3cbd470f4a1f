use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Anything that can answer "is `a` related to `b`" over a universe of a
/// fixed size.
pub trait RelationLike {
    fn size(&self) -> usize;
    fn related(&self, a: usize, b: usize) -> bool;
}

/// A binary relation on `{0, .., n-1}` stored as an `n × n` bit matrix with
/// word-packed rows. Bit `(a, b)` is set iff `a R b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinRel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BinRel {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        BinRel {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// The identity relation, the congruence `0`.
    pub fn diagonal(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for a in 0..n {
            r.insert(a, a);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for a in 0..n {
            r.fill_row(a);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = BinRel::empty(n);
        for (a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::ElementOutOfRange {
                        element: v,
                        size: n,
                    });
                }
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    /// `Δ ∪ {(a, b)}`.
    pub fn principal(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut r = BinRel::from_pairs(n, [(a, b)])?;
        r.reflexive_close();
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / WORD] >> (b % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let w = &mut self.bits[a * self.words + b / WORD];
        let mask = 1u64 << (b % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / WORD] &= !(1u64 << (b % WORD));
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    fn fill_row(&mut self, a: usize) {
        let n = self.n;
        let row = &mut self.bits[a * self.words..(a + 1) * self.words];
        for (i, w) in row.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(n);
            *w = if hi - lo == WORD {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
    }

    /// Columns set in row `a`, ascending.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(a))
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.successors(a).map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn check_same_size(&self, other: &BinRel) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel> {
        self.check_same_size(other)?;
        let mut out = self.clone();
        out.union_with(other);
        Ok(out)
    }

    /// The meet `R ∩ S`, written by juxtaposition in the notation this crate
    /// follows (`αβ`).
    pub fn intersect(&self, other: &BinRel) -> Result<BinRel> {
        self.check_same_size(other)?;
        let mut out = self.clone();
        out.intersect_with(other);
        Ok(out)
    }

    /// In-place union. Sizes must match.
    pub fn union_with(&mut self, other: &BinRel) {
        assert_eq!(self.n, other.n, "relation size mismatch");
        for (w, o) in self.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
    }

    /// In-place intersection. Sizes must match.
    pub fn intersect_with(&mut self, other: &BinRel) {
        assert_eq!(self.n, other.n, "relation size mismatch");
        for (w, o) in self.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
    }

    pub fn is_subset(&self, other: &BinRel) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(self.is_subset_unchecked(other))
    }

    #[inline]
    pub(crate) fn is_subset_unchecked(&self, other: &BinRel) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Some pair of `self` missing from `other`, smallest in row-major order.
    pub fn first_missing(&self, other: &BinRel) -> Result<Option<(usize, usize)>> {
        self.check_same_size(other)?;
        for a in 0..self.n {
            for (i, (x, y)) in self.row(a).iter().zip(other.row(a)).enumerate() {
                let diff = x & !y;
                if diff != 0 {
                    return Ok(Some((a, i * WORD + diff.trailing_zeros() as usize)));
                }
            }
        }
        Ok(None)
    }

    /// The converse `R⁻`.
    pub fn converse(&self) -> BinRel {
        let mut out = BinRel::empty(self.n);
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        out
    }

    /// Relational product `R ∘ S`: `a (R∘S) c` iff `a R b S c` for some `b`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel> {
        self.check_same_size(other)?;
        let mut out = BinRel::empty(self.n);
        self.compose_into(other, &mut out);
        Ok(out)
    }

    pub(crate) fn compose_into(&self, other: &BinRel, out: &mut BinRel) {
        debug_assert_eq!(self.n, other.n);
        debug_assert_eq!(self.n, out.n);
        let words = self.words;
        for a in 0..self.n {
            let dst = a * words;
            out.bits[dst..dst + words].fill(0);
            for b in iter_bits(&self.bits[dst..dst + words]) {
                let src = b * words;
                for i in 0..words {
                    out.bits[dst + i] |= other.bits[src + i];
                }
            }
        }
    }

    /// Least transitive superset, by bit-parallel Warshall.
    pub fn transitive_closure(&self) -> BinRel {
        let mut out = self.clone();
        out.transitive_close();
        out
    }

    pub fn transitive_close(&mut self) {
        let words = self.words;
        for k in 0..self.n {
            let (kw, kb) = (k / WORD, 1u64 << (k % WORD));
            for i in 0..self.n {
                if self.bits[i * words + kw] & kb != 0 && i != k {
                    for w in 0..words {
                        let v = self.bits[k * words + w];
                        self.bits[i * words + w] |= v;
                    }
                }
            }
        }
    }

    pub fn reflexive_closure(&self) -> BinRel {
        let mut out = self.clone();
        out.reflexive_close();
        out
    }

    pub fn reflexive_close(&mut self) {
        for a in 0..self.n {
            self.insert(a, a);
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        let mut sq = BinRel::empty(self.n);
        self.compose_into(self, &mut sq);
        sq.is_subset_unchecked(self)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    pub fn to_literal(&self) -> RelationLiteral {
        RelationLiteral {
            size: self.n,
            pairs: self.pairs().map(|(a, b)| [a, b]).collect(),
            reflexive_close: false,
        }
    }

    pub fn from_literal(lit: &RelationLiteral) -> Result<BinRel> {
        let mut r = BinRel::from_pairs(lit.size, lit.pairs.iter().map(|p| (p[0], p[1])))?;
        if lit.reflexive_close {
            r.reflexive_close();
        }
        Ok(r)
    }

    /// Parses the JSON relation literal.
    pub fn from_json(text: &str) -> Result<BinRel> {
        let lit: RelationLiteral =
            serde_json::from_str(text).map_err(|e| Error::MalformedRelation(e.to_string()))?;
        BinRel::from_literal(&lit)
    }
}

impl RelationLike for BinRel {
    fn size(&self) -> usize {
        self.n
    }

    fn related(&self, a: usize, b: usize) -> bool {
        self.contains(a, b)
    }
}

/// Canonical text dump: one row of `0`/`1` characters per line.
impl fmt::Display for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.n {
            let row: String = (0..self.n)
                .map(|b| if self.contains(a, b) { '1' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel({}; ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}

/// JSON form of a relation: `{"size": n, "pairs": [[a, b], ...], "reflexive_close": bool}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationLiteral {
    pub size: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub reflexive_close: bool,
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + t)
            }
        })
    })
}
