//! Vertex and diagonal model of a convex n-gon.
//!
//! Vertices are labelled `0..n` clockwise. A [`Diagonal`] is stored with its
//! endpoints in increasing order, and a [`DiagonalSet`] keeps one bit per
//! diagonal of a fixed polygon.
//!
//! # Index layout
//!
//! Diagonals are numbered lexicographically by `(i, j)` with `i < j`:
//! `(0,2), (0,3), …, (0,n-2), (1,3), …, (1,n-1), (2,4), …, (n-3,n-1)`.
//! Row 0 stops at `n-2` because `(0,n-1)` is a polygon edge. The layout is
//! stable; serialized bit vectors depend on it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by the polygon model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {vertex} out of range for a {n}-gon")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("({i},{j}) is not a diagonal of a {n}-gon")]
    NotADiagonal { i: usize, j: usize, n: usize },
    #[error("{0} is not an ear-cover")]
    NotAnEarCover(Diagonal),
    #[error("cannot delete a vertex from a 4-gon")]
    ReductionTooSmall,
    #[error("diagonal sets belong to different polygons ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("a {0}-gon has more than 64 diagonals; bit-mask routines need n <= 12")]
    TooLargeForMask(usize),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Number of vertices of a convex polygon, at least 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct PolygonSize(usize);

impl PolygonSize {
    pub fn new(n: usize) -> Result<Self, PolygonError> {
        if n < 4 {
            return Err(PolygonError::TooSmall(n));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// `n(n-3)/2`.
    #[inline]
    pub fn diagonal_count(self) -> usize {
        self.0 * (self.0 - 3) / 2
    }

    /// Index of the first diagonal whose smaller endpoint is `i`.
    #[inline]
    fn row_offset(self, i: usize) -> usize {
        let n = self.0;
        if i == 0 {
            0
        } else {
            (n - 3) + (i - 1) * (n - 2) - (i - 1) * i / 2
        }
    }

    /// Lexicographic index of a diagonal valid for this polygon.
    pub fn index_of(self, d: Diagonal) -> Result<usize, PolygonError> {
        d.validate(self)?;
        Ok(self.row_offset(d.i) + (d.j - d.i - 2))
    }

    /// Inverse of [`PolygonSize::index_of`].
    pub fn diagonal_at(self, index: usize) -> Option<Diagonal> {
        if index >= self.diagonal_count() {
            return None;
        }
        let n = self.0;
        let mut i = 0;
        while i + 1 < n - 2 && self.row_offset(i + 1) <= index {
            i += 1;
        }
        let j = i + 2 + (index - self.row_offset(i));
        Some(Diagonal { i, j })
    }

    /// All diagonals in index order.
    pub fn diagonals(self) -> impl Iterator<Item = Diagonal> {
        let n = self.0;
        (0..n).flat_map(move |i| {
            let end = if i == 0 { n - 1 } else { n };
            (i + 2..end).map(move |j| Diagonal { i, j })
        })
    }

    /// Flat `n * n` table from `(i, j)` to diagonal index; `usize::MAX`
    /// marks pairs that are not diagonals.
    pub fn index_table(self) -> Vec<usize> {
        let n = self.0;
        let mut table = vec![usize::MAX; n * n];
        for (idx, d) in self.diagonals().enumerate() {
            table[d.i * n + d.j] = idx;
            table[d.j * n + d.i] = idx;
        }
        table
    }

    fn check_vertex(self, v: usize) -> Result<(), PolygonError> {
        if v >= self.0 {
            Err(PolygonError::VertexOutOfRange { vertex: v, n: self.0 })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<usize> for PolygonSize {
    type Error = PolygonError;
    fn try_from(n: usize) -> Result<Self, Self::Error> {
        Self::new(n)
    }
}

impl From<PolygonSize> for usize {
    fn from(n: PolygonSize) -> usize {
        n.0
    }
}

impl fmt::Display for PolygonSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A chord between two non-adjacent vertices, stored with `i < j`.
///
/// Serialized as the pair `[i, j]`; polygon membership is checked by the
/// containing structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct Diagonal {
    i: usize,
    j: usize,
}

impl Diagonal {
    /// Builds the diagonal joining `a` and `b` in either order.
    pub fn new(n: PolygonSize, a: usize, b: usize) -> Result<Self, PolygonError> {
        n.check_vertex(a)?;
        n.check_vertex(b)?;
        let d = Self::unchecked(a, b);
        d.validate(n)?;
        Ok(d)
    }

    /// Canonicalizes the pair without checking it against a polygon.
    #[inline]
    pub(crate) fn unchecked(a: usize, b: usize) -> Self {
        if a < b {
            Self { i: a, j: b }
        } else {
            Self { i: b, j: a }
        }
    }

    #[inline]
    pub fn i(self) -> usize {
        self.i
    }

    #[inline]
    pub fn j(self) -> usize {
        self.j
    }

    #[inline]
    pub fn endpoints(self) -> (usize, usize) {
        (self.i, self.j)
    }

    #[inline]
    pub fn has_endpoint(self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other_endpoint(self, v: usize) -> Option<usize> {
        if self.i == v {
            Some(self.j)
        } else if self.j == v {
            Some(self.i)
        } else {
            None
        }
    }

    pub fn validate(self, n: PolygonSize) -> Result<(), PolygonError> {
        let nn = n.get();
        if self.j >= nn {
            return Err(PolygonError::VertexOutOfRange { vertex: self.j, n: nn });
        }
        let gap = self.j - self.i;
        if gap < 2 || gap > nn - 2 {
            return Err(PolygonError::NotADiagonal { i: self.i, j: self.j, n: nn });
        }
        Ok(())
    }

    pub fn is_valid(self, n: PolygonSize) -> bool {
        self.validate(n).is_ok()
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

/// An unvalidated `i-j` pair as typed by a user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexPair(pub usize, pub usize);

impl VertexPair {
    pub fn to_diagonal(self, n: PolygonSize) -> Result<Diagonal, PolygonError> {
        Diagonal::new(n, self.0, self.1)
    }
}

impl FromStr for VertexPair {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pair(s, 0)
    }
}

fn parse_pair(s: &str, base: usize) -> Result<VertexPair, PolygonError> {
    let err = |offset: usize, message: &str| PolygonError::Parse {
        position: base + offset,
        message: message.to_string(),
    };
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let dash = t.find('-').ok_or_else(|| err(lead, "expected `i-j`"))?;
    let (a, b) = (&t[..dash], &t[dash + 1..]);
    let a = a
        .trim()
        .parse::<usize>()
        .map_err(|_| err(lead, "expected a vertex label"))?;
    let b = b
        .trim()
        .parse::<usize>()
        .map_err(|_| err(lead + dash + 1, "expected a vertex label"))?;
    Ok(VertexPair(a, b))
}

/// Order of a diagonal: `min(j - i, n - (j - i))`.
pub fn diagonal_order(n: PolygonSize, d: Diagonal) -> Result<usize, PolygonError> {
    d.validate(n)?;
    let gap = d.j - d.i;
    Ok(gap.min(n.get() - gap))
}

pub fn is_ear_cover(n: PolygonSize, d: Diagonal) -> Result<bool, PolygonError> {
    Ok(diagonal_order(n, d)? == 2)
}

/// The vertex strictly between the endpoints of an ear-cover.
///
/// For `n = 4` both arcs have length 2; the vertex `i + 1` is returned.
pub fn covered_vertex(n: PolygonSize, d: Diagonal) -> Result<usize, PolygonError> {
    if !is_ear_cover(n, d)? {
        return Err(PolygonError::NotAnEarCover(d));
    }
    if d.j - d.i == 2 {
        Ok(d.i + 1)
    } else {
        Ok((d.j + 1) % n.get())
    }
}

/// The ear-cover `(v-1, v+1)`.
pub fn ear_cover_of(n: PolygonSize, v: usize) -> Result<Diagonal, PolygonError> {
    n.check_vertex(v)?;
    let nn = n.get();
    Ok(Diagonal::unchecked((v + nn - 1) % nn, (v + 1) % nn))
}

/// True iff the two chords share an interior point. Shared endpoints do not count.
pub fn crosses(n: PolygonSize, a: Diagonal, b: Diagonal) -> Result<bool, PolygonError> {
    a.validate(n)?;
    b.validate(n)?;
    Ok(chords_cross(a.i, a.j, b.i, b.j))
}

/// Interleaving test on canonical pairs `a < b`, `c < d`.
#[inline]
pub(crate) fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl From<Diagonal> for (usize, usize) {
    fn from(d: Diagonal) -> Self {
        (d.i, d.j)
    }
}

impl TryFrom<(usize, usize)> for Diagonal {
    type Error = String;
    fn try_from((a, b): (usize, usize)) -> Result<Self, Self::Error> {
        if a.abs_diff(b) < 2 {
            return Err(format!("({a},{b}) is not a diagonal"));
        }
        Ok(Self::unchecked(a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct DiagonalSetRepr {
    n: PolygonSize,
    diagonals: Vec<Diagonal>,
}

impl From<DiagonalSet> for DiagonalSetRepr {
    fn from(s: DiagonalSet) -> Self {
        Self {
            n: s.n,
            diagonals: s.iter().collect(),
        }
    }
}

impl TryFrom<DiagonalSetRepr> for DiagonalSet {
    type Error = PolygonError;
    fn try_from(r: DiagonalSetRepr) -> Result<Self, Self::Error> {
        DiagonalSet::from_diagonals(r.n, r.diagonals)
    }
}

/// A set of diagonals of one fixed polygon, one bit per diagonal.
///
/// Serialized as `{"n": .., "diagonals": [[i, j], ..]}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DiagonalSetRepr", try_from = "DiagonalSetRepr")]
pub struct DiagonalSet {
    n: PolygonSize,
    words: Vec<u64>,
}

impl DiagonalSet {
    pub fn empty(n: PolygonSize) -> Self {
        Self {
            n,
            words: vec![0; n.diagonal_count().div_ceil(64)],
        }
    }

    /// Every diagonal of the polygon.
    pub fn full(n: PolygonSize) -> Self {
        let mut s = Self::empty(n);
        let count = n.diagonal_count();
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            let bits = (count - lo).min(64);
            *word = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_diagonals<I>(n: PolygonSize, diagonals: I) -> Result<Self, PolygonError>
    where
        I: IntoIterator<Item = Diagonal>,
    {
        let mut s = Self::empty(n);
        for d in diagonals {
            s.try_insert(d)?;
        }
        Ok(s)
    }

    /// Builds a set from raw vertex pairs, in either endpoint order.
    pub fn from_pairs<I>(n: PolygonSize, pairs: I) -> Result<Self, PolygonError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = Self::empty(n);
        for (a, b) in pairs {
            s.try_insert(Diagonal::new(n, a, b)?)?;
        }
        Ok(s)
    }

    /// Parses the `i-j,i-j,…` text form. An empty string is the empty set.
    pub fn parse(n: PolygonSize, text: &str) -> Result<Self, PolygonError> {
        let mut s = Self::empty(n);
        if text.trim().is_empty() {
            return Ok(s);
        }
        let mut offset = 0;
        for item in text.split(',') {
            let pair = parse_pair(item, offset)?;
            let d = pair.to_diagonal(n).map_err(|e| PolygonError::Parse {
                position: offset + (item.len() - item.trim_start().len()),
                message: e.to_string(),
            })?;
            s.insert(d);
            offset += item.len() + 1;
        }
        Ok(s)
    }

    /// Reads a set back from its raw words (lexicographic index layout).
    pub fn from_words(n: PolygonSize, words: &[u64]) -> Result<Self, PolygonError> {
        let mut s = Self::empty(n);
        if words.len() > s.words.len() {
            return Err(PolygonError::Parse {
                position: 0,
                message: "too many words for this polygon".into(),
            });
        }
        s.words[..words.len()].copy_from_slice(words);
        if s != s.intersection(&Self::full(n)) {
            return Err(PolygonError::Parse {
                position: 0,
                message: "bits set beyond the last diagonal".into(),
            });
        }
        Ok(s)
    }

    #[inline]
    pub fn polygon(&self) -> PolygonSize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits; exact whenever the polygon has at most 64 diagonals (`n <= 12`).
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn try_insert(&mut self, d: Diagonal) -> Result<bool, PolygonError> {
        let idx = self.n.index_of(d)?;
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        Ok(fresh)
    }

    /// Inserts `d`; returns whether it was absent.
    ///
    /// Panics if `d` is not a diagonal of this polygon.
    pub fn insert(&mut self, d: Diagonal) -> bool {
        match self.try_insert(d) {
            Ok(fresh) => fresh,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn remove(&mut self, d: Diagonal) -> bool {
        match self.n.index_of(d) {
            Ok(idx) => {
                let (w, b) = (idx / 64, idx % 64);
                let present = self.words[w] & (1 << b) != 0;
                self.words[w] &= !(1 << b);
                present
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        match self.n.index_of(d) {
            Ok(idx) => self.words[idx / 64] & (1 << (idx % 64)) != 0,
            Err(_) => false,
        }
    }

    #[inline]
    pub(crate) fn contains_index(&self, idx: usize) -> bool {
        self.words[idx / 64] & (1 << (idx % 64)) != 0
    }

    /// Set indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Diagonal> + '_ {
        let n = self.n.get();
        (0..n).flat_map(move |i| {
            let end = if i == 0 { n - 1 } else { n };
            (i + 2..end)
                .map(move |j| Diagonal { i, j })
                .filter(move |d| self.contains_row(i, *d))
        })
    }

    #[inline]
    fn contains_row(&self, i: usize, d: Diagonal) -> bool {
        let idx = self.n.row_offset(i) + (d.j - i - 2);
        self.contains_index(idx)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "diagonal sets of different polygons");
        Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// All diagonals of the polygon not in `self`.
    pub fn complement(&self) -> Self {
        Self::full(self.n).difference(self)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Number of members incident to each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n.get()];
        for d in self.iter() {
            deg[d.i] += 1;
            deg[d.j] += 1;
        }
        deg
    }

    /// Compares the sorted member lists lexicographically.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Ord for DiagonalSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for DiagonalSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiagonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiagonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalSet(n={}, {{{}}})", self.n, self)
    }
}

/// Maps every diagonal `(i, j)` to `(i + k, j + k) mod n`.
pub fn rotate(n: PolygonSize, k: usize, s: &DiagonalSet) -> DiagonalSet {
    let nn = n.get();
    let k = k % nn;
    let mut out = DiagonalSet::empty(n);
    for d in s.iter() {
        out.insert(Diagonal::unchecked((d.i + k) % nn, (d.j + k) % nn));
    }
    out
}

/// The lexicographically least rotation of `s` and the offset that produces it.
///
/// Ties (sets fixed by some rotation) resolve to the smallest offset.
pub fn canonical_rotation(n: PolygonSize, s: &DiagonalSet) -> (DiagonalSet, usize) {
    let mut best = s.clone();
    let mut best_k = 0;
    for k in 1..n.get() {
        let r = rotate(n, k, s);
        if r.lex_cmp(&best) == Ordering::Less {
            best = r;
            best_k = k;
        }
    }
    (best, best_k)
}

/// Deletes vertex `v`: drops diagonals incident to it, closes the label gap,
/// and drops chords that became polygon edges of the `(n-1)`-gon.
pub fn remove_vertex(
    n: PolygonSize,
    v: usize,
    s: &DiagonalSet,
) -> Result<(PolygonSize, DiagonalSet), PolygonError> {
    n.check_vertex(v)?;
    if n.get() == 4 {
        return Err(PolygonError::ReductionTooSmall);
    }
    let smaller = PolygonSize::new(n.get() - 1)?;
    let relabel = |u: usize| if u > v { u - 1 } else { u };
    let mut out = DiagonalSet::empty(smaller);
    for d in s.iter().filter(|d| !d.has_endpoint(v)) {
        let r = Diagonal::unchecked(relabel(d.i), relabel(d.j));
        if r.is_valid(smaller) {
            out.insert(r);
        }
    }
    Ok((smaller, out))
}
