//! Triangulations: validity, exhaustive enumeration and the interval dynamic
//! program deciding whether a set of allowed diagonals contains one.

use crate::polygon::{chords_cross, Diagonal, DiagonalSet, PolygonError, PolygonSize};
use crate::scalar::Count;

/// `n - 3` pairwise non-crossing diagonals of an n-gon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    diagonals: DiagonalSet,
}

impl Triangulation {
    pub fn new(diagonals: DiagonalSet) -> Result<Self, DiagonalSet> {
        if is_triangulation(diagonals.polygon(), &diagonals) {
            Ok(Self { diagonals })
        } else {
            Err(diagonals)
        }
    }

    pub fn polygon(&self) -> PolygonSize {
        self.diagonals.polygon()
    }

    pub fn diagonals(&self) -> &DiagonalSet {
        &self.diagonals
    }

    pub fn into_diagonals(self) -> DiagonalSet {
        self.diagonals
    }
}

/// Whether `s` has exactly `n - 3` members, no two crossing.
///
/// In a convex polygon every non-crossing set has at most `n - 3` diagonals,
/// so this also establishes maximality.
pub fn is_triangulation(n: PolygonSize, s: &DiagonalSet) -> bool {
    if s.polygon() != n || s.len() != n.get() - 3 {
        return false;
    }
    is_non_crossing(s)
}

pub fn is_non_crossing(s: &DiagonalSet) -> bool {
    let members: Vec<Diagonal> = s.iter().collect();
    members.iter().enumerate().all(|(k, a)| {
        members[k + 1..]
            .iter()
            .all(|b| !chords_cross(a.i(), a.j(), b.i(), b.j()))
    })
}

/// Core interval DP. `usable(i, j)` is asked only for diagonals `i < j`.
/// Returns the chosen diagonals, preferring the least apex in every cell.
pub(crate) fn find_triangulation(
    n: usize,
    usable: impl Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    const NONE: u16 = u16::MAX;
    const EDGE: u16 = u16::MAX - 1;
    // apex[i * n + j]: least apex splitting interval (i, j), EDGE for j = i + 1.
    let mut apex = vec![NONE; n * n];
    let chord_ok = |i: usize, j: usize| j == i + 1 || (i == 0 && j == n - 1) || usable(i, j);
    for i in 0..n - 1 {
        apex[i * n + i + 1] = EDGE;
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            if !chord_ok(i, j) {
                continue;
            }
            for k in i + 1..j {
                if apex[i * n + k] != NONE && apex[k * n + j] != NONE {
                    apex[i * n + j] = k as u16;
                    break;
                }
            }
        }
    }
    if apex[n - 1] == NONE {
        return None;
    }
    let mut out = Vec::with_capacity(n - 3);
    let mut stack = vec![(0usize, n - 1)];
    while let Some((i, j)) = stack.pop() {
        let a = apex[i * n + j];
        if a == EDGE {
            continue;
        }
        if !(i == 0 && j == n - 1) {
            out.push((i, j));
        }
        let k = a as usize;
        stack.push((k, j));
        stack.push((i, k));
    }
    Some(out)
}

/// Some triangulation using only diagonals of `allowed`, if one exists.
///
/// `None` exactly when the complement of `allowed` is a blocking set.
pub fn contains_triangulation(n: PolygonSize, allowed: &DiagonalSet) -> Option<Triangulation> {
    assert_eq!(allowed.polygon(), n, "diagonal set of a different polygon");
    let table = n.index_table();
    let nn = n.get();
    let found = find_triangulation(nn, |i, j| allowed.contains_index(table[i * nn + j]))?;
    let mut diagonals = DiagonalSet::empty(n);
    for (i, j) in found {
        diagonals.insert(Diagonal::unchecked(i, j));
    }
    Some(Triangulation { diagonals })
}

/// Decision-only DP over a 64-bit mask of diagonal indices (`n <= 12`).
pub(crate) fn mask_contains_triangulation(n: usize, table: &[usize], allowed: u64) -> bool {
    let mut ok = [[false; 12]; 12];
    for i in 0..n - 1 {
        ok[i][i + 1] = true;
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            let usable = (i == 0 && j == n - 1) || allowed >> table[i * n + j] & 1 == 1;
            if usable {
                ok[i][j] = (i + 1..j).any(|k| ok[i][k] && ok[k][j]);
            }
        }
    }
    ok[0][n - 1]
}

/// Streams every triangulation of the n-gon exactly once.
///
/// Each sub-polygon `(i, j)` is split by the triangle on its edge `(i, j)`,
/// trying apexes in increasing order; the order is deterministic.
pub fn enumerate_triangulations(n: PolygonSize) -> Triangulations {
    let mut it = Triangulations {
        n,
        frames: Vec::new(),
        done: false,
    };
    it.descend(vec![(0, n.get() - 1)]);
    it
}

#[derive(Debug, Clone)]
struct Frame {
    /// Pending intervals before this split was taken.
    pending: Vec<(usize, usize)>,
    interval: (usize, usize),
    apex: usize,
}

/// Iterator returned by [`enumerate_triangulations`].
#[derive(Debug, Clone)]
pub struct Triangulations {
    n: PolygonSize,
    frames: Vec<Frame>,
    done: bool,
}

impl Triangulations {
    fn descend(&mut self, mut pending: Vec<(usize, usize)>) {
        while let Some((i, j)) = pending.pop() {
            if j - i < 2 {
                continue;
            }
            let apex = i + 1;
            self.frames.push(Frame {
                pending: pending.clone(),
                interval: (i, j),
                apex,
            });
            pending.push((apex, j));
            pending.push((i, apex));
        }
    }

    fn current(&self) -> Triangulation {
        let mut diagonals = DiagonalSet::empty(self.n);
        for f in &self.frames {
            let (i, j) = f.interval;
            if f.apex - i >= 2 {
                diagonals.insert(Diagonal::unchecked(i, f.apex));
            }
            if j - f.apex >= 2 {
                diagonals.insert(Diagonal::unchecked(f.apex, j));
            }
        }
        Triangulation { diagonals }
    }

    fn advance(&mut self) -> bool {
        while let Some(mut f) = self.frames.pop() {
            let (i, j) = f.interval;
            if f.apex + 1 < j {
                f.apex += 1;
                let mut pending = f.pending.clone();
                pending.push((f.apex, j));
                pending.push((i, f.apex));
                self.frames.push(f);
                self.descend(pending);
                return true;
            }
        }
        false
    }
}

impl Iterator for Triangulations {
    type Item = Triangulation;

    fn next(&mut self) -> Option<Triangulation> {
        if self.done {
            return None;
        }
        let t = self.current();
        if !self.advance() {
            self.done = true;
        }
        Some(t)
    }
}

/// Every triangulation as a bit mask over diagonal indices (`n <= 12`).
pub fn triangulation_masks(n: PolygonSize) -> Result<Vec<u64>, PolygonError> {
    if n.diagonal_count() > 64 {
        return Err(PolygonError::TooLargeForMask(n.get()));
    }
    Ok(enumerate_triangulations(n)
        .map(|t| t.diagonals().low_word())
        .collect())
}

/// Catalan number `C(m)`, by the convolution recurrence. `None` on overflow.
pub fn catalan<T: Count>(m: usize) -> Option<T> {
    let mut c: Vec<T> = vec![T::one()];
    for k in 0..m {
        let mut next = T::zero();
        for i in 0..=k {
            next = next.checked_add(&c[i].checked_mul(&c[k - i])?)?;
        }
        c.push(next);
    }
    c.pop()
}

/// Number of triangulations of an n-gon, `C(n - 2)`.
pub fn triangulation_count<T: Count>(n: PolygonSize) -> Option<T> {
    catalan(n.get() - 2)
}
