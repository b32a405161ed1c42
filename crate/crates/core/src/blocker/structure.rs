//! The normal form of a blocker: a run of consecutive ear-covers (the net)
//! plus one beam from every vertex outside the net to an interior net vertex.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ears_of, BlockerError};
use crate::polygon::{chords_cross, covered_vertex, Diagonal, DiagonalSet, PolygonSize};

/// Offsets are vertex labels; beam targets are relative to `offset`.
///
/// With `a = offset`, the net is `(a, a+2), (a+1, a+3), …, (a+m, a+m+2)` and
/// beam `j` (1-based) is `(a+m+2+j, a+beams[j-1])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockerStructure {
    pub offset: usize,
    pub m: usize,
    pub beams: Vec<usize>,
}

/// Why an edge set failed to parse as a blocker normal form.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum StructureViolation {
    #[error("edge set belongs to a {found}-gon, expected {expected}")]
    WrongPolygon { expected: usize, found: usize },
    #[error("only {0} ear-cover(s); a net needs at least 2")]
    TooFewEars(usize),
    #[error("{0} ear-covers; a net has at most n-2")]
    TooManyEars(usize),
    #[error("ear-covers form {0} separate runs")]
    EarsNotContiguous(usize),
    #[error("{0} is neither a net edge nor a beam into the net interior")]
    NotABeam(Diagonal),
    #[error("vertex {0} carries more than one beam")]
    DuplicateBeam(usize),
    #[error("vertex {0} outside the net carries no beam")]
    MissingBeam(usize),
    #[error("beams {0} and {1} cross although their targets are not consecutive")]
    CrossingBeams(usize, usize),
}

impl BlockerStructure {
    pub fn net_ears(&self) -> usize {
        self.m + 1
    }

    /// Checks the parameter ranges and the beam non-crossing rule in its
    /// geometric form.
    pub fn validate(&self, n: PolygonSize) -> Result<(), BlockerError> {
        let nn = n.get();
        let bad = |msg: String| Err(BlockerError::InvalidStructure(msg));
        if self.offset >= nn {
            return bad(format!("offset {} out of range", self.offset));
        }
        if self.m < 1 || self.m > nn - 3 {
            return bad(format!("net parameter m={} outside [1, {}]", self.m, nn - 3));
        }
        if self.beams.len() != nn - 3 - self.m {
            return bad(format!(
                "expected {} beams, got {}",
                nn - 3 - self.m,
                self.beams.len()
            ));
        }
        if let Some(&t) = self.beams.iter().find(|&&t| t < 1 || t > self.m + 1) {
            return bad(format!("beam target {t} outside [1, {}]", self.m + 1));
        }
        for (j, &tj) in self.beams.iter().enumerate() {
            for (k, &tk) in self.beams.iter().enumerate().skip(j + 1) {
                if tj.abs_diff(tk) >= 2 {
                    let (sj, sk) = (self.m + 3 + j, self.m + 3 + k);
                    let a = (tj.min(sj), tj.max(sj));
                    let b = (tk.min(sk), tk.max(sk));
                    if chords_cross(a.0, a.1, b.0, b.1) {
                        return bad(format!("beams {} and {} cross", j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BlockerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, m={}, beams=[", self.offset, self.m)?;
        for (k, b) in self.beams.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

/// Emits the `n - 2` net and beam edges of a structure.
pub fn build_edges(n: PolygonSize, st: &BlockerStructure) -> Result<DiagonalSet, BlockerError> {
    st.validate(n)?;
    let nn = n.get();
    let at = |rel: usize| (st.offset + rel) % nn;
    let mut out = DiagonalSet::empty(n);
    for t in 0..=st.m {
        out.insert(Diagonal::new(n, at(t), at(t + 2))?);
    }
    for (j, &target) in st.beams.iter().enumerate() {
        out.insert(Diagonal::new(n, at(st.m + 3 + j), at(target))?);
    }
    Ok(out)
}

/// Recovers the normal form of `b`, with the net taken as the full run of
/// ear-covers actually present in `b`.
pub fn parse_structure(
    n: PolygonSize,
    b: &DiagonalSet,
) -> Result<BlockerStructure, StructureViolation> {
    let nn = n.get();
    if b.polygon() != n {
        return Err(StructureViolation::WrongPolygon {
            expected: nn,
            found: b.polygon().get(),
        });
    }
    let ears = ears_of(n, b);
    let mut covered = vec![false; nn];
    for e in ears.iter() {
        covered[covered_vertex(n, e).expect("ears are ear-covers")] = true;
    }
    let count = ears.len();
    if count < 2 {
        return Err(StructureViolation::TooFewEars(count));
    }
    if count > nn - 2 {
        return Err(StructureViolation::TooManyEars(count));
    }
    let starts: Vec<usize> = (0..nn)
        .filter(|&v| covered[v] && !covered[(v + nn - 1) % nn])
        .collect();
    if starts.len() != 1 {
        return Err(StructureViolation::EarsNotContiguous(starts.len()));
    }
    let offset = (starts[0] + nn - 1) % nn;
    let m = count - 1;
    let rel = |v: usize| (v + nn - offset) % nn;

    // beam_of[r - (m + 3)] = relative target of the beam leaving relative vertex r
    let mut beam_of: Vec<Option<usize>> = vec![None; nn - 3 - m];
    for e in b.difference(&ears).iter() {
        let (ru, rv) = (rel(e.i()), rel(e.j()));
        let (outer, inner) = if ru > rv { (ru, rv) } else { (rv, ru) };
        if outer < m + 3 || !(1..=m + 1).contains(&inner) {
            return Err(StructureViolation::NotABeam(e));
        }
        let slot = &mut beam_of[outer - (m + 3)];
        if slot.is_some() {
            return Err(StructureViolation::DuplicateBeam((offset + outer) % nn));
        }
        *slot = Some(inner);
    }
    let mut beams = Vec::with_capacity(beam_of.len());
    let mut lowest = usize::MAX;
    for (k, slot) in beam_of.iter().enumerate() {
        let target = slot.ok_or(StructureViolation::MissingBeam((offset + m + 3 + k) % nn))?;
        if target > lowest.saturating_add(1) {
            let j = beams.iter().position(|&t| t + 1 < target).unwrap_or(0);
            return Err(StructureViolation::CrossingBeams(j + 1, k + 1));
        }
        lowest = lowest.min(target);
        beams.push(target);
    }
    Ok(BlockerStructure { offset, m, beams })
}
