//! Blocking sets and blockers of the triangulations of a convex polygon.
//!
//! A blocking set meets every triangulation; a blocker is a blocking set of
//! the minimum size `n - 2`. Every blocker has the normal form described by
//! [`BlockerStructure`]; [`enumerate_blockers`] generates them from it and
//! [`brute_force_blockers`] finds them without it.

mod enumerate;
mod observations;
mod structure;

pub use enumerate::{
    brute_force_blockers, canonical_blockers, enumerate_blockers, nominal_structures, BRUTE_FORCE_LIMIT,
};
pub use observations::{observation_checks, ObservationCheck, ObservationReport, Witness};
pub use structure::{build_edges, parse_structure, BlockerStructure, StructureViolation};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{diagonal_order, DiagonalSet, PolygonError, PolygonSize};
use crate::triangulation::{contains_triangulation, enumerate_triangulations};

/// Largest `n` for which the exhaustive blocking test is allowed.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockerError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("invalid blocker structure: {0}")]
    InvalidStructure(String),
    #[error("n={n} exceeds the feasibility limit {limit} for this method")]
    Infeasible { n: usize, limit: usize },
}

/// How [`is_blocking_set`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockingMethod {
    /// Interval DP on the complement, `O(n^3)`.
    #[default]
    Dp,
    /// Scan of every triangulation; `n <= 12`.
    Exhaustive,
}

/// Members of `b` of order 2.
pub fn ears_of(n: PolygonSize, b: &DiagonalSet) -> DiagonalSet {
    let mut out = DiagonalSet::empty(n);
    for d in b.iter() {
        if diagonal_order(n, d) == Ok(2) {
            out.insert(d);
        }
    }
    out
}

/// Whether every triangulation uses a member of `b`.
pub fn is_blocking_set(
    n: PolygonSize,
    b: &DiagonalSet,
    method: BlockingMethod,
) -> Result<bool, BlockerError> {
    if b.polygon() != n {
        return Err(PolygonError::SizeMismatch(n.get(), b.polygon().get()).into());
    }
    match method {
        BlockingMethod::Dp => Ok(contains_triangulation(n, &b.complement()).is_none()),
        BlockingMethod::Exhaustive => {
            if n.get() > EXHAUSTIVE_LIMIT {
                return Err(BlockerError::Infeasible {
                    n: n.get(),
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            Ok(enumerate_triangulations(n).all(|t| !t.diagonals().is_disjoint(b)))
        }
    }
}

/// A blocking set of size `n - 2`, the least size any blocking set can have.
pub fn is_blocker(n: PolygonSize, b: &DiagonalSet) -> bool {
    b.polygon() == n
        && b.len() == n.get() - 2
        && is_blocking_set(n, b, BlockingMethod::Dp).unwrap_or(false)
}

/// Everything known about one candidate edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockerReport {
    pub n: PolygonSize,
    pub is_blocking: bool,
    pub size: usize,
    /// `size == n - 2`.
    pub is_minimum_size: bool,
    pub is_blocker: bool,
    pub structure: Option<BlockerStructure>,
    pub structure_violation: Option<StructureViolation>,
    pub observations: ObservationReport,
}

pub fn verify(n: PolygonSize, b: &DiagonalSet) -> Result<BlockerReport, BlockerError> {
    let is_blocking = is_blocking_set(n, b, BlockingMethod::Dp)?;
    let size = b.len();
    let is_minimum_size = size == n.get() - 2;
    let (structure, structure_violation) = match parse_structure(n, b) {
        Ok(s) => (Some(s), None),
        Err(v) => (None, Some(v)),
    };
    Ok(BlockerReport {
        n,
        is_blocking,
        size,
        is_minimum_size,
        is_blocker: is_blocking && is_minimum_size,
        structure,
        structure_violation,
        observations: observation_checks(n, b),
    })
}
