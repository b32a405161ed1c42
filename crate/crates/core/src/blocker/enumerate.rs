//! Blocker generation from the normal form, and the structure-free oracle.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{build_edges, parse_structure, BlockerError, BlockerStructure};
use crate::polygon::{canonical_rotation, rotate, DiagonalSet, PolygonSize};
use crate::triangulation::triangulation_masks;

/// Default ceiling for [`brute_force_blockers`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Every structure with offset 0, as parameters: `m` from 1 to `n-3`, beam
/// targets in `[1, m+1]` with each target at most one more than every earlier
/// target. Distinct parameters may describe the same edge set up to rotation.
pub fn nominal_structures(n: PolygonSize) -> Vec<BlockerStructure> {
    fn extend(
        m: usize,
        len: usize,
        cap: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<BlockerStructure>,
    ) {
        if prefix.len() == len {
            out.push(BlockerStructure {
                offset: 0,
                m,
                beams: prefix.clone(),
            });
            return;
        }
        for t in 1..=cap.min(m + 1) {
            prefix.push(t);
            extend(m, len, cap.min(t + 1), prefix, out);
            prefix.pop();
        }
    }
    let nn = n.get();
    let mut out = Vec::new();
    for m in 1..=nn - 3 {
        extend(m, nn - 3 - m, m + 1, &mut Vec::new(), &mut out);
    }
    out
}

/// One representative per rotation class: the lexicographically least rotation.
pub fn canonical_blockers(n: PolygonSize) -> BTreeSet<DiagonalSet> {
    nominal_structures(n)
        .into_par_iter()
        .map(|st| {
            let edges = build_edges(n, &st).expect("generated structures are valid");
            parse_structure(n, &edges).expect("built edge sets parse");
            canonical_rotation(n, &edges).0
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// All blockers, deduplicated, in lexicographic order. With `up_to_rotation`
/// each rotation class is represented by its least rotation.
pub fn enumerate_blockers(n: PolygonSize, up_to_rotation: bool) -> Vec<DiagonalSet> {
    let canonical = canonical_blockers(n);
    if up_to_rotation {
        return canonical.into_iter().collect();
    }
    let all: BTreeSet<DiagonalSet> = canonical
        .iter()
        .flat_map(|b| (0..n.get()).map(move |k| rotate(n, k, b)))
        .collect();
    all.into_iter().collect()
}

/// Every `(n-2)`-subset of diagonals that meets every triangulation, found by
/// exhaustive search with no reference to the normal form.
///
/// Refuses `n > 10` unless `allow_large`; never goes past `n = 12`.
pub fn brute_force_blockers(
    n: PolygonSize,
    allow_large: bool,
) -> Result<Vec<DiagonalSet>, BlockerError> {
    let nn = n.get();
    let limit = if allow_large { 12 } else { BRUTE_FORCE_LIMIT };
    if nn > limit {
        return Err(BlockerError::Infeasible { n: nn, limit });
    }
    let masks = triangulation_masks(n)?;
    let d = n.diagonal_count();
    let k = nn - 2;
    let hits_all = |s: u64| masks.iter().all(|&t| s & t != 0);

    // Split by lowest member; the rest is a (k-1)-subset of higher indices.
    let mut found: Vec<u64> = (0..=d - k)
        .into_par_iter()
        .flat_map_iter(|low| {
            let rest_bits = d - low - 1;
            let mut local = Vec::new();
            for_each_subset(rest_bits, k - 1, |rest| {
                let s = (1u64 << low) | (rest << (low + 1));
                if hits_all(s) {
                    local.push(s);
                }
            });
            local
        })
        .collect();
    found.sort_unstable();
    let mut sets: Vec<DiagonalSet> = found
        .into_iter()
        .map(|w| DiagonalSet::from_words(n, &[w]).expect("mask within range"))
        .collect();
    sets.sort();
    Ok(sets)
}

/// Visits every `k`-subset of `width` bits (Gosper's hack).
fn for_each_subset(width: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > width {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit: u64 = if width == 64 { u64::MAX } else { 1u64 << width };
    loop {
        f(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r >= limit || r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if s >= limit {
            break;
        }
    }
}
