//! Necessary conditions every blocker satisfies, evaluated on any edge set.

use serde::{Deserialize, Serialize};

use super::ears_of;
use crate::polygon::{ear_cover_of, Diagonal, DiagonalSet, PolygonSize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObservationCheck {
    /// Every vertex is incident to some edge.
    NoIsolatedVertex,
    /// A vertex of degree at least 2 has its ear-cover in the set.
    HighDegreeHasEarCover,
    /// Every edge has an endpoint whose ear-cover is in the set.
    EdgeEndpointCovered,
    /// At least two ear-covers.
    TwoEarCovers,
}

impl ObservationCheck {
    pub const ALL: [ObservationCheck; 4] = [
        ObservationCheck::NoIsolatedVertex,
        ObservationCheck::HighDegreeHasEarCover,
        ObservationCheck::EdgeEndpointCovered,
        ObservationCheck::TwoEarCovers,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ObservationCheck::NoIsolatedVertex => "no_isolated_vertex",
            ObservationCheck::HighDegreeHasEarCover => "high_degree_has_ear_cover",
            ObservationCheck::EdgeEndpointCovered => "edge_endpoint_covered",
            ObservationCheck::TwoEarCovers => "two_ear_covers",
        }
    }
}

/// Counterexample to a failed check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Vertex(usize),
    Edge(Diagonal),
    EarCount(usize),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Edge(d) => write!(f, "edge {d}"),
            Witness::EarCount(c) => write!(f, "{c} ear-cover(s)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    pub outcomes: Vec<(ObservationCheck, Result<(), Witness>)>,
}

impl ObservationReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|(_, r)| r.is_ok())
    }

    pub fn outcome(&self, check: ObservationCheck) -> Result<(), Witness> {
        self.outcomes
            .iter()
            .find(|(c, _)| *c == check)
            .map(|(_, r)| *r)
            .expect("every check is evaluated")
    }
}

pub fn observation_checks(n: PolygonSize, b: &DiagonalSet) -> ObservationReport {
    let deg = b.degrees();
    let has_ear = |v: usize| b.contains(ear_cover_of(n, v).expect("vertex in range"));

    let isolated = match (0..n.get()).find(|&v| deg[v] == 0) {
        Some(v) => Err(Witness::Vertex(v)),
        None => Ok(()),
    };
    let high_degree = match (0..n.get()).find(|&v| deg[v] >= 2 && !has_ear(v)) {
        Some(v) => Err(Witness::Vertex(v)),
        None => Ok(()),
    };
    let endpoint = match b.iter().find(|d| !has_ear(d.i()) && !has_ear(d.j())) {
        Some(d) => Err(Witness::Edge(d)),
        None => Ok(()),
    };
    let ear_count = ears_of(n, b).len();
    let two_ears = if ear_count >= 2 {
        Ok(())
    } else {
        Err(Witness::EarCount(ear_count))
    };

    ObservationReport {
        outcomes: vec![
            (ObservationCheck::NoIsolatedVertex, isolated),
            (ObservationCheck::HighDegreeHasEarCover, high_degree),
            (ObservationCheck::EdgeEndpointCovered, endpoint),
            (ObservationCheck::TwoEarCovers, two_ears),
        ],
    }
}
