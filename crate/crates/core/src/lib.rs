//! Blockers for triangulations of a convex polygon, their Fibonacci count,
//! and the triangulation Maker-Breaker game.
//!
//! A *blocker* is a set of `n - 2` diagonals of a convex n-gon that meets
//! every triangulation; no smaller set can. Every blocker is a run of
//! consecutive ear-covers (the *net*) plus one *beam* from each remaining
//! vertex into the net, and there are `F_{2n-8}` of them up to rotation.
//!
//! Counting code is generic over [`scalar::Count`], exact arithmetic over
//! [`scalar::Scalar`]. The aliases below are the instantiations the rest
//! of the workspace uses.
//!
//! ```
//! use triblock::{blocker, polygon::{DiagonalSet, PolygonSize}};
//!
//! let n = PolygonSize::new(6).unwrap();
//! let net = DiagonalSet::parse(n, "0-2,1-3,2-4,3-5").unwrap();
//! assert!(blocker::is_blocker(n, &net));
//! ```

pub mod blocker;
pub mod counting;
pub mod game;
pub mod geometry;
pub mod polygon;
pub mod scalar;
pub mod triangulation;

use num_bigint::BigUint;
use num_rational::BigRational;

/// Exact counts of any size.
pub type BigCount = BigUint;
/// Blocker counts `f^k(n)` in exact arithmetic.
pub type BigCountTable = counting::CountTable<BigUint>;
/// Machine-word counts; overflow is reported, not wrapped.
pub type SmallCountTable = counting::CountTable<u64>;
/// Exact rationals for geometry and game potentials.
pub type Rational = BigRational;
/// Rational points for exact crossing tests.
pub type ExactPoint = geometry::Point<BigRational>;

pub use polygon::{Diagonal, DiagonalSet, PolygonError, PolygonSize};
