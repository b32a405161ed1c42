//! Exact coordinates for the polygon, used to cross-check the label-based
//! crossing predicate.
//!
//! Vertices sit on the unit circle at rational points
//! `((1 - t²)/(1 + t²), 2t/(1 + t²))`, with `t` a rounded tangent of the
//! half-angle of a regular n-gon. The points are in convex position and in
//! label order, so two chords cross here iff they cross combinatorially.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

const TAN_RESOLUTION: i64 = 1000;

/// Rational points on the unit circle approximating a regular n-gon.
pub fn circle_vertices<T: Scalar>(n: usize) -> Vec<Point<T>> {
    (0..n)
        .map(|k| {
            let theta = -std::f64::consts::PI + (2 * k + 1) as f64 * std::f64::consts::PI / n as f64;
            let p = ((theta / 2.0).tan() * TAN_RESOLUTION as f64).round() as i64;
            let q = TAN_RESOLUTION;
            let den = q * q + p * p;
            Point {
                x: T::from_ratio(q * q - p * p, den),
                y: T::from_ratio(2 * p * q, den),
            }
        })
        .collect()
}

/// Twice the signed area of `abc`.
pub fn orientation<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone())
        - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone())
}

fn sign<T: Scalar>(v: &T) -> i8 {
    let zero = T::zero();
    if *v > zero {
        1
    } else if *v < zero {
        -1
    } else {
        0
    }
}

/// True iff the open segments `ab` and `cd` meet in a single interior point.
pub fn segments_cross<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let o1 = sign(&orientation(a, b, c));
    let o2 = sign(&orientation(a, b, d));
    let o3 = sign(&orientation(c, d, a));
    let o4 = sign(&orientation(c, d, b));
    o1 * o2 < 0 && o3 * o4 < 0
}
