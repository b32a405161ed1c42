use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::polygon::PolygonSize;
use crate::scalar::Scalar;
use crate::triangulation::triangulation_count;

/// The biased potential `|T| * (b+1)^(-|T|/m)` summed over all
/// triangulations, which share the size `n - 3`.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Exact(BigRational),
    /// Used when `(n-3)/m` is not an integer.
    Approximate(f64),
}

impl Potential {
    pub fn to_f64(&self) -> f64 {
        match self {
            Potential::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            Potential::Approximate(x) => *x,
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Exact(r) => write!(f, "{r}"),
            Potential::Approximate(x) => write!(f, "{x:.6}"),
        }
    }
}

impl Serialize for Potential {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfridgeVerdict {
    pub n: usize,
    pub maker_per_turn: usize,
    pub breaker_per_turn: usize,
    pub potential: Potential,
    /// `1 / (b+1)`.
    #[serde(serialize_with = "as_string")]
    pub threshold: BigRational,
    /// Potential strictly below the threshold, which would hand Breaker the win.
    pub implies_breaker_win: bool,
}

impl fmt::Display for SelfridgeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.implies_breaker_win {
            write!(
                f,
                "{} < {}: Breaker wins by the criterion",
                self.potential, self.threshold
            )
        } else {
            write!(
                f,
                "{} \u{2265} {}: criterion inconclusive",
                self.potential, self.threshold
            )
        }
    }
}

fn as_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `count * base^(-exponent)` in any scalar type.
pub fn selfridge_sum<T: Scalar>(count: i64, base: i64, exponent: u32) -> T {
    let mut denom = T::one();
    for _ in 0..exponent {
        denom = denom * T::from_ratio(base, 1);
    }
    T::from_ratio(count, 1) / denom
}

pub fn erdos_selfridge_potential(
    n: PolygonSize,
    maker_per_turn: usize,
    breaker_per_turn: usize,
) -> SelfridgeVerdict {
    assert!(maker_per_turn >= 1 && breaker_per_turn >= 1, "empty turns");
    let count: BigUint = triangulation_count(n).expect("big integers do not overflow");
    let size = n.get() - 3;
    let base = breaker_per_turn as u64 + 1;
    let threshold = BigRational::new(BigInt::one(), BigInt::from(base));
    let potential = if size.is_multiple_of(maker_per_turn) {
        let e = (size / maker_per_turn) as u32;
        let denom = num_traits::pow(BigUint::from(base), e as usize);
        Potential::Exact(BigRational::new(count.into(), denom.into()))
    } else {
        let c = count.to_f64().unwrap_or(f64::INFINITY);
        Potential::Approximate(c * (base as f64).powf(-(size as f64) / maker_per_turn as f64))
    };
    let implies_breaker_win = match &potential {
        Potential::Exact(r) => *r < threshold,
        Potential::Approximate(x) => *x < 1.0 / base as f64,
    };
    SelfridgeVerdict {
        n: n.get(),
        maker_per_turn,
        breaker_per_turn,
        potential,
        threshold,
        implies_breaker_win,
    }
}
