//! Exact blocker counts: Fibonacci values, the net-length refinement
//! `f^k(n)`, and the summation identities connecting them.
//!
//! Everything is generic over [`Count`]; fixed-width types report overflow
//! rather than wrap. [`fib`] uses `F_0 = 1`, `F_1 = F_2 = 1`.

use serde::Serialize;
use thiserror::Error;

use crate::blocker::{enumerate_blockers, parse_structure};
use crate::polygon::PolygonSize;
use crate::scalar::Count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("arithmetic overflow in the chosen count type")]
    Overflow,
    #[error("f^{k}({n}) is undefined; need n >= 4 and 2 <= k <= n-2")]
    OutOfRange { n: usize, k: usize },
}

/// `F_k` with `F_0 = 1`, `F_1 = F_2 = 1`, `F_k = F_{k-1} + F_{k-2}`.
pub fn fib<T: Count>(k: usize) -> Result<T, CountError> {
    if k <= 2 {
        return Ok(T::one());
    }
    let (mut a, mut b) = (T::one(), T::one());
    for _ in 3..=k {
        let c = a.checked_add(&b).ok_or(CountError::Overflow)?;
        a = b;
        b = c;
    }
    Ok(b)
}

/// `F_{2n-8}`: the number of blockers of an n-gon up to rotation.
pub fn blocker_count_formula<T: Count>(n: PolygonSize) -> Result<T, CountError> {
    fib(2 * n.get() - 8)
}

/// Where a table value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Recursion,
    Formula,
    Enumeration,
    BruteForce,
}

/// `f^k(n)` for `4 <= n <= n_max`, filled by increasing `n`.
///
/// `f^{n-2}(n) = 1` and `f^{n-3}(n) = n - 5` are base cases; every other cell
/// uses the double sum over smaller polygons. Prefix sums
/// `S^j(x) = sum_{i=j+2}^{x} f^j(i)` make each cell linear in `k`.
#[derive(Debug, Clone)]
pub struct CountTable<T> {
    n_max: usize,
    /// `cells[n][k]`, `2 <= k <= n - 2`.
    cells: Vec<Vec<T>>,
    /// `prefix[j][x] = S^j(x)`.
    prefix: Vec<Vec<T>>,
}

impl<T: Count> CountTable<T> {
    pub fn up_to(n_max: usize) -> Result<Self, CountError> {
        let n_max = n_max.max(4);
        let mut table = Self {
            n_max,
            cells: vec![Vec::new(); n_max + 1],
            prefix: vec![Vec::new(); n_max + 1],
        };
        for n in 4..=n_max {
            table.fill_row(n)?;
        }
        Ok(table)
    }

    fn fill_row(&mut self, n: usize) -> Result<(), CountError> {
        let mut row = vec![T::zero(); n - 1];
        row[n - 2] = T::one();
        if n >= 5 {
            row[n - 3] = T::from_count(n - 5).ok_or(CountError::Overflow)?;
        }
        for (k, slot) in row.iter_mut().enumerate().take(n.saturating_sub(3)).skip(2) {
            let mut acc = T::zero();
            for j in 2..=k {
                acc = acc
                    .checked_add(&self.prefix_at(j, n - 1 + j - k))
                    .ok_or(CountError::Overflow)?;
            }
            *slot = acc;
        }
        // S^j(n) = S^j(n-1) + f^j(n), for every j with j + 2 <= n
        for (j, value) in row.iter().enumerate().take(n - 1).skip(2) {
            let prev = self.prefix_at(j, n - 1);
            let slot = &mut self.prefix[j];
            if slot.len() <= n {
                slot.resize(n + 1, T::zero());
            }
            slot[n] = prev.checked_add(value).ok_or(CountError::Overflow)?;
        }
        self.cells[n] = row;
        Ok(())
    }

    fn prefix_at(&self, j: usize, x: usize) -> T {
        self.prefix
            .get(j)
            .and_then(|p| p.get(x))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn f_k(&self, n: usize, k: usize) -> Result<T, CountError> {
        if n < 4 || n > self.n_max || k < 2 || k > n - 2 {
            return Err(CountError::OutOfRange { n, k });
        }
        Ok(self.cells[n][k].clone())
    }

    /// `f(n) = sum_{k=2}^{n-2} f^k(n)`.
    pub fn f_total(&self, n: usize) -> Result<T, CountError> {
        if n < 4 || n > self.n_max {
            return Err(CountError::OutOfRange { n, k: 2 });
        }
        self.cells[n][2..]
            .iter()
            .try_fold(T::zero(), |acc, v| acc.checked_add(v))
            .ok_or(CountError::Overflow)
    }

    /// `(k, f^k(n), source)` for `k = 2..=n-2`.
    pub fn row(&self, n: usize) -> Result<Vec<(usize, T, Source)>, CountError> {
        (2..=n.saturating_sub(2))
            .map(|k| {
                let source = if k + 3 >= n {
                    Source::Formula
                } else {
                    Source::Recursion
                };
                Ok((k, self.f_k(n, k)?, source))
            })
            .collect()
    }
}

/// `f^k(n)` on its own (builds a table up to `n`).
pub fn f_k<T: Count>(n: PolygonSize, k: usize) -> Result<T, CountError> {
    CountTable::<T>::up_to(n.get())?.f_k(n.get(), k)
}

/// `f(n)` through the `f^k` recursion.
pub fn f_total<T: Count>(n: PolygonSize) -> Result<T, CountError> {
    CountTable::<T>::up_to(n.get())?.f_total(n.get())
}

/// Number of blockers per net length `k` (ear-cover count), indexed by `k`,
/// classified by parsing each canonical blocker.
pub fn enumerated_per_k(n: PolygonSize) -> Vec<usize> {
    let mut counts = vec![0; n.get() - 1];
    for b in enumerate_blockers(n, true) {
        let st = parse_structure(n, &b).expect("generated blockers parse");
        counts[st.net_ears()] += 1;
    }
    counts
}

/// One evaluated instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck<T> {
    pub n: usize,
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> IdentityCheck<T> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluations of the three identities over a range.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport<T> {
    pub n_max: usize,
    /// `f(n)` against `sum_{k=1}^{n-4} k f(n-k)`, for `5 <= n <= n_max`.
    pub blocker_recursion: Vec<IdentityCheck<T>>,
    /// `F_{2n}` against `sum_{k=1}^{n} k F_{2n-2k}`, for `1 <= n <= n_max`.
    pub weighted_fibonacci: Vec<IdentityCheck<T>>,
    /// `F_{2n}` against `sum_{k=1}^{n} F_{2n-2k}` (no weights), same range.
    pub unweighted_fibonacci: Vec<IdentityCheck<T>>,
}

impl<T: PartialEq> IdentityReport<T> {
    fn failures(checks: &[IdentityCheck<T>]) -> Vec<usize> {
        checks.iter().filter(|c| !c.holds()).map(|c| c.n).collect()
    }

    pub fn blocker_recursion_failures(&self) -> Vec<usize> {
        Self::failures(&self.blocker_recursion)
    }

    pub fn weighted_failures(&self) -> Vec<usize> {
        Self::failures(&self.weighted_fibonacci)
    }

    pub fn unweighted_failures(&self) -> Vec<usize> {
        Self::failures(&self.unweighted_fibonacci)
    }

    /// The weighted forms hold everywhere.
    pub fn passed(&self) -> bool {
        self.blocker_recursion_failures().is_empty() && self.weighted_failures().is_empty()
    }
}

pub fn verify_identities<T: Count>(n_max: usize) -> Result<IdentityReport<T>, CountError> {
    let table = CountTable::<T>::up_to(n_max)?;
    let scale = |k: usize, v: &T| -> Result<T, CountError> {
        T::from_count(k)
            .and_then(|k| k.checked_mul(v))
            .ok_or(CountError::Overflow)
    };
    let add = |a: T, b: T| a.checked_add(&b).ok_or(CountError::Overflow);

    let mut blocker_recursion = Vec::new();
    for n in 5..=n_max {
        let mut rhs = T::zero();
        for k in 1..=n - 4 {
            rhs = add(rhs, scale(k, &table.f_total(n - k)?)?)?;
        }
        blocker_recursion.push(IdentityCheck {
            n,
            lhs: table.f_total(n)?,
            rhs,
        });
    }

    let fibs: Vec<T> = (0..=2 * n_max).map(fib).collect::<Result<_, _>>()?;
    let mut weighted_fibonacci = Vec::new();
    let mut unweighted_fibonacci = Vec::new();
    for n in 1..=n_max {
        let (mut weighted, mut plain) = (T::zero(), T::zero());
        for k in 1..=n {
            let term = &fibs[2 * n - 2 * k];
            weighted = add(weighted, scale(k, term)?)?;
            plain = add(plain, term.clone())?;
        }
        weighted_fibonacci.push(IdentityCheck {
            n,
            lhs: fibs[2 * n].clone(),
            rhs: weighted,
        });
        unweighted_fibonacci.push(IdentityCheck {
            n,
            lhs: fibs[2 * n].clone(),
            rhs: plain,
        });
    }
    Ok(IdentityReport {
        n_max,
        blocker_recursion,
        weighted_fibonacci,
        unweighted_fibonacci,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(n: usize) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fib::<u64>(0), Ok(1));
        assert_eq!(fib::<u64>(1), Ok(1));
        assert_eq!(fib::<u64>(8), Ok(21));
        assert_eq!(fib::<u64>(16), Ok(987));
        assert_eq!(fib::<u64>(94), Err(CountError::Overflow));
        assert!(fib::<BigUint>(94).is_ok());
    }

    #[test]
    fn formula_values() {
        assert_eq!(blocker_count_formula::<u32>(p(4)), Ok(1));
        assert_eq!(blocker_count_formula::<u32>(p(7)), Ok(8));
        assert_eq!(blocker_count_formula::<u32>(p(12)), Ok(987));
    }

    #[test]
    fn small_refinements() {
        assert_eq!(f_k::<u32>(p(5), 2), Ok(0));
        for n in 4..=30 {
            assert_eq!(f_k::<u64>(p(n), n - 2), Ok(1));
        }
        assert_eq!(f_k::<u32>(p(6), 2), Ok(1));
        assert_eq!(f_k::<u32>(p(6), 3), Ok(1));
        assert_eq!(f_k::<u32>(p(6), 4), Ok(1));
        assert_eq!(
            f_k::<u32>(p(6), 5),
            Err(CountError::OutOfRange { n: 6, k: 5 })
        );
        assert_eq!(f_k::<u32>(p(6), 1), Err(CountError::OutOfRange { n: 6, k: 1 }));
    }

    #[test]
    fn totals() {
        assert_eq!(f_total::<u32>(p(5)), Ok(1));
        assert_eq!(f_total::<u32>(p(8)), Ok(21));
        assert_eq!(f_total::<BigUint>(p(30)), fib::<BigUint>(52));
    }

    #[test]
    fn recursion_matches_formula_to_200() {
        let table = CountTable::<BigUint>::up_to(200).unwrap();
        for n in 4..=200 {
            assert_eq!(
                table.f_total(n).unwrap(),
                blocker_count_formula::<BigUint>(p(n)).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn fixed_width_overflow_is_an_error() {
        assert_eq!(
            CountTable::<u64>::up_to(200).err(),
            Some(CountError::Overflow)
        );
        assert!(CountTable::<u64>::up_to(40).is_ok());
    }

    #[test]
    fn identity_examples() {
        let r = verify_identities::<u64>(8).unwrap();
        let eight = r.blocker_recursion.iter().find(|c| c.n == 8).unwrap();
        assert_eq!((eight.lhs, eight.rhs), (21, 8 + 2 * 3 + 3 + 4));
        let three = &r.weighted_fibonacci[2];
        assert_eq!((three.n, three.lhs, three.rhs), (3, 8, 3 + 2 + 3));
        let four = &r.unweighted_fibonacci[3];
        assert_eq!((four.n, four.lhs, four.rhs), (4, 21, 13));
        assert!(r.passed());
        assert_eq!(r.unweighted_failures(), (2..=8).collect::<Vec<_>>());
    }

    #[test]
    fn per_k_matches_enumeration() {
        let table = CountTable::<u64>::up_to(10).unwrap();
        for n in 4..=10 {
            let enumerated = enumerated_per_k(p(n));
            for (k, &e) in enumerated.iter().enumerate().take(n - 1).skip(2) {
                assert_eq!(table.f_k(n, k).unwrap(), e as u64, "n={n} k={k}");
            }
        }
    }
}
