//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use triblock::blocker::{brute_force_blockers, enumerate_blockers, observation_checks};
use triblock::counting::{enumerated_per_k, verify_identities, CountTable};
use triblock::game::{
    erdos_selfridge_potential, solve, verify_breaker_strategy, verify_maker_strategy, Bias,
    GameConfig, Player, Potential, SolveError, SolverOptions,
};
use triblock::polygon::{canonical_rotation, DiagonalSet, PolygonSize};
use triblock::triangulation::enumerate_triangulations;
use triblock::BigCountTable;

fn p(n: usize) -> PolygonSize {
    PolygonSize::new(n).unwrap()
}

/// Standard Fibonacci (F_1 = F_2 = 1) by plain iteration, with F_0 taken as 1.
fn fib_oracle(k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 1..k {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// C(m) = (2m)! / (m! (m+1)!).
fn catalan_oracle(m: usize) -> BigUint {
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, x| acc * BigUint::from(x));
    fact(2 * m) / (fact(m) * fact(m + 1))
}

fn classes(n: usize, sets: &[DiagonalSet]) -> BTreeSet<DiagonalSet> {
    sets.iter().map(|s| canonical_rotation(p(n), s).0).collect()
}

fn characterization() -> Result<String, String> {
    let mut sizes = Vec::new();
    for n in 4..=9 {
        let gen: BTreeSet<_> = enumerate_blockers(p(n), false).into_iter().collect();
        let brute: BTreeSet<_> = brute_force_blockers(p(n), false)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        if gen != brute {
            return Err(format!(
                "n={n}: generator {} vs brute force {} sets",
                gen.len(),
                brute.len()
            ));
        }
        sizes.push(format!("{n}:{}", gen.len()));
    }
    Ok(format!("families equal, totals {}", sizes.join(" ")))
}

fn count_reproduction() -> Result<String, String> {
    let expected = [1u32, 1, 3, 8, 21, 55, 144, 377, 987];
    let mut got = Vec::new();
    for (n, &e) in (4..=12).zip(&expected) {
        let fib = fib_oracle(2 * n - 8);
        if fib != BigUint::from(e) {
            return Err(format!("oracle F_{} = {fib}, listed {e}", 2 * n - 8));
        }
        let up = enumerate_blockers(p(n), true).len();
        if BigUint::from(up) != fib {
            return Err(format!("n={n}: {up} classes, expected {fib}"));
        }
        if n <= 9 {
            let brute = brute_force_blockers(p(n), false).map_err(|e| e.to_string())?;
            let c = classes(n, &brute).len();
            if c != up {
                return Err(format!("n={n}: brute force gives {c} classes"));
            }
        }
        got.push(up.to_string());
    }
    Ok(format!("({}), brute force for n<=9", got.join(", ")))
}

fn recursion_agreement() -> Result<String, String> {
    let table = BigCountTable::up_to(200).map_err(|e| e.to_string())?;
    for n in 4..=200 {
        let want = fib_oracle(2 * n - 8);
        let got = table.f_total(n).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("n={n}: recursion {got} vs F_{{2n-8}} {want}"));
        }
    }
    for n in 4..=12 {
        let per_k = enumerated_per_k(p(n));
        for (k, &c) in per_k.iter().enumerate().skip(2) {
            let f = table.f_k(n, k).map_err(|e| e.to_string())?;
            if f != BigUint::from(c) {
                return Err(format!("n={n} k={k}: table {f} vs enumeration {c}"));
            }
        }
    }
    let report = verify_identities::<BigUint>(200).map_err(|e| e.to_string())?;
    if !report.blocker_recursion_failures().is_empty() {
        return Err(format!(
            "weighted blocker identity fails at {:?}",
            report.blocker_recursion_failures()
        ));
    }
    if !report.weighted_failures().is_empty() {
        return Err(format!(
            "weighted Fibonacci identity fails at {:?}",
            report.weighted_failures()
        ));
    }
    let fails = report.unweighted_failures();
    let n4 = report
        .unweighted_fibonacci
        .iter()
        .find(|c| c.n == 4)
        .ok_or("no n=4 entry")?;
    if n4.holds() || fails.is_empty() {
        return Err("unweighted identity unexpectedly holds".into());
    }
    let _ = CountTable::<u64>::up_to(40).map_err(|e| e.to_string())?;
    Ok(format!(
        "n<=200 exact, per-k n<=12; unweighted form fails for {} values of n (n=4: {} vs {})",
        fails.len(),
        n4.lhs,
        n4.rhs
    ))
}

fn observation_suite() -> Result<String, String> {
    let mut checked = 0;
    for n in 4..=9 {
        for b in enumerate_blockers(p(n), false) {
            let report = observation_checks(p(n), &b);
            if !report.all_passed() {
                return Err(format!("n={n} {b}: {report:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} blockers, zero failures"))
}

fn maker_strategy() -> Result<String, String> {
    let mut leaves = 0;
    for n in 4..=7 {
        for first in [Player::Maker, Player::Breaker] {
            let v = verify_maker_strategy(p(n), first).map_err(|e| format!("n={n}: {e}"))?;
            leaves += v.leaves;
        }
    }
    Ok(format!("{leaves} leaves, all won in n-3 Maker moves"))
}

fn breaker_strategy() -> Result<String, String> {
    let mut leaves = 0;
    for n in 5..=7 {
        let v = verify_breaker_strategy(p(n)).map_err(|e| format!("n={n}: {e}"))?;
        if v.max_breaker_turns > n - 3 {
            return Err(format!("n={n}: {} Breaker turns", v.max_breaker_turns));
        }
        leaves += v.leaves;
    }
    Ok(format!("{leaves} leaves, all won within n-3 Breaker turns"))
}

fn threshold_bias() -> Result<String, String> {
    let opts = SolverOptions::default();
    for n in 4..=7 {
        let s = solve(GameConfig::with_bias(p(n), Bias::Unbiased, Player::Maker), opts)
            .map_err(|e| e.to_string())?;
        if s.winner != Player::Maker || s.maker_moves != Some(n - 3) {
            return Err(format!("n={n} (1:1): {s}"));
        }
    }
    for n in 5..=6 {
        let s = solve(
            GameConfig::with_bias(p(n), Bias::OneTwoDoubleFirst, Player::Maker),
            opts,
        )
        .map_err(|e| e.to_string())?;
        if s.winner != Player::Breaker {
            return Err(format!("n={n} (1:2): {s}"));
        }
    }
    Ok("(1:1) maker in n-3 for n=4..7; (1:2) breaker for n=5,6".into())
}

fn selfridge() -> Result<String, String> {
    let third = BigRational::new(1.into(), 3.into());
    let mut smallest: Option<BigRational> = None;
    for n in 5..=16 {
        let v = erdos_selfridge_potential(p(n), 1, 2);
        let Potential::Exact(r) = v.potential else {
            return Err(format!("n={n}: potential not exact"));
        };
        let c = catalan_oracle(n - 2);
        let oracle = BigRational::new(c.into(), num_traits::pow(BigUint::from(3u8), n - 3).into());
        if r != oracle || r < third || v.implies_breaker_win {
            return Err(format!("n={n}: {r} (oracle {oracle})"));
        }
        smallest = Some(smallest.map_or(r.clone(), |s| s.min(r)));
    }
    Ok(format!("minimum {} >= 1/3", smallest.unwrap()))
}

fn triangulation_counts() -> Result<String, String> {
    let expected = [2u32, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &e) in (4..=12).zip(&expected) {
        let count = enumerate_triangulations(p(n)).count();
        if BigUint::from(count) != catalan_oracle(n - 2) || count != e as usize {
            return Err(format!("n={n}: {count}"));
        }
    }
    Ok("C(n-2) for n=4..12".into())
}

fn desk_scale() -> Result<String, String> {
    // the only reduced ranges are the solver's size guards
    let guard = |bias, n| solve(GameConfig::with_bias(p(n), bias, Player::Maker), SolverOptions::default());
    match (guard(Bias::Unbiased, 8), guard(Bias::OneTwoDoubleFirst, 7)) {
        (Err(SolveError::Infeasible { limit: 7, .. }), Err(SolveError::Infeasible { limit: 6, .. })) => {
            Ok("all criteria run at full stated scale; solver guards n<=7 (1:1), n<=6 (1:2)".into())
        }
        other => Err(format!("unexpected guard behaviour: {other:?}")),
    }
}

type Criterion = (&'static str, fn() -> Result<String, String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("characterization equivalence", characterization),
        ("count reproduction", count_reproduction),
        ("recursion agreement", recursion_agreement),
        ("observation suite", observation_suite),
        ("maker strategy", maker_strategy),
        ("breaker strategy", breaker_strategy),
        ("threshold bias", threshold_bias),
        ("erdos-selfridge potential", selfridge),
        ("triangulation counts", triangulation_counts),
        ("desk-scale note", desk_scale),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
