use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use num_bigint::BigUint;
use triblock::blocker::{self, brute_force_blockers, enumerate_blockers};
use triblock::counting::{fib, verify_identities};
use triblock::game::{
    erdos_selfridge_potential, new_game, play_out, solve as solve_game, Bias, GameConfig,
    GameState, Player, SolveError, SolverOptions, Status, StrategyKind,
};
use triblock::polygon::{canonical_rotation, Diagonal, DiagonalSet, PolygonSize, VertexPair};
use triblock::triangulation::{enumerate_triangulations, triangulation_count};
use triblock::BigCountTable;
use triblock_service::{advise, ServerConfig};

use crate::output::{spaced, spaced_list, usage, CliError, Format, Outcome};

type CmdResult = Result<Outcome, CliError>;

pub const TRIANGULATION_LIST_LIMIT: usize = 14;
pub const STRUCTURAL_LIMIT: usize = 12;
pub const COUNT_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Oracle {
    Structural,
    Brute,
}

fn polygon(n: usize) -> Result<PolygonSize, CliError> {
    PolygonSize::new(n).map_err(usage)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn triangulations(out: &mut dyn Write, n: usize, count_only: bool, format: Format) -> CmdResult {
    let size = polygon(n)?;
    if count_only {
        let count: BigUint = triangulation_count(size).expect("big integers do not overflow");
        match format {
            Format::Csv => writeln!(out, "n,count\n{n},{count}")?,
            Format::Human | Format::Lines => writeln!(out, "{count}")?,
        }
        return Ok(Outcome::Ok);
    }
    if n > TRIANGULATION_LIST_LIMIT {
        return Err(usage(format!(
            "listing triangulations is limited to n <= {TRIANGULATION_LIST_LIMIT}; use --count-only"
        )));
    }
    let mut all: Vec<DiagonalSet> = enumerate_triangulations(size)
        .map(|t| t.into_diagonals())
        .collect();
    all.sort();
    if format == Format::Csv {
        writeln!(out, "index,diagonals")?;
    }
    for (i, t) in all.iter().enumerate() {
        match format {
            Format::Csv => writeln!(out, "{},{}", i + 1, spaced(t))?,
            Format::Human | Format::Lines => writeln!(out, "{t}")?,
        }
    }
    if format == Format::Human {
        writeln!(out, "{} triangulations of a {n}-gon", all.len())?;
    }
    Ok(Outcome::Ok)
}

fn blocker_family(
    size: PolygonSize,
    oracle: Oracle,
    total: bool,
) -> Result<BTreeSet<DiagonalSet>, CliError> {
    let n = size.get();
    match oracle {
        Oracle::Structural => {
            if n > STRUCTURAL_LIMIT {
                return Err(usage(format!(
                    "the structural oracle is limited to n <= {STRUCTURAL_LIMIT}"
                )));
            }
            Ok(enumerate_blockers(size, !total).into_iter().collect())
        }
        Oracle::Brute => {
            let sets = brute_force_blockers(size, false).map_err(usage)?;
            Ok(if total {
                sets.into_iter().collect()
            } else {
                sets.iter().map(|s| canonical_rotation(size, s).0).collect()
            })
        }
    }
}

fn plural(k: usize) -> String {
    if k == 1 {
        "1 blocker".into()
    } else {
        format!("{k} blockers")
    }
}

fn oracle_name(o: Oracle) -> &'static str {
    match o {
        Oracle::Structural => "structural",
        Oracle::Brute => "brute",
    }
}

pub fn blockers(
    out: &mut dyn Write,
    n: usize,
    total: bool,
    oracles: &[Oracle],
    format: Format,
) -> CmdResult {
    let size = polygon(n)?;
    let mut oracles: Vec<Oracle> = oracles.to_vec();
    if oracles.is_empty() {
        oracles.push(Oracle::Structural);
    }
    oracles.sort();
    oracles.dedup();
    let families = oracles
        .iter()
        .map(|&o| blocker_family(size, o, total))
        .collect::<Result<Vec<_>, _>>()?;
    let family = &families[0];
    if format == Format::Csv {
        writeln!(out, "index,edges")?;
    }
    for (i, b) in family.iter().enumerate() {
        match format {
            Format::Csv => writeln!(out, "{},{}", i + 1, spaced(b))?,
            Format::Human | Format::Lines => writeln!(out, "{b}")?,
        }
    }
    let mut outcome = Outcome::Ok;
    let fib_count: BigUint = fib(2 * n - 8).expect("big integers do not overflow");
    let mut notes = Vec::new();
    let used: Vec<&str> = oracles.iter().map(|&o| oracle_name(o)).collect();
    if total {
        notes.push(format!(
            "{} of a {n}-gon in total ({})",
            plural(family.len()),
            used.join(", ")
        ));
        let claimed = BigUint::from(n) * &fib_count;
        let holds = BigUint::from(family.len()) == claimed;
        notes.push(format!(
            "derived claim: n x F_{{2n-8}} = {n} x {fib_count} = {claimed} ({})",
            if holds {
                "holds"
            } else {
                "does not hold; some blocker is fixed by a rotation"
            }
        ));
    } else {
        let matches = BigUint::from(family.len()) == fib_count;
        notes.push(format!(
            "{} of a {n}-gon up to rotation ({})",
            plural(family.len()),
            used.join(", ")
        ));
        notes.push(format!(
            "F_{{2n-8}} = {fib_count}: {}",
            if matches { "matches" } else { "MISMATCH" }
        ));
        if !matches {
            outcome = Outcome::Mismatch;
        }
    }
    if families.len() > 1 {
        let agree = families.iter().all(|f| f == family);
        notes.push(format!("oracles agree: {}", yes(agree)));
        if !agree {
            outcome = Outcome::Mismatch;
        }
    }
    for note in notes {
        match format {
            Format::Human => writeln!(out, "{note}")?,
            Format::Lines | Format::Csv => eprintln!("{note}"),
        }
    }
    Ok(outcome)
}

pub fn verify(out: &mut dyn Write, n: usize, edges: &str, format: Format) -> CmdResult {
    let size = polygon(n)?;
    let set = DiagonalSet::parse(size, edges).map_err(usage)?;
    let report = blocker::verify(size, &set).map_err(usage)?;
    let needed = n - 2;
    let blocking = if !report.is_blocking && report.size < needed {
        format!("no (size {} < {needed})", report.size)
    } else {
        yes(report.is_blocking).to_string()
    };
    let structure = match (&report.structure, &report.structure_violation) {
        (Some(s), _) => s.to_string(),
        (None, Some(v)) => format!("none ({v})"),
        (None, None) => "none".to_string(),
    };
    let mut rows: Vec<(String, String)> = vec![
        ("blocking".into(), blocking),
        ("size".into(), report.size.to_string()),
        ("minimum_size".into(), yes(report.is_minimum_size).into()),
        ("blocker".into(), yes(report.is_blocker).into()),
        ("structure".into(), structure),
    ];
    for (check, result) in &report.observations.outcomes {
        let v = match result {
            Ok(()) => "pass".to_string(),
            Err(w) => format!("fail ({w})"),
        };
        rows.push((check.key().into(), v));
    }
    match format {
        Format::Human => {
            for (k, v) in &rows[..5] {
                writeln!(out, "{}: {v}", k.replace('_', " "))?;
            }
            writeln!(out, "observations:")?;
            for (k, v) in &rows[5..] {
                writeln!(out, "  {k}: {v}")?;
            }
        }
        Format::Lines => {
            for (k, v) in &rows {
                writeln!(out, "{k}={v}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "key,value")?;
            for (k, v) in &rows {
                writeln!(out, "{k},\"{}\"", v.replace('"', "\"\""))?;
            }
        }
    }
    // the characterization: blockers are exactly the parseable normal forms,
    // and every blocker passes the necessary conditions
    let consistent = report.is_blocker == report.structure.is_some()
        && (!report.is_blocker || report.observations.all_passed());
    Ok(if consistent {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    })
}

pub fn count(out: &mut dyn Write, n_max: usize, identities: bool, format: Format) -> CmdResult {
    if !(4..=COUNT_LIMIT).contains(&n_max) {
        return Err(usage(format!("--n-max must lie in [4, {COUNT_LIMIT}]")));
    }
    let table = BigCountTable::up_to(n_max).map_err(usage)?;
    let mut outcome = Outcome::Ok;
    match format {
        Format::Human => writeln!(out, "n\tf(n)\tF_2n-8\tper-k (k:count)")?,
        Format::Csv => writeln!(out, "n,f,fib,per_k")?,
        Format::Lines => {}
    }
    for n in 4..=n_max {
        let f = table.f_total(n).map_err(usage)?;
        let formula: BigUint = fib(2 * n - 8).map_err(usage)?;
        if f != formula {
            outcome = Outcome::Mismatch;
        }
        let per_k: Vec<String> = table
            .row(n)
            .map_err(usage)?
            .into_iter()
            .map(|(k, c, _)| format!("{k}:{c}"))
            .collect();
        let per_k = per_k.join(" ");
        match format {
            Format::Human => writeln!(out, "{n}\t{f}\t{formula}\t{per_k}")?,
            Format::Lines => writeln!(out, "{n} {f} {formula} {per_k}")?,
            Format::Csv => writeln!(out, "{n},{f},{formula},{per_k}")?,
        }
    }
    if identities {
        let report = verify_identities::<BigUint>(n_max).map_err(usage)?;
        let describe = |name: &str, fails: Vec<usize>, lo: usize| {
            if fails.is_empty() {
                format!("{name}: holds for n = {lo}..{n_max}")
            } else {
                let shown: Vec<String> = fails.iter().take(8).map(ToString::to_string).collect();
                format!(
                    "{name}: fails for {} value(s) of n, first {}",
                    fails.len(),
                    shown.join(", ")
                )
            }
        };
        let weighted_ok =
            report.blocker_recursion_failures().is_empty() && report.weighted_failures().is_empty();
        let mut lines = vec![
            describe(
                "blocker identity f(n) = sum k f(n-k)",
                report.blocker_recursion_failures(),
                5,
            ),
            describe(
                "weighted Fibonacci identity",
                report.weighted_failures(),
                1,
            ),
            describe(
                "unweighted Fibonacci identity",
                report.unweighted_failures(),
                1,
            ),
        ];
        if let Some(c) = report.unweighted_fibonacci.iter().find(|c| !c.holds()) {
            lines.push(format!(
                "unweighted form at n={}: {} vs {}",
                c.n, c.lhs, c.rhs
            ));
        }
        for l in lines {
            match format {
                Format::Human => writeln!(out, "{l}")?,
                Format::Lines | Format::Csv => eprintln!("{l}"),
            }
        }
        if !weighted_ok {
            outcome = Outcome::Mismatch;
        }
    }
    Ok(outcome)
}

fn parse_bias(s: &str) -> Result<Bias, CliError> {
    s.parse::<Bias>().map_err(usage)
}

fn parse_player(s: &str) -> Result<Player, CliError> {
    s.parse::<Player>().map_err(usage)
}

pub fn solve(
    out: &mut dyn Write,
    n: usize,
    bias: &str,
    first: &str,
    allow_large: bool,
    rotations: bool,
    format: Format,
) -> CmdResult {
    let bias_v = parse_bias(bias)?;
    let first_v = parse_player(first)?;
    let cfg = GameConfig::with_bias(polygon(n)?, bias_v, first_v);
    let options = SolverOptions {
        allow_large,
        canonicalize_rotations: rotations,
    };
    let s = solve_game(cfg, options).map_err(|e| match e {
        SolveError::Infeasible { .. } => usage(format!("{e}; --allow-large raises it by one")),
        other => usage(other),
    })?;
    match format {
        Format::Human | Format::Lines => writeln!(out, "{s}")?,
        Format::Csv => {
            writeln!(out, "n,bias,first,winner,maker_moves,states")?;
            writeln!(
                out,
                "{n},{},{first_v},{},{},{}",
                bias_v,
                s.winner,
                s.maker_moves.map_or(String::new(), |k| k.to_string()),
                s.states_visited
            )?;
        }
    }
    Ok(Outcome::Ok)
}

pub fn selfridge(out: &mut dyn Write, n: usize, bias: &str, format: Format) -> CmdResult {
    let size = polygon(n)?;
    let (m, b) = bias
        .split_once(':')
        .and_then(|(m, b)| Some((m.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
        .filter(|&(m, b)| m >= 1 && b >= 1)
        .ok_or_else(|| usage(format!("bias must look like m:b with m, b >= 1, got {bias:?}")))?;
    let v = erdos_selfridge_potential(size, m, b);
    match format {
        Format::Human | Format::Lines => writeln!(out, "{v}")?,
        Format::Csv => {
            writeln!(out, "n,bias,potential,threshold,implies_breaker_win")?;
            writeln!(
                out,
                "{n},{m}:{b},{},{},{}",
                v.potential, v.threshold, v.implies_breaker_win
            )?;
        }
    }
    Ok(Outcome::Ok)
}

pub struct PlayOptions {
    pub n: usize,
    pub human: Option<String>,
    pub bias: String,
    pub first: String,
    pub maker: Option<String>,
    pub breaker: Option<String>,
    pub seed: u64,
    pub format: Format,
}

fn strategy(name: Option<&str>, default: StrategyKind) -> Result<StrategyKind, CliError> {
    name.map_or(Ok(default), |s| s.parse().map_err(usage))
}

pub fn play(out: &mut dyn Write, input: &mut dyn BufRead, o: PlayOptions) -> CmdResult {
    let bias = parse_bias(&o.bias)?;
    let first = parse_player(&o.first)?;
    let cfg = GameConfig::with_bias(polygon(o.n)?, bias, first);
    let human = match o.human.as_deref() {
        None | Some("none") => None,
        Some(s) => Some(parse_player(s)?),
    };
    if let Some(me) = human {
        return interactive(out, input, cfg, me);
    }
    let maker_default = if bias == Bias::Unbiased {
        StrategyKind::PaperMaker
    } else {
        StrategyKind::Random
    };
    let breaker_default = if bias == Bias::OneTwoDoubleFirst && o.n >= 5 {
        StrategyKind::PaperBreaker
    } else {
        StrategyKind::Random
    };
    let mk = strategy(o.maker.as_deref(), maker_default)?;
    let bk = strategy(o.breaker.as_deref(), breaker_default)?;
    match o.format {
        Format::Human => writeln!(out, "seed: {}\nmaker: {mk}, breaker: {bk}", o.seed)?,
        Format::Lines | Format::Csv => eprintln!("seed: {}", o.seed),
    }
    let t = match play_out(cfg, mk.build().as_mut(), bk.build().as_mut(), o.seed) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            return Ok(Outcome::Mismatch);
        }
    };
    if o.format == Format::Csv {
        writeln!(out, "index,player,diagonals,status")?;
    }
    for e in &t.entries {
        match o.format {
            Format::Human => writeln!(out, "{:>3}. {:<7} {}", e.index + 1, e.player, spaced_list(&e.diagonals))?,
            Format::Lines => writeln!(out, "{} {}", e.player, spaced_list(&e.diagonals))?,
            Format::Csv => writeln!(
                out,
                "{},{},{},{}",
                e.index + 1,
                e.player,
                spaced_list(&e.diagonals),
                e.status_after
            )?,
        }
    }
    match o.format {
        Format::Human => writeln!(
            out,
            "{} after {} maker and {} breaker turns",
            t.status, t.maker_turns, t.breaker_turns
        )?,
        Format::Lines => writeln!(out, "status {}", t.status)?,
        Format::Csv => {}
    }
    Ok(Outcome::Ok)
}

fn board(out: &mut dyn Write, g: &GameState) -> std::io::Result<()> {
    writeln!(out, "maker:   [{}]", g.maker())?;
    writeln!(out, "breaker: [{}]", g.breaker())
}

fn parse_claim(n: PolygonSize, line: &str) -> Result<Vec<Diagonal>, String> {
    line.split(',')
        .map(|item| {
            item.trim()
                .parse::<VertexPair>()
                .and_then(|p| p.to_diagonal(n))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn interactive(out: &mut dyn Write, input: &mut dyn BufRead, cfg: GameConfig, me: Player) -> CmdResult {
    let mut g = new_game(cfg).map_err(usage)?;
    writeln!(
        out,
        "{}-gon, bias {}, you are {me}; type diagonals as i-j, \"hint\" or \"quit\"",
        cfg.n,
        cfg.bias().map_or("custom", Bias::as_str)
    )?;
    while g.status() == Status::Ongoing {
        if g.to_move() != me {
            let advice = advise(&g);
            g.play(g.to_move(), &advice.diagonals).map_err(usage)?;
            writeln!(out, "engine ({}): {}", g.to_move().other(), spaced_list(&advice.diagonals))?;
            continue;
        }
        board(out, &g)?;
        write!(out, "your move ({} diagonal(s)): ", g.required_arity())?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            writeln!(out, "input ended; game left at move {}", g.move_index())?;
            return Ok(Outcome::Ok);
        }
        let line = line.trim();
        match line {
            "" => continue,
            "quit" => {
                writeln!(out, "stopped at move {}", g.move_index())?;
                return Ok(Outcome::Ok);
            }
            "hint" => {
                let a = advise(&g);
                writeln!(out, "hint: {}", spaced_list(&a.diagonals))?;
                continue;
            }
            _ => {}
        }
        match parse_claim(g.n(), line).and_then(|ds| g.play(me, &ds).map_err(|e| e.to_string())) {
            Ok(()) => {}
            Err(e) => writeln!(out, "not accepted: {e}")?,
        }
    }
    board(out, &g)?;
    match g.witness() {
        Some(w) => writeln!(out, "{}: triangulation {}", g.status(), w.diagonals())?,
        None => writeln!(out, "{}", g.status())?,
    }
    Ok(Outcome::Ok)
}

pub fn serve(port: u16, static_dir: Option<PathBuf>, snapshot: Option<PathBuf>) -> CmdResult {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(triblock_service::serve(ServerConfig {
        port,
        static_dir,
        snapshot,
    }))?;
    Ok(Outcome::Ok)
}
