//! `triblock`: blocker enumeration, counting and the triangulation game
//! from the command line.
//!
//! Exit status: 0 on success, 1 when a verification disagrees, 2 on usage
//! or feasibility errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use output::Format;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(name = "triblock", version, about = "Blockers for polygon triangulations and the triangulation game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct FormatArg {
    /// human: readable report; lines: one record per line; csv: header plus rows
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the triangulations of a convex n-gon, or count them.
    ///
    /// csv columns: index,diagonals (diagonals space-separated as i-j).
    /// With --count-only: n,count.
    Triangulations {
        #[arg(long)]
        n: usize,
        /// Print only the Catalan count; works for any n.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// List blockers, up to rotation (default) or in total.
    ///
    /// csv columns: index,edges (edges space-separated as i-j).
    Blockers {
        #[arg(long)]
        n: usize,
        /// Every blocker, rotations counted separately.
        #[arg(long, conflicts_with = "up_to_rotation")]
        total: bool,
        /// One representative per rotation class (the default).
        #[arg(long)]
        up_to_rotation: bool,
        /// structural (n <= 12) or brute (n <= 10); give both to compare them.
        #[arg(long, value_enum)]
        oracle: Vec<commands::Oracle>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check an edge set against the blocker characterization.
    ///
    /// csv columns: key,value.
    Verify {
        #[arg(long)]
        n: usize,
        /// Edge list such as "0-2,1-3,2-4".
        #[arg(long)]
        edges: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Blocker counts per n from the recursion, against F_{2n-8}.
    ///
    /// csv columns: n,f,fib,per_k (per_k as space-separated k:count).
    Count {
        #[arg(long)]
        n_max: usize,
        /// Also evaluate the counting identities.
        #[arg(long)]
        identities: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Solve the game exactly on a small board.
    ///
    /// csv columns: n,bias,first,winner,maker_moves,states.
    Solve {
        #[arg(long)]
        n: usize,
        /// 1:1, 1:2 (Breaker doubles only its first turn) or 1:2-standard.
        #[arg(long, default_value = "1:1")]
        bias: String,
        #[arg(long, default_value = "maker")]
        first: String,
        /// Allow one vertex more than the default size guard.
        #[arg(long)]
        allow_large: bool,
        /// Share memo entries between rotated positions.
        #[arg(long)]
        rotations: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Play a game: interactively with --human, otherwise between two strategies.
    ///
    /// csv columns: index,player,diagonals,status.
    Play {
        #[arg(long)]
        n: usize,
        /// maker or breaker: you type diagonals as i-j (comma-separated
        /// when claiming several), "hint" or "quit".
        #[arg(long)]
        human: Option<String>,
        #[arg(long, default_value = "1:1")]
        bias: String,
        #[arg(long, default_value = "maker")]
        first: String,
        /// Maker's strategy: paper_maker, random or first_available.
        #[arg(long)]
        maker: Option<String>,
        /// Breaker's strategy: paper_breaker, random or first_available.
        #[arg(long)]
        breaker: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the HTTP game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory with the board UI's static files.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Session file restored on start and written on shutdown.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// The biased Erdős–Selfridge potential of the game and its verdict.
    ///
    /// csv columns: n,bias,potential,threshold,implies_breaker_win.
    Selfridge {
        #[arg(long)]
        n: usize,
        /// m:b, e.g. 1:2.
        #[arg(long, default_value = "1:2")]
        bias: String,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Triangulations { n, count_only, format } => {
            commands::triangulations(&mut out, n, count_only, format.format)
        }
        Command::Blockers {
            n,
            total,
            up_to_rotation: _,
            oracle,
            format,
        } => commands::blockers(&mut out, n, total, &oracle, format.format),
        Command::Verify { n, edges, format } => commands::verify(&mut out, n, &edges, format.format),
        Command::Count {
            n_max,
            identities,
            format,
        } => commands::count(&mut out, n_max, identities, format.format),
        Command::Solve {
            n,
            bias,
            first,
            allow_large,
            rotations,
            format,
        } => commands::solve(&mut out, n, &bias, &first, allow_large, rotations, format.format),
        Command::Play {
            n,
            human,
            bias,
            first,
            maker,
            breaker,
            seed,
            format,
        } => {
            let opts = commands::PlayOptions {
                n,
                human,
                bias,
                first,
                maker,
                breaker,
                seed,
                format: format.format,
            };
            let stdin = std::io::stdin();
            commands::play(&mut out, &mut stdin.lock(), opts)
        }
        Command::Serve {
            port,
            static_dir,
            snapshot,
        } => commands::serve(port, static_dir, snapshot),
        Command::Selfridge { n, bias, format } => commands::selfridge(&mut out, n, &bias, format.format),
    };
    match result {
        Ok(code) => code.into(),
        Err(e) => {
            eprintln!("triblock: {e}");
            e.exit_code().into()
        }
    }
}
