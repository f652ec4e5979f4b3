mod commands;
mod render;

use std::process::ExitCode;

use arr_core::genera::{BetaRoute, Bounds, Genera};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Outcome;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_INSTANCES: u64 = 200;

#[derive(Debug, Parser)]
#[command(name = "arr", version, about = "Exact torsion numbers of O(k) on projective space and wave-front set checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Genus,
    Integral,
}

impl From<Route> for BetaRoute {
    fn from(r: Route) -> Self {
        match r {
            Route::Genus => BetaRoute::Genus,
            Route::Integral => BetaRoute::Integral,
        }
    }
}

#[derive(Debug, Args)]
struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Decimal places for the (informational) decimal renderings.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u16).range(1..=1000))]
    digits: u16,
    #[arg(long, global = true, value_enum, default_value_t = Route::Genus)]
    beta_route: Route,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest accepted n (default 24, or $ARR_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Number of random instances for `wfs check`.
    #[arg(long, global = true, default_value_t = DEFAULT_INSTANCES)]
    instances: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form t_{n,k} for k = 0, -1, ..., -n.
    Table { n: usize },
    /// Full report for one (n, k).
    T {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// χ(P^n, O(k)).
    Alpha {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// β_{n,k} by both routes.
    Beta {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Secondary Todd numbers T̃d_0 … T̃d_M.
    Ttilde { m: usize },
    /// GRR-side torsion numbers t′_{n,k} checked against the table.
    Grr {
        n: usize,
        /// Inclusive range `a..b` or a single value; default -n..n.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Wave-front set law checks.
    Wfs {
        #[command(subcommand)]
        action: WfsAction,
    },
    /// Known discrepancies of the published formulas, with computed residuals.
    Ledger,
}

#[derive(Debug, Subcommand)]
enum WfsAction {
    /// Seeded random instances.
    Check,
    /// Checks listed in a JSON instance file.
    File { path: std::path::PathBuf },
}

/// Everything a command needs besides its own arguments.
pub struct RunConfig {
    pub format: Format,
    pub digits: usize,
    pub beta_route: BetaRoute,
    pub seed: u64,
    pub max_n: usize,
    pub instances: u64,
    pub genera: Genera,
}

pub enum Failure {
    Usage(String),
    Verification(Box<Outcome>),
}

fn max_n_override(flag: Option<usize>) -> Result<usize, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("ARR_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("ARR_MAX_N must be a nonnegative integer, got '{v}'")),
        Err(_) => Ok(Bounds::default().max_n),
    }
}

fn parse_k_range(text: &str) -> Result<(i64, i64), String> {
    let bad = || format!("--k expects a..b or a single integer, got '{text}'");
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let k = text.trim().parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if a > b {
        return Err(format!("empty k range {a}..{b}"));
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let g = cli.global;
    let max_n = max_n_override(g.max_n).map_err(Failure::Usage)?;
    let defaults = Bounds::default();
    let bounds = Bounds {
        max_n,
        max_m: defaults.max_m.max(max_n),
        ..defaults
    };
    let cfg = RunConfig {
        format: g.format,
        digits: g.digits as usize,
        beta_route: g.beta_route.into(),
        seed: g.seed,
        max_n,
        instances: g.instances,
        genera: Genera::new(bounds),
    };
    let outcome = match cli.command {
        Command::Table { n } => commands::table(&cfg, n),
        Command::T { n, k } => commands::t(&cfg, n, k),
        Command::Alpha { n, k } => commands::alpha(&cfg, n, k),
        Command::Beta { n, k } => commands::beta(&cfg, n, k),
        Command::Ttilde { m } => commands::ttilde(&cfg, m),
        Command::Grr { n, k } => {
            let range = match k {
                Some(text) => parse_k_range(&text).map_err(Failure::Usage)?,
                None => (-(n as i64), n as i64),
            };
            commands::grr(&cfg, n, range)
        }
        Command::Wfs { action: WfsAction::Check } => commands::wfs_check(&cfg),
        Command::Wfs {
            action: WfsAction::File { path },
        } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            commands::wfs_file(&cfg, &path.display().to_string(), &text)
        }
        Command::Ledger => commands::ledger(&cfg),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if outcome.failed {
        Err(Failure::Verification(Box::new(outcome)))
    } else {
        Ok(outcome)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(outcome) => {
            print!("{}", render::render(&outcome, format));
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(outcome)) => {
            print!("{}", render::render(&outcome, format));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
