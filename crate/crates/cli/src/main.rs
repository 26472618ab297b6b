use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hall_cli::crosscheck::{crosscheck, parse_range, render_csv, render_text, Grid, GridFamily};
use hall_cli::settings::{parse_config, Overrides, MAX_ENUM_ENV};
use hall_cli::{render_report, run_check, run_order, CheckRequest, CliError, Mode, Settings};
use serde::Serialize;

/// Hall subgroups of finite simple groups: arithmetic criteria and exhaustive search.
#[derive(Parser)]
#[command(name = "hall", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for tuple enumeration (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Time budget for one oracle search, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Cap on the number of enumerated group elements.
    #[arg(long, global = true)]
    max_enum: Option<u64>,
    /// Cap on the permutation degree.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// `key = value` file with max_enum, max_degree, threads, budget_ms.
    #[arg(long, global = true)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, factorization and prime spectrum of a group.
    Order { descriptor: String },
    /// Decide solvable π-Hall existence with the rule engine.
    Check {
        descriptor: String,
        #[arg(long)]
        pi: String,
        /// Also run the exhaustive search and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Search for a π-Hall subgroup in the constructed permutation group.
    Verify {
        descriptor: String,
        #[arg(long)]
        pi: String,
    },
    /// Engine verdict (and oracle certificate when constructible) for each pair in σ.
    Pairs {
        descriptor: String,
        #[arg(long)]
        pi: String,
    },
    /// Compare engine and oracle over a grid of groups and prime sets.
    Crosscheck {
        /// Alt, Sym or PSL2.
        #[arg(long)]
        family: String,
        /// Range of q for PSL2, e.g. 5..41.
        #[arg(long)]
        q: Option<String>,
        /// Range of n for Alt and Sym, e.g. 5..8.
        #[arg(long)]
        n: Option<String>,
        /// Largest |σ′| to test.
        #[arg(long, default_value_t = 4)]
        pi_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

fn settings(global: &Global) -> Result<Settings, CliError> {
    let config = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
                path: path.clone(),
                line: 0,
                reason: e.to_string(),
            })?;
            Some(parse_config(path, &text)?)
        }
        None => None,
    };
    let flags = Overrides {
        max_enum: global.max_enum,
        max_degree: global.max_degree,
        threads: global.threads,
        budget_ms: global.budget_ms,
    };
    let env = std::env::var(MAX_ENUM_ENV).ok();
    Settings::resolve(flags, env.as_deref(), config)
}

/// Writes to stdout; a closed pipe ends output silently.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let settings = settings(&cli.global)?;
    let as_json = cli.global.json;
    let check = |descriptor: &str, pi: &str, mode: Mode| -> Result<u8, CliError> {
        let report = run_check(CheckRequest::new(descriptor, pi, mode, &settings)?, &settings)?;
        emit(&format!("{}\n", if as_json { json(&report) } else { render_report(&report) }));
        Ok(report.exit_code())
    };
    match cli.command {
        Command::Order { descriptor } => {
            let r = run_order(&descriptor)?;
            if as_json {
                emit(&format!("{}\n", json(&r)));
            } else {
                emit(&format!("{}\n|G| = {} = {}\n    = {}\nπ(G) = {}\n", r.descriptor, r.order, r.factorization, r.formula, r.spectrum));
                emit(&format!("simple: {}  solvable: {}  constructible: {}\n", r.simple, r.solvable, r.constructible));
            }
            Ok(0)
        }
        Command::Check { descriptor, pi, oracle } => {
            check(&descriptor, &pi, if oracle { Mode::Both } else { Mode::Engine })
        }
        Command::Verify { descriptor, pi } => check(&descriptor, &pi, Mode::Oracle),
        Command::Pairs { descriptor, pi } => check(&descriptor, &pi, Mode::Pairs),
        Command::Crosscheck { family, q, n, pi_size, format } => {
            let family = GridFamily::parse(&family)?;
            let range = match (family, q, n) {
                (GridFamily::Psl2, Some(q), None) => q,
                (GridFamily::Alt | GridFamily::Sym, None, Some(n)) => n,
                (GridFamily::Psl2, _, _) => return Err(CliError::Usage("PSL2 takes --q A..B".into())),
                _ => return Err(CliError::Usage("Alt and Sym take --n A..B".into())),
            };
            let (lo, hi) = parse_range(&range)?;
            let grid = Grid { family, lo, hi, pi_size };
            let report = crosscheck(&grid, &settings, |cell| {
                eprintln!("{} {} {:?} ({:.0} ms)", cell.descriptor, cell.sigma, cell.status, cell.elapsed_ms)
            })?;
            let format = if as_json { Format::Json } else { format };
            match format {
                Format::Text => emit(&render_text(&report)),
                Format::Csv => emit(&render_csv(&report)?),
                Format::Json => emit(&format!("{}\n", json(&report))),
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
