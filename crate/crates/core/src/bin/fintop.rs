use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use fintop::complex::{betti, euler_characteristic, order_complex};
use fintop::homotopy::{core, Limits};
use fintop::io::{
    certify, load_space, space_to_string, to_dot, to_json_line, CertifyError, CertifyOptions,
    Certified, ExplorationJson, ReportJson,
};
use fintop::search::{explore_antidiagonal_cover, search, Invariant, Outcome, Status};
use fintop::space::FiniteSpace;

const PROVEN: u8 = 0;
const INVALID: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const REJECTED: u8 = 3;

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*)?
    };
}

/// Exact homotopy invariants of finite T0 spaces.
///
/// SPACE is a path to a JSON space file or a constructor expression such as
/// `circle:3`, `sphere:2`, `join:discrete:2,discrete:3`,
/// `product:circle:2,interval:1`, `op:circle:2`, `suspension:point` or
/// `wedge:circle:2,circle:2@y0`.
#[derive(Debug, Parser)]
#[command(name = "fintop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Search caps, e.g. `visited=100000,seconds=30`. Falls back to the
    /// FINTOP_LIMITS environment variable.
    #[arg(long, global = true, value_name = "CAPS")]
    limits: Option<String>,
    /// Write the artifact here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical JSON form of a space.
    Build { space: String },
    /// Check a space and summarize it.
    Validate { space: String },
    /// Lusternik–Schnirelmann category, with a certificate report.
    Cat {
        space: String,
        /// Also print the reduced value (unreduced minus one).
        #[arg(long)]
        reduced: bool,
    },
    /// Topological complexity, with a certificate report.
    Tc {
        space: String,
        /// Also print the reduced value (unreduced minus one).
        #[arg(long)]
        reduced: bool,
    },
    /// The core: beat points removed until none remain.
    Core { space: String },
    /// Order complex counts, Euler characteristic and rational Betti numbers.
    Homology { space: String },
    /// Re-verify a report, exploration, fence or space file.
    Certify {
        file: PathBuf,
        /// Re-decide every hom-poset exhaustion claim.
        #[arg(long)]
        recheck_exhaustion: bool,
    },
    /// Try the antidiagonal two-set cover of the square of `circle:N`.
    ExploreCircle { n: usize },
    /// Hasse diagram in Graphviz DOT.
    ExportDot { space: String },
}

fn parse_limits(text: &str) -> Result<Limits> {
    let mut limits = Limits::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .with_context(|| format!("limit `{part}` is not key=value"))?;
        match key {
            "visited" => {
                limits.max_visited = value
                    .parse()
                    .with_context(|| format!("visited: `{value}` is not a count"))?
            }
            "seconds" => {
                let s: f64 = value
                    .parse()
                    .with_context(|| format!("seconds: `{value}` is not a number"))?;
                if !(s >= 0.0 && s.is_finite()) {
                    bail!("seconds: must be a nonnegative number");
                }
                limits.max_seconds = Some(s);
            }
            other => bail!("unknown limit `{other}` (expected visited or seconds)"),
        }
    }
    Ok(limits)
}

fn limits(cli: &Cli) -> Result<Limits> {
    match &cli.limits {
        Some(text) => parse_limits(text),
        None => match std::env::var("FINTOP_LIMITS") {
            Ok(text) => parse_limits(&text).context("FINTOP_LIMITS"),
            Err(_) => Ok(Limits::default()),
        },
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn space(source: &str) -> Result<FiniteSpace> {
    load_space(source).with_context(|| format!("cannot load space `{source}`"))
}

fn summary(space: &FiniteSpace) -> String {
    format!(
        "points={} edges={} maximal={} minimal={} connected={}",
        space.len(),
        space.hasse_edges().len(),
        space.maximal_points().len(),
        space.minimal_points().len(),
        space.is_connected_space()
    )
}

fn run_search(cli: &Cli, invariant: Invariant, source: &str, reduced: bool) -> Result<u8> {
    let space = space(source)?;
    let report = search(invariant, &space, &limits(cli)?)?;
    let status = match report.status {
        Status::Proven => "proven",
        Status::UpperBoundOnly => "upper-bound-only",
    };
    out!("value={} status={status}", report.value);
    if reduced {
        out!(
            "reduced value={} (unreduced {} minus one)",
            report.value - 1,
            report.value
        );
    }
    emit(cli, &to_json_line(&ReportJson::from_report(&report)))?;
    Ok(match report.status {
        Status::Proven => PROVEN,
        Status::UpperBoundOnly => INCONCLUSIVE,
    })
}

fn run_certify(cli: &Cli, file: &PathBuf, recheck_exhaustion: bool) -> Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let options = CertifyOptions {
        recheck_exhaustion,
        limits: limits(cli)?,
    };
    match certify(&text, &options) {
        Ok(Certified::Report {
            invariant,
            value,
            status,
        }) => {
            let status = match status {
                Status::Proven => "proven",
                Status::UpperBoundOnly => "upper-bound-only",
            };
            out!("ok: {invariant} value={value} status={status}");
        }
        Ok(Certified::Exploration {
            n,
            covers,
            certificates,
        }) => out!("ok: exploration n={n} covers={covers} certificates={certificates}"),
        Ok(Certified::Fence { steps }) => out!("ok: fence with {steps} steps"),
        Ok(Certified::Space { points }) => out!("ok: space with {points} points"),
        Err(e @ (CertifyError::Schema(_) | CertifyError::Rejected(_))) => {
            eprintln!("fintop: {}: {e}", file.display());
            return Ok(REJECTED);
        }
    }
    Ok(PROVEN)
}

fn run_explore(cli: &Cli, n: usize) -> Result<u8> {
    let report = explore_antidiagonal_cover(n, &limits(cli)?)?;
    let mut code = PROVEN;
    let mut lines = vec![format!(
        "n={n} antipode_shift={} covers={}",
        report.antipode_shift, report.covers
    )];
    for set in &report.sets {
        let outcome = match &set.outcome {
            Outcome::Certificate(cert) => format!("certificate steps={}", cert.fence.len()),
            Outcome::Refutation { explored } => format!("refutation explored={explored}"),
            Outcome::Inconclusive { explored, cause } => {
                code = INCONCLUSIVE;
                format!("inconclusive explored={explored} cause={cause:?}")
            }
        };
        lines.push(format!(
            "{}: points={} open={} obstructed={} outcome={outcome}",
            set.name,
            set.points.len(),
            set.open,
            set.obstructed
        ));
    }
    for line in lines {
        out!("{line}");
    }
    emit(cli, &to_json_line(&ExplorationJson::from_report(&report)))?;
    Ok(code)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Build { space: source } => emit(cli, &space_to_string(&space(source)?))?,
        Command::Validate { space: source } => {
            let space = space(source)?;
            out!("valid: {}", summary(&space));
        }
        Command::Cat {
            space: source,
            reduced,
        } => return run_search(cli, Invariant::Cat, source, *reduced),
        Command::Tc {
            space: source,
            reduced,
        } => return run_search(cli, Invariant::Tc, source, *reduced),
        Command::Core { space: source } => {
            let space = space(source)?;
            let c = core(&space);
            eprintln!("core has {} of {} points", c.len(), space.len());
            emit(cli, &space_to_string(&c))?;
        }
        Command::Homology { space: source } => {
            let space = space(source)?;
            let complex = order_complex(&space)?;
            let b = betti(&complex);
            let b2 = b.b2.map_or("not-computed".to_string(), |v| v.to_string());
            out!(
                "simplices={:?} euler={} b0={} b1={} b2={b2}",
                complex.counts(),
                euler_characteristic(&complex),
                b.b0,
                b.b1
            );
            if cli.output.is_some() {
                emit(cli, &to_json_line(&complex.to_json()))?;
            }
        }
        Command::Certify {
            file,
            recheck_exhaustion,
        } => return run_certify(cli, file, *recheck_exhaustion),
        Command::ExploreCircle { n } => return run_explore(cli, *n),
        Command::ExportDot { space: source } => emit(cli, &to_dot(&space(source)?))?,
    }
    Ok(PROVEN)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let closed = e.chain().any(|c| {
                c.downcast_ref::<std::io::Error>()
                    .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            });
            if closed {
                return ExitCode::from(PROVEN);
            }
            eprintln!("fintop: {e:#}");
            ExitCode::from(INVALID)
        }
    }
}
