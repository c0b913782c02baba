use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torus_arcs::arc::{alpha2_lift, alphap_lift, normalize_2p};
use torus_arcs::bounds::{upper_bounds, KnownTau};
use torus_arcs::certificate::{Certificate, Claims};
use torus_arcs::geometry::enumerate_lines;
use torus_arcs::ilp::build_model;
use torus_arcs::solver::{certify, solve, Mode, SearchOptions, Status};
use torus_arcs::{render, ArcSet, Error, Modulus};

/// Arcs in the torus grid Z_n x Z_n: sets with no three points on a line.
///
/// Points are (x, y) with 0 <= x, y < n; y grows upward and drawings put the
/// origin at the bottom left. Moduli range over 2..=64.
///
/// Exit status: 0 ok, 1 a claim or precondition failed, 2 bad usage or
/// malformed input, 3 node budget exhausted.
#[derive(Parser)]
#[command(name = "torus-arcs", version)]
struct Cli {
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the maximum arc size tau(n) and write a certificate.
    Tau {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = ModeArg::Generic)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Stop after this many search nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Search every arc, without affine reductions.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate and its claims.
    Verify {
        cert: PathBuf,
        /// Exact values used to check a `maximum` claim.
        #[arg(long, value_enum, default_value_t = TableArg::Published)]
        table: TableArg,
    },
    /// Map an arc of Z_2p (p >= 5 prime, more than p + 3 points) onto one
    /// containing (0,0), (1,0) and (0,1).
    Normalize {
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift an arc into Z_2p.
    Lift {
        cert: PathBuf,
        #[arg(long, value_enum)]
        map: MapArg,
        /// Target prime for `alphap` (the input is Z_2 x Z_2).
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print lower and upper bounds on tau(n).
    Bounds {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = TableArg::Published)]
        table: TableArg,
        /// Also print where each bound comes from.
        #[arg(long)]
        explain: bool,
    },
    /// List every line: id, direction, points.
    Lines {
        #[arg(long)]
        n: i64,
    },
    /// Write the integer program in LP format.
    ExportLp {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an arc as an ASCII or SVG grid.
    Render {
        cert: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Generic,
    /// n = 2p, p >= 5 prime; seeds (0,0), (1,0), (0,1).
    Seeded,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    /// Published exact values up to 25 plus primes.
    Published,
    /// Published values of prime powers plus primes.
    PrimePowers,
    /// Primes only.
    Primes,
}

impl TableArg {
    fn known(self) -> KnownTau {
        match self {
            TableArg::Published => KnownTau::published(),
            TableArg::PrimePowers => KnownTau::prime_powers(),
            TableArg::Primes => KnownTau::primes_only(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    /// (i, j) mod p -> (2i, 2j) mod 2p.
    Alpha2,
    /// (i, j) mod 2 -> (pi, pj) mod 2p.
    Alphap,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

/// An error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::ModulusOutOfRange(_)
            | Error::InvalidMode(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_arc(path: &Path) -> Result<ArcSet, Failure> {
    let cert = Certificate::read(path).map_err(|e| match e {
        Error::Io(io) => fail(2, format!("{}: {io}", path.display())),
        other => Failure::from(other),
    })?;
    Ok(cert.to_arc()?)
}

/// Certificate with the checks that hold for `arc`.
fn checked_certificate(arc: &ArcSet) -> Result<Certificate, Failure> {
    let is_arc = arc.is_arc();
    let complete = if is_arc { arc.is_complete()? } else { false };
    Ok(Certificate::from_arc(arc, Some(Claims { arc: Some(is_arc), complete: Some(complete), maximum: None })))
}

fn cmd_tau(
    n: i64,
    mode: ModeArg,
    threads: usize,
    budget: Option<u64>,
    no_symmetry: bool,
    out: Option<&Path>,
) -> CmdResult {
    let n = Modulus::new(n)?;
    if threads == 0 {
        return Err(fail(2, "--threads must be at least 1"));
    }
    let mode = match mode {
        ModeArg::Generic => Mode::Generic,
        ModeArg::Seeded => Mode::Seeded2p,
    };
    let opts = SearchOptions { mode, threads, node_budget: budget, symmetry: !no_symmetry, ..SearchOptions::default() };
    let result = solve(n, &opts)?;
    log::info!("nodes={} elapsed={:?}", result.nodes, result.elapsed);
    if result.fell_back {
        eprintln!("seeded search found no arc above p + 3; settled by generic search");
    }
    if let Some(path) = out {
        certify(&result)?.write(path)?;
    }
    println!("tau({}) = {} proven={}", n.get(), result.best.len(), result.proven_optimal);
    Ok(if result.status == Status::BudgetExhausted { 3 } else { 0 })
}

fn cmd_verify(path: &Path, table: TableArg) -> CmdResult {
    let cert = Certificate::read(path)?;
    let v = cert.verify(&table.known())?;
    let mut line = format!("arc={} complete={}", v.arc, v.complete.unwrap_or(false));
    if cert.claims.and_then(|c| c.maximum).is_some() {
        match v.maximum {
            Some(m) => line.push_str(&format!(" maximum={m}")),
            None => line.push_str(" maximum=unknown"),
        }
    }
    println!("{line}");
    Ok(if v.claims_hold { 0 } else { 1 })
}

fn cmd_normalize(path: &Path, out: Option<&Path>) -> CmdResult {
    let arc = read_arc(path)?;
    let (f, image) = normalize_2p(&arc)?;
    let [[a, b], [c, d]] = f.matrix;
    let [tx, ty] = f.translation;
    eprintln!("map: u -> [[{a}, {b}], [{c}, {d}]] u + ({tx}, {ty})");
    emit(out, &checked_certificate(&image)?.to_json())?;
    Ok(0)
}

fn cmd_lift(path: &Path, map: MapArg, p: Option<u32>, out: Option<&Path>) -> CmdResult {
    let arc = read_arc(path)?;
    let lifted = match map {
        MapArg::Alpha2 => alpha2_lift(&arc)?,
        MapArg::Alphap => {
            let p = p.ok_or_else(|| fail(2, "--map alphap needs --p"))?;
            alphap_lift(&arc, p)?
        }
    };
    emit(out, &checked_certificate(&lifted)?.to_json())?;
    Ok(0)
}

fn cmd_bounds(n: i64, table: TableArg, explain: bool) -> CmdResult {
    let n = Modulus::new(n)?;
    let b = upper_bounds(n, &table.known());
    println!("{} <= tau({}) <= {}", b.lower, b.n, b.upper);
    if explain {
        println!("lower: {}", b.lower_note);
        println!("upper: {}", b.upper_note);
    }
    Ok(0)
}

fn cmd_lines(n: i64) -> CmdResult {
    let n = Modulus::new(n)?;
    let table = enumerate_lines(n);
    let mut text = String::new();
    for (i, line) in table.lines().iter().enumerate() {
        let dir = line.dir.canonical();
        let pts: Vec<String> = line.points().iter().map(|p| p.to_string()).collect();
        text.push_str(&format!("{i} dir={},{} {}\n", dir.u, dir.v, pts.join(" ")));
    }
    emit(None, &text)?;
    Ok(0)
}

fn cmd_export_lp(n: i64, out: Option<&Path>) -> CmdResult {
    let n = Modulus::new(n)?;
    emit(out, &build_model(n).to_lp())?;
    Ok(0)
}

fn cmd_render(path: &Path, format: FormatArg, out: Option<&Path>) -> CmdResult {
    let arc = read_arc(path)?;
    let text = match format {
        FormatArg::Ascii => render::ascii(&arc),
        FormatArg::Svg => render::svg(&arc),
    };
    emit(out, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Tau { n, mode, threads, budget, no_symmetry, out } => {
            cmd_tau(n, mode, threads, budget, no_symmetry, out.as_deref())
        }
        Command::Verify { cert, table } => cmd_verify(&cert, table),
        Command::Normalize { cert, out } => cmd_normalize(&cert, out.as_deref()),
        Command::Lift { cert, map, p, out } => cmd_lift(&cert, map, p, out.as_deref()),
        Command::Bounds { n, table, explain } => cmd_bounds(n, table, explain),
        Command::Lines { n } => cmd_lines(n),
        Command::ExportLp { n, out } => cmd_export_lp(n, out.as_deref()),
        Command::Render { cert, format, out } => cmd_render(&cert, format, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
