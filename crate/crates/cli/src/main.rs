//! `fermat`: command-line front end for fermat-core.

mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_core::fermat::{fermat_points, witness_report, FatPointScheme, PointConfiguration, Session};
use fermat_core::groebner::{DiskCache, Env};
use fermat_core::interp::{alpha_interp_with, fatpoint_dim_with, ScanOptions};
use fermat_core::invariants::{containment_check, invariant_report, Method};
use fermat_core::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fermat", version, about = "Symbolic powers of Fermat point configurations")]
struct Cli {
    /// Directory for cached Groebner bases.
    #[arg(long, global = true, env = "FERMAT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Least degree of I_n^(m).
    Alpha(AlphaArgs),
    /// Grid of least degrees against the tabulated values.
    Table(table::TableArgs),
    /// Decide whether I_n^(m) lies in m^a I_n^r.
    Contain(ContainArgs),
    /// Check the explicit least-degree element of I_n^(m).
    Witness(WitnessArgs),
    /// Interpolation on a point configuration.
    Points(PointsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Groebner,
    Interpolation,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Groebner => Method::Groebner,
            MethodArg::Interpolation => Method::Interpolation,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Groebner)]
    method: MethodArg,
    /// Also report beta, omega and the minimal generator degrees.
    #[arg(long)]
    extras: bool,
    /// Exit with status 1 when alpha differs from the tabulated value.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ContainArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    #[arg(long, default_value_t = 0)]
    a: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["file", "fermat"])))]
struct PointsArgs {
    /// Point-configuration file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Use the Fermat configuration of this conductor.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    fermat: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    /// Report the dimension of the degree-t forms instead of scanning for alpha.
    #[arg(long)]
    t: Option<i64>,
    /// Largest degree scanned.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    cap: Option<u32>,
    /// Impose every derivative of order below m, not only order m - 1.
    #[arg(long)]
    strict: bool,
    /// Print one rank line per scanned degree on stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Failure with the exit status it maps to.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Parse { .. } | Error::PointsFile { .. } | Error::Io(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

pub type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn base_env(cache_dir: Option<PathBuf>) -> Result<Env, Failure> {
    let mut env = Env::new();
    if let Some(dir) = cache_dir {
        env = env.with_cache(Arc::new(DiskCache::open(dir)?));
    }
    Ok(env)
}

fn run(cli: Cli) -> Outcome {
    let env = base_env(cli.cache_dir)?;
    match cli.command {
        Command::Alpha(a) => cmd_alpha(&Session::with_env(env), a),
        Command::Table(t) => table::cmd_table(env, t),
        Command::Contain(c) => cmd_contain(&Session::with_env(env), c),
        Command::Witness(w) => cmd_witness(&Session::with_env(env), w),
        Command::Points(p) => cmd_points(p),
    }
}

pub fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn cmd_alpha(session: &Session, args: AlphaArgs) -> Outcome {
    let report = invariant_report(session, args.n, args.m, args.method.into(), args.extras)?;
    match args.format {
        Format::Json => emit_json(&report)?,
        Format::Text | Format::Csv => {
            println!("alpha(I_{}^({})) = {}", report.n, report.m, report.alpha);
            println!("method: {}", report.alpha_method);
            println!("predicted: {}", opt(&report.predicted));
            if let Some(degrees) = &report.minimal_generator_degrees {
                println!("beta: {}", opt(&report.beta));
                println!("omega: {}", opt(&report.omega));
                let ds: Vec<String> = degrees.iter().map(u32::to_string).collect();
                println!("generator degrees: {}", ds.join(" "));
            }
        }
    }
    let mismatch = report.predicted.is_some_and(|p| p != report.alpha);
    Ok(if args.check && mismatch { 1 } else { 0 })
}

fn cmd_contain(session: &Session, args: ContainArgs) -> Outcome {
    let cert = containment_check(session, args.n, args.m, args.r, args.a)?;
    match args.format {
        Format::Json => emit_json(&cert)?,
        Format::Text | Format::Csv => {
            println!("I_{}^({}) in m^{} I_{}^{}: {}", cert.n, cert.m, cert.a, cert.n, cert.r, cert.holds);
            if cert.degree_criterion_used {
                println!("decided by degrees");
            }
            if let Some(g) = &cert.failing_generator {
                println!("failing generator: {g}");
            }
        }
    }
    Ok(if cert.holds { 0 } else { 1 })
}

fn cmd_witness(session: &Session, args: WitnessArgs) -> Outcome {
    let data = session.fermat(args.n)?;
    let Some(report) = witness_report(&data, args.m)? else {
        eprintln!("no known witness construction for n = {}, m = {}; computing alpha instead", args.n, args.m);
        let fallback = AlphaArgs {
            n: args.n,
            m: args.m,
            method: MethodArg::Groebner,
            extras: false,
            check: false,
            format: args.format,
        };
        return cmd_alpha(session, fallback);
    };
    match args.format {
        Format::Json => emit_json(&report)?,
        Format::Text | Format::Csv => {
            let (n, m) = (report.n, report.m);
            let member = |b: bool| if b { "member" } else { "not a member" };
            println!("witness: {}", report.witness);
            println!("degree: {}", report.degree);
            println!("predicted: {}", report.predicted);
            println!("(f, g)^{m}: {}", member(report.in_k_power));
            for ((i, j), b) in [("x", "y"), ("y", "z"), ("z", "x")].into_iter().zip(report.in_coordinate_powers) {
                println!("({i}, {j})^{m}: {}", member(b));
            }
            println!("verified in I_{n}^({m}): {}", report.verified);
        }
    }
    Ok(if report.verified { 0 } else { 1 })
}

#[derive(Serialize)]
struct PointsReport {
    points: usize,
    conductor: u32,
    m: u32,
    strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
}

fn cmd_points(args: PointsArgs) -> Outcome {
    let configuration = match (&args.file, args.fermat) {
        (Some(path), _) => PointConfiguration::from_file(path)
            .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?,
        (None, Some(n)) => fermat_points(n)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let scheme = FatPointScheme::new(configuration, args.m)?;
    let mut report = PointsReport {
        points: scheme.configuration.len(),
        conductor: scheme.configuration.conductor(),
        m: args.m,
        strict: args.strict,
        alpha: None,
        t: None,
        dim: None,
    };
    if let Some(t) = args.t {
        report.t = Some(t);
        report.dim = Some(fatpoint_dim_with(&scheme, t, args.strict)?);
    } else {
        let opts = ScanOptions { cap: args.cap, strict: args.strict };
        let trace = args.trace;
        report.alpha = Some(alpha_interp_with(&scheme, opts, &mut |line| {
            if trace {
                eprintln!("{line}");
            }
        })?);
    }
    match args.format {
        Format::Json => emit_json(&report)?,
        Format::Text | Format::Csv => {
            println!("points: {} (conductor {}), multiplicity {}", report.points, report.conductor, report.m);
            if let Some(a) = report.alpha {
                println!("alpha = {a}");
            }
            if let (Some(t), Some(d)) = (report.t, report.dim) {
                println!("dim in degree {t} = {d}");
            }
        }
    }
    Ok(0)
}
