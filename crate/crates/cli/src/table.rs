//! The `table` command: least degrees over an (n, m) grid.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Args;
use fermat_core::arith::Rational;
use fermat_core::fermat::{predicted_alpha, waldschmidt_constant, Session};
use fermat_core::groebner::Env;
use fermat_core::invariants::alpha_by;
use fermat_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Failure, Format, MethodArg, Outcome};

pub const CSV_HEADER: &str = "n,m,alpha,predicted,match,method,seconds";

/// Inclusive range written `a..b` or `a`; empty when `a > b`.
#[derive(Clone, Copy, Debug)]
pub struct Span(u32, u32);

impl Span {
    fn values(self) -> impl Iterator<Item = u32> {
        self.0..=self.1
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(Span(num(a)?, num(b.trim_start_matches('='))?)),
        None => num(s).map(|v| Span(v, v)),
    }
}

#[derive(Args)]
pub struct TableArgs {
    /// Conductors, e.g. `2..4` or `3`.
    #[arg(long, value_parser = parse_span, default_value = "2..3")]
    n: Span,
    /// Multiplicities, e.g. `1..6`.
    #[arg(long, value_parser = parse_span, default_value = "1..6")]
    m: Span,
    #[arg(long, value_enum, default_value_t = MethodArg::Groebner)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cells computed concurrently; defaults to the number of CPUs.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Wall-clock budget per cell in seconds; cells over budget are skipped.
    #[arg(long, default_value_t = 300.0)]
    budget: f64,
    /// Leave the seconds column empty so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Debug, Serialize)]
struct Cell {
    n: u32,
    m: u32,
    alpha: Option<u32>,
    predicted: Option<u32>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    method: &'static str,
    seconds: Option<f64>,
    skipped: bool,
    exceptional: bool,
}

#[derive(Serialize)]
struct Infimum {
    n: u32,
    max_m: u32,
    inf_so_far: Rational,
    limit: Rational,
}

#[derive(Serialize)]
struct Table {
    cells: Vec<Cell>,
    waldschmidt: Vec<Infimum>,
    notes: Vec<String>,
}

/// `(4, 5)` is the one tabulated cell off the generic `n m` pattern.
fn is_exceptional(n: u32, m: u32) -> bool {
    (n, m) == (4, 5)
}

const EXCEPTIONAL_NOTE: &str = "(4,5): alpha = 21 rather than n*m = 20; z*f^2*g*h^2 attains it";

fn compute_cell(env: &Env, n: u32, m: u32, method: MethodArg, budget: Duration) -> Result<Cell, Failure> {
    let start = Instant::now();
    let session = Session::with_env(env.clone().with_deadline(start + budget));
    let method_name = match method {
        MethodArg::Groebner => "groebner",
        MethodArg::Interpolation => "interpolation",
        MethodArg::Both => "both",
    };
    let (alpha, skipped) = match alpha_by(&session, n, m, method.into()) {
        Ok(a) => (Some(a), false),
        Err(Error::Timeout) => (None, true),
        Err(e) => return Err(e.into()),
    };
    let predicted = predicted_alpha(n, m);
    Ok(Cell {
        n,
        m,
        alpha,
        predicted,
        matches: alpha.zip(predicted).map(|(a, p)| a == p),
        method: method_name,
        seconds: Some(start.elapsed().as_secs_f64()),
        skipped,
        exceptional: is_exceptional(n, m),
    })
}

fn infima(cells: &[Cell]) -> Vec<Infimum> {
    let mut out: Vec<Infimum> = Vec::new();
    for c in cells {
        let Some(alpha) = c.alpha else { continue };
        let ratio = Rational::new(alpha as i64, c.m as i64).expect("m >= 1");
        match out.iter_mut().find(|i| i.n == c.n) {
            Some(inf) => {
                inf.max_m = inf.max_m.max(c.m);
                if ratio < inf.inf_so_far {
                    inf.inf_so_far = ratio;
                }
            }
            None => out.push(Infimum { n: c.n, max_m: c.m, inf_so_far: ratio, limit: waldschmidt_constant(c.n) }),
        }
    }
    out
}

fn render_csv(cells: &[Cell]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for c in cells {
        let alpha = if c.skipped { "skipped".to_string() } else { opt(c.alpha.map(|a| a.to_string())) };
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c.n,
            c.m,
            alpha,
            opt(c.predicted.map(|p| p.to_string())),
            opt(c.matches.map(|b| b.to_string())),
            c.method,
            opt(c.seconds.map(|t| format!("{t:.3}"))),
        ));
    }
    s
}

fn render_text(table: &Table) -> String {
    let mut s = format!(
        "{:>3} {:>3} {:>7} {:>9} {:>6} {:<13} {:>8}\n",
        "n", "m", "alpha", "predicted", "match", "method", "seconds"
    );
    let dash = || "-".to_string();
    for c in &table.cells {
        let alpha = if c.skipped { "skipped".to_string() } else { c.alpha.map_or_else(dash, |a| a.to_string()) };
        s.push_str(&format!(
            "{:>3} {:>3} {:>7} {:>9} {:>6} {:<13} {:>8}{}\n",
            c.n,
            c.m,
            alpha,
            c.predicted.map_or_else(dash, |p| p.to_string()),
            c.matches.map_or_else(dash, |b| b.to_string()),
            c.method,
            c.seconds.map_or_else(dash, |t| format!("{t:.3}")),
            if c.exceptional { "  *" } else { "" },
        ));
    }
    for inf in &table.waldschmidt {
        s.push_str(&format!(
            "waldschmidt n={}: min alpha/m over m<={} is {} (limit {})\n",
            inf.n, inf.max_m, inf.inf_so_far, inf.limit
        ));
    }
    for note in &table.notes {
        s.push_str(&format!("* {note}\n"));
    }
    s
}

pub fn cmd_table(env: Env, args: TableArgs) -> Outcome {
    if !(args.budget.is_finite() && args.budget > 0.0) {
        return Err(Failure { code: 2, message: "--budget must be a positive number of seconds".into() });
    }
    let budget = Duration::from_secs_f64(args.budget);
    let grid: Vec<(u32, u32)> = args
        .n
        .values()
        .filter(|&n| n >= 2)
        .flat_map(|n| args.m.values().filter(|&m| m >= 1).map(move |m| (n, m)))
        .collect();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = args.workers {
        pool = pool.num_threads(w as usize);
    }
    let pool = pool.build().map_err(|e| Failure { code: 3, message: e.to_string() })?;
    let mut cells: Vec<Cell> = pool.install(|| {
        grid.par_iter().map(|&(n, m)| compute_cell(&env, n, m, args.method, budget)).collect::<Result<_, _>>()
    })?;
    if args.no_timing {
        cells.iter_mut().for_each(|c| c.seconds = None);
    }

    let notes = if cells.iter().any(|c| c.exceptional) { vec![EXCEPTIONAL_NOTE.to_string()] } else { Vec::new() };
    let table = Table { waldschmidt: infima(&cells), cells, notes };
    let text = match args.format {
        Format::Csv => render_csv(&table.cells),
        Format::Text => render_text(&table),
        Format::Json => {
            serde_json::to_string_pretty(&table).map_err(|e| Failure { code: 3, message: e.to_string() })? + "\n"
        }
    };
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    for c in table.cells.iter().filter(|c| c.skipped) {
        eprintln!("cell n={} m={} exceeded the {}s budget and was skipped", c.n, c.m, args.budget);
    }
    Ok(if table.cells.iter().any(|c| c.matches == Some(false)) { 1 } else { 0 })
}
