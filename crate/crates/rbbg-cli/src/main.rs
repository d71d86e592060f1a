//! `rbbg` drives the identity catalog from the command line: domain sweeps
//! with machine-readable reports, single-point evaluations against closed
//! forms, singular-modulus solves, and the data files behind the figures.
//!
//! Exit codes are part of the contract: 0 on success, 1 when a sweep
//! finishes but misses its tolerance, 2 for usage errors, 3 for numerical
//! failures such as series non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rbbg_core::catalog::{self, EntryKind, IdentityId};
use rbbg_core::elliptic::{self, Modulus};

mod figures;
mod report;
mod sweep;

use report::Format;

#[derive(Parser)]
#[command(
    name = "rbbg",
    version,
    about = "Verification harness for a family of cubic hypergeometric transformations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep a parametric identity over its domain and report residuals
    Verify {
        /// Catalog id, e.g. RBBG or CUBIC (case-insensitive)
        id: String,
        /// Lower sweep bound; defaults to the catalog domain
        #[arg(long, allow_negative_numbers = true)]
        min: Option<f64>,
        /// Upper sweep bound; defaults to the catalog domain
        #[arg(long, allow_negative_numbers = true)]
        max: Option<f64>,
        /// Number of grid points
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Pass threshold on the maximum relative residual
        #[arg(long)]
        tol: Option<f64>,
        /// Write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format used with --out
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate one catalog value and compare the engine with its closed form
    Eval {
        /// Catalog id, e.g. COMM or BF1 (case-insensitive)
        id: String,
        /// Free parameter, required for the parametric families and ratios
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// Significant digits printed for the values
        #[arg(long, default_value_t = 17)]
        digits: usize,
    },
    /// Solve K'/K = sqrt(n) for the singular value x_n
    Singular {
        /// Index of the singular value
        #[arg(long)]
        n: u32,
        /// Residual target for the bisection
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },
    /// Write the data behind one figure panel as CSV
    Figure {
        /// Panel id: 1L, 1R, 2L, 2R, 3L, 3R or 4
        fig_id: String,
        /// Output file
        #[arg(long)]
        out: PathBuf,
        /// Grid resolution override
        #[arg(long)]
        samples: Option<usize>,
    },
    /// List every catalog id with a one-line description
    List,
}

/// Failure modes mapped onto the exit-code contract. A sweep that finishes
/// but misses its tolerance is not a failure in this sense; it reports
/// normally and exits 1.
pub enum Failure {
    /// Bad arguments, unknown ids, out-of-domain bounds, unwritable files.
    Usage(String),
    /// The engine could not deliver a value at the requested accuracy.
    Numerical(String),
}

impl Failure {
    fn exit(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Numerical(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("rbbg: {}", f.message());
            f.exit()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Verify { id, min, max, samples, tol, out, format } => {
            let id = parse_id(&id)?;
            let report = sweep::run(&sweep::SweepArgs { id, min, max, samples, tol })?;
            println!("{}", report.summary_line());
            if let Some(path) = out {
                report.write(&path, format).map_err(|e| {
                    Failure::Usage(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Eval { id, a, digits } => run_eval(parse_id(&id)?, a, digits),
        Cmd::Singular { n, tol } => run_singular(n, tol),
        Cmd::Figure { fig_id, out, samples } => {
            figures::emit(&fig_id, &out, samples)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::List => {
            for id in IdentityId::ALL {
                let kind = match id.kind() {
                    EntryKind::Identity => "identity",
                    EntryKind::PointValue => "point",
                    EntryKind::FamilyValue => "family",
                    EntryKind::Ratio => "ratio",
                };
                println!("{:<10} {:<9} {}", id.as_str(), kind, id.summary());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_id(s: &str) -> Result<IdentityId, Failure> {
    IdentityId::parse(s)
        .ok_or_else(|| Failure::Usage(format!("unknown catalog id '{s}'; run `rbbg list`")))
}

pub(crate) fn numerical(e: rbbg_core::Error) -> Failure {
    Failure::Numerical(e.to_string())
}

fn run_eval(id: IdentityId, a: Option<f64>, digits: usize) -> Result<ExitCode, Failure> {
    if !(1..=17).contains(&digits) {
        return Err(Failure::Usage("--digits must be between 1 and 17".into()));
    }
    let d = digits - 1;
    match id.kind() {
        EntryKind::Identity => Err(Failure::Usage(format!(
            "{} is a parametric identity; use `rbbg verify {}`",
            id.as_str(),
            id.as_str()
        ))),
        EntryKind::PointValue => {
            if a.is_some() {
                return Err(Failure::Usage(format!(
                    "{} takes no free parameter; drop --a",
                    id.as_str()
                )));
            }
            let closed = catalog::closed_form_value(id, None).map_err(numerical)?;
            let engine = catalog::engine_value(id, None, 1e-12).map_err(numerical)?;
            print_comparison(id.as_str(), closed, engine.value, engine.route.as_str(), d);
            Ok(ExitCode::SUCCESS)
        }
        EntryKind::FamilyValue => {
            let a = require_a(id, a)?;
            let closed = catalog::closed_form_value(id, Some(a)).map_err(numerical)?;
            let engine = catalog::engine_value(id, Some(a), 1e-12).map_err(numerical)?;
            println!("{} at a = {a}", id.as_str());
            print_comparison("", closed, engine.value, engine.route.as_str(), d);
            Ok(ExitCode::SUCCESS)
        }
        EntryKind::Ratio => {
            let a = require_a(id, a)?;
            let law = catalog::ratio_law(id, a).map_err(numerical)?;
            let numeric = catalog::ratio_numeric(id, a, 1e-12).map_err(numerical)?;
            println!("{} at a = {a}", id.as_str());
            println!("  law      {:.d$e}", law, d = d);
            println!("  numeric  {:.d$e}", numeric, d = d);
            println!("  abs residual  {:.3e}", (law - numeric).abs());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn require_a(id: IdentityId, a: Option<f64>) -> Result<f64, Failure> {
    let a = a.ok_or_else(|| {
        Failure::Usage(format!("{} is parametric; pass --a", id.as_str()))
    })?;
    if !a.is_finite() {
        return Err(Failure::Usage("--a must be finite".into()));
    }
    Ok(a)
}

fn print_comparison(heading: &str, closed: f64, engine: f64, route: &str, d: usize) {
    if !heading.is_empty() {
        println!("{heading}");
    }
    println!("  closed form   {:.d$e}", closed, d = d);
    println!("  engine        {:.d$e}   [{route}]", engine, d = d);
    let abs = (closed - engine).abs();
    println!("  abs residual  {:.3e}", abs);
    println!("  rel residual  {:.3e}", abs / closed.abs().max(f64::MIN_POSITIVE));
}

fn run_singular(n: u32, tol: f64) -> Result<ExitCode, Failure> {
    let s = elliptic::singular_modulus(n, tol).map_err(|e| match e {
        rbbg_core::Error::Params { .. } => Failure::Usage(e.to_string()),
        other => Failure::Numerical(other.to_string()),
    })?;
    let num = elliptic::ellip_k(&Modulus::from_parameter(1.0 - s.x_n).unwrap());
    let den = elliptic::ellip_k(&Modulus::from_parameter(s.x_n).unwrap());
    let residual = (num / den - (n as f64).sqrt()).abs();
    println!("n         {n}");
    println!("x_n       {:.16e}", s.x_n);
    println!("residual  {:.3e}", residual);
    if n == 9 {
        let dev = (s.x_n - elliptic::x9_closed_form()).abs();
        println!("radical deviation  {:.3e}", dev);
    }
    Ok(ExitCode::SUCCESS)
}
