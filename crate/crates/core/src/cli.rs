//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification report fails, 2 on usage
//! or input errors. Every float is printed with 17 significant digits so
//! reruns are byte-identical.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{best_approx, jackson_approximant, jackson_kernel};
use crate::error::{Error, Result};
use crate::format::{sig17, to_json_string};
use crate::fracdiff::{modulus_with, ModulusOptions};
use crate::kfunc::{k_functional_with, KOptions};
use crate::orlicz::{luxemburg_norm_with, orlicz_norm_moduli, OrliczFunction, OrliczSpec};
use crate::spectrum::{read_jsonl, write_jsonl, CoeffSeq};
use crate::verify::{
    b_alpha_check, classify, corollary2_rates, default_deltas, direct_report, equivalence_report, inverse_report,
    power_decay_family, Family, MajorantOmega, Report, SweepConfig,
};

const DEFAULT_ORLICZ: &str = r#"{"family":"power","p":2}"#;

#[derive(Debug, Parser)]
#[command(name = "orlicz-approx", version, about = "Norms, moduli of smoothness and approximation in Orlicz coefficient spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Io {
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct Gauge {
    /// Orlicz function as JSON: {"family":"power","p":2}, {"family":"exp_minus_one"} or {"family":"power_log","p":2}.
    #[arg(long, default_value = DEFAULT_ORLICZ)]
    orlicz: String,
}

#[derive(Debug, Args)]
struct Input {
    /// Coefficient file, one {"k","re","im"} object per line.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct Tol {
    /// Relative tolerance of the norm bisection.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Luxemburg norm of a coefficient file.
    Norm {
        #[command(flatten)]
        gauge: Gauge,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tol: Tol,
        #[command(flatten)]
        io: Io,
    },
    /// Orlicz (dual) norm of a coefficient file.
    Onorm {
        #[command(flatten)]
        gauge: Gauge,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tol: Tol,
        #[command(flatten)]
        io: Io,
    },
    /// Best approximation E_n by trigonometric polynomials of degree n - 1.
    En {
        #[command(flatten)]
        gauge: Gauge,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Modulus of smoothness omega_alpha(f, delta).
    Omega {
        #[command(flatten)]
        gauge: Gauge,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        delta: f64,
        /// Uniform search points on [0, delta].
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[command(flatten)]
        tol: Tol,
        #[command(flatten)]
        io: Io,
    },
    /// K-functional K_alpha(delta, f) over h with |k| <= n.
    Kfunc {
        #[command(flatten)]
        gauge: Gauge,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        delta: f64,
        /// Band of h; defaults to the largest frequency of the input.
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        io: Io,
    },
    /// Jackson kernel coefficients in the JSON-lines format.
    Kernel {
        #[arg(long)]
        n: u64,
        /// Moment order the kernel must serve.
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[command(flatten)]
        io: Io,
    },
    /// Jackson-type approximant sigma_{n-1} of integer order alpha.
    Sigma {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Theorem-level verification reports.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Debug, Args)]
struct Sweep {
    /// Generator family; repeat or comma-separate, all four when absent.
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances drawn per family.
    #[arg(long, default_value_t = 3)]
    per_family: usize,
    /// Frequency band of generated functions.
    #[arg(long, default_value_t = 1024)]
    band: u64,
    #[arg(long, default_value_t = 128)]
    grid: usize,
}

#[derive(Debug, Subcommand)]
enum Check {
    /// E_n(f) <= C omega_alpha(f, 1/n) over random families.
    Direct {
        #[command(flatten)]
        gauge: Gauge,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 128)]
        n_max: u64,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        io: Io,
    },
    /// omega_alpha(f, 1/n) <= C n^-alpha sum nu^(alpha-1) E_nu over random families.
    Inverse {
        #[command(flatten)]
        gauge: Gauge,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 128)]
        n_max: u64,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        io: Io,
    },
    /// K_alpha / omega_alpha within fixed bounds on delta in [1e-3, 1].
    Equiv {
        #[command(flatten)]
        gauge: Gauge,
        #[arg(long)]
        alpha: f64,
        /// Single delta instead of the default grid.
        #[arg(long)]
        delta: Option<f64>,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        io: Io,
    },
    /// Membership in the class with majorant delta^r.
    Classify {
        #[command(flatten)]
        gauge: Gauge,
        #[arg(long)]
        alpha: f64,
        /// Majorant exponent.
        #[arg(long)]
        r: f64,
        /// Coefficient file; the |k|^(-beta-1/2) family is used when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        beta: Option<f64>,
        #[arg(long, default_value_t = 1024)]
        band: u64,
        #[arg(long, default_value_t = 128)]
        n_max: u64,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Rates of omega_alpha for |k|^(-beta-1/2) coefficients.
    Rates {
        #[command(flatten)]
        gauge: Gauge,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 4096)]
        band: u64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Condition (B_alpha) for the majorant delta^r.
    Balpha {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1024)]
        n_max: u64,
        #[command(flatten)]
        io: Io,
    },
}

/// Runs one command and returns its exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn gauge(g: &Gauge) -> Result<OrliczFunction<f64>> {
    OrliczFunction::from_spec(&OrliczSpec::parse(&g.orlicz)?)
}

fn load(input: &Input) -> Result<CoeffSeq<f64>> {
    load_path(&input.input)
}

fn load_path(path: &PathBuf) -> Result<CoeffSeq<f64>> {
    let file = File::open(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    read_jsonl(BufReader::new(file))
}

fn sink(io: &Io) -> Result<Box<dyn Write>> {
    Ok(match &io.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Named scalar results, emitted as one JSON object or a two-row CSV.
#[derive(Serialize)]
struct Scalars {
    command: &'static str,
    #[serde(flatten)]
    values: serde_json::Map<String, serde_json::Value>,
}

fn emit_scalars(io: &Io, command: &'static str, pairs: &[(&str, serde_json::Value)]) -> Result<()> {
    let mut out = sink(io)?;
    match io.format {
        Format::Json => {
            let values = pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            writeln!(out, "{}", to_json_string(&Scalars { command, values })?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(std::iter::once("command").chain(pairs.iter().map(|(k, _)| *k)))?;
            let cells: Vec<String> = pairs
                .iter()
                .map(|(_, v)| match v {
                    serde_json::Value::Number(n) if n.is_f64() => sig17(n.as_f64().unwrap_or(f64::NAN)),
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            w.write_record(std::iter::once(command.to_string()).chain(cells))?;
            w.flush()?;
        }
    }
    Ok(())
}

fn emit_coeffs(io: &Io, f: &CoeffSeq<f64>) -> Result<()> {
    let mut out = sink(io)?;
    match io.format {
        Format::Json => write_jsonl(f, &mut out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["k", "re", "im"])?;
            for (k, c) in f.iter() {
                w.write_record([k.to_string(), sig17(c.re), sig17(c.im)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn emit_report(io: &Io, report: &Report) -> Result<bool> {
    let mut out = sink(io)?;
    match io.format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    Ok(report.passed)
}

fn num(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

fn sweep_config(s: &Sweep, n_max: u64) -> Result<SweepConfig> {
    let families =
        if s.family.is_empty() { Family::ALL.to_vec() } else { s.family.iter().map(|f| f.parse()).collect::<Result<_>>()? };
    if s.per_family == 0 || s.grid < 2 || s.band == 0 || n_max == 0 {
        return Err(Error::InvalidParameter("per-family, grid, band and n-max must be positive (grid >= 2)".into()));
    }
    Ok(SweepConfig { families, per_family: s.per_family, seed: s.seed, band: s.band, n_max, grid: s.grid })
}

fn execute(command: Command) -> Result<bool> {
    match command {
        Command::Norm { gauge: g, input, tol, io } => {
            let value = luxemburg_norm_with(&gauge(&g)?, &load(&input)?, tol.tol)?;
            emit_scalars(&io, "norm", &[("value", num(value))])?;
        }
        Command::Onorm { gauge: g, input, tol, io } => {
            let f = load(&input)?;
            f.check_finite()?;
            let value = orlicz_norm_moduli(&gauge(&g)?, &f.moduli(), tol.tol);
            emit_scalars(&io, "onorm", &[("value", num(value))])?;
        }
        Command::En { gauge: g, input, n, io } => {
            let value = best_approx(&load(&input)?, &gauge(&g)?, n)?;
            emit_scalars(&io, "en", &[("value", num(value))])?;
        }
        Command::Omega { gauge: g, input, alpha, delta, grid, tol, io } => {
            let opts = ModulusOptions { grid, rel_tol: tol.tol, refine: true };
            let e = modulus_with(&load(&input)?, &gauge(&g)?, alpha, delta, opts)?;
            emit_scalars(
                &io,
                "omega",
                &[
                    ("value", num(e.value)),
                    ("argmax", num(e.argmax)),
                    ("search_tolerance", num(e.search_tolerance)),
                    ("monotone", e.monotone.into()),
                ],
            )?;
        }
        Command::Kfunc { gauge: g, input, alpha, delta, n, io } => {
            let opts = KOptions { band: n, ..KOptions::default() };
            let e = k_functional_with(&load(&input)?, &gauge(&g)?, alpha, delta, opts)?;
            emit_scalars(
                &io,
                "kfunc",
                &[
                    ("value", num(e.value)),
                    ("minimizer_degree", e.minimizer_degree.into()),
                    ("candidates_tried", e.candidates_tried.into()),
                    ("refine_used", e.refine_used.into()),
                    ("refine_gain", num(e.refine_gain)),
                ],
            )?;
        }
        Command::Kernel { n, r, io } => emit_coeffs(&io, &jackson_kernel::<f64>(n, r)?.coeffs)?,
        Command::Sigma { input, alpha, n, io } => emit_coeffs(&io, &jackson_approximant(&load(&input)?, alpha, n)?)?,
        Command::Verify { check } => return verify(check),
    }
    Ok(true)
}

fn verify(check: Check) -> Result<bool> {
    match check {
        Check::Direct { gauge: g, alpha, n_max, sweep, io } => {
            emit_report(&io, &direct_report(&gauge(&g)?, alpha, &sweep_config(&sweep, n_max)?)?)
        }
        Check::Inverse { gauge: g, alpha, n_max, sweep, io } => {
            emit_report(&io, &inverse_report(&gauge(&g)?, alpha, &sweep_config(&sweep, n_max)?)?)
        }
        Check::Equiv { gauge: g, alpha, delta, sweep, io } => {
            let deltas = delta.map_or_else(default_deltas, |d| vec![d]);
            let cfg = sweep_config(&sweep, 1)?;
            emit_report(&io, &equivalence_report(&gauge(&g)?, alpha, &deltas, &cfg)?)
        }
        Check::Classify { gauge: g, alpha, r, input, beta, band, n_max, grid, io } => {
            let f = match (&input, beta) {
                (Some(path), _) => load_path(path)?,
                (None, Some(beta)) => power_decay_family(beta, band),
                (None, None) => return Err(Error::InvalidParameter("classify needs --input or --beta".into())),
            };
            emit_report(&io, &classify(&f, &gauge(&g)?, &MajorantOmega::Power(r), alpha, n_max, grid)?)
        }
        Check::Rates { gauge: g, alpha, beta, band, grid, io } => {
            emit_report(&io, &corollary2_rates(beta, alpha, &gauge(&g)?, band, grid)?)
        }
        Check::Balpha { alpha, r, n_max, io } => emit_report(&io, &b_alpha_check(&MajorantOmega::Power(r), alpha, n_max)?),
    }
}
