//! `selmer`: local Selmer-dimension reports and formal-group checks.

mod db;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use selmer_core::{scan_m, selmer_dimension, CurveQ, Error, Verdict};

use db::CurveDb;
use render::Format;
use verify::Settings;

#[derive(Parser, Debug)]
#[command(name = "selmer", version, about = "Selmer dimensions over Kummer extensions Q(zeta_p, m^(1/p))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local contributions and their total for a single m.
    Report {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        /// Assert Sel_p(E/Q(zeta_p)) = 0; the tool cannot check this.
        #[arg(long)]
        assume_selmer_trivial: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Verdicts for every p-th-power-free m in a range.
    Scan {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        /// Inclusive range `lo:hi`.
        #[arg(long, value_parser = parse_range)]
        m_range: (u64, u64),
        #[arg(long)]
        assume_selmer_trivial: bool,
        #[arg(long, value_enum)]
        filter: Option<VerdictFilter>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Formal-group checks at p (3 or 5) over the tower for m.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        /// Defaults to p.
        #[arg(long)]
        m: Option<u64>,
        /// p-adic digits carried through the computation.
        #[arg(long, default_value_t = 12)]
        precision: u32,
        /// Only check the trace ideals of the tower; no curve is needed.
        #[arg(long)]
        trace_lemma: bool,
    },
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Label from the curve database, e.g. 17a1.
    #[arg(long, conflicts_with = "a_invariants")]
    curve: Option<String>,
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    a_invariants: Option<Vec<BigInt>>,
    /// CSV database with columns label,a1,a2,a3,a4,a6.
    #[arg(long, env = "SELMER_DB")]
    db: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerdictFilter {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl VerdictFilter {
    fn verdict(self) -> Verdict {
        match self {
            VerdictFilter::Trivial => Verdict::Trivial,
            VerdictFilter::Nontrivial => Verdict::Nontrivial,
            VerdictFilter::Undetermined => Verdict::Undetermined,
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(lo)?, num(hi)?))
}

const EXIT_CHECK: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_PRECISION: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            _ if e.is_hypothesis_failure() => EXIT_HYPOTHESIS,
            _ if e.is_precision_failure() => EXIT_PRECISION,
            Error::SingularModel => EXIT_DATA,
            Error::DegenerateExtension { .. }
            | Error::InvalidM { .. }
            | Error::InvalidP { .. }
            | Error::NotPrime { .. }
            | Error::UnsupportedP { .. }
            | Error::RangeTooLarge { .. }
            | Error::NotNormalized { .. } => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn load_curve(args: &CurveArgs) -> Result<CurveQ, Failure> {
    if let Some(a) = &args.a_invariants {
        let a: [BigInt; 5] = a.clone().try_into().map_err(|_| usage("--a-invariants takes five integers"))?;
        return CurveQ::new(a).map_err(Failure::from);
    }
    let label = args.curve.as_deref().ok_or_else(|| usage("one of --curve or --a-invariants is required"))?;
    let db = match &args.db {
        Some(path) => CurveDb::open(path),
        None => CurveDb::bundled(),
    }
    .map_err(|e| Failure { code: EXIT_DATA, message: e.to_string() })?;
    db.get(label)
        .cloned()
        .ok_or_else(|| {
            let known: Vec<&str> = db.labels().collect();
            usage(format!("no curve labelled {label:?} in {} (known: {})", db.source(), known.join(", ")))
        })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Report { curve, p, m, assume_selmer_trivial, format } => {
            let e = load_curve(&curve)?;
            let r = selmer_dimension(&e, p, m, assume_selmer_trivial)?;
            print!("{}", render::report(&r, format));
            Ok(0)
        }
        Command::Scan { curve, p, m_range: (lo, hi), assume_selmer_trivial, filter, format } => {
            let e = load_curve(&curve)?;
            let rows = scan_m(&e, p, lo, hi, assume_selmer_trivial, |r| {
                filter.is_none_or(|f| r.verdict == f.verdict())
            })?;
            print!("{}", render::scan(&rows, format));
            Ok(0)
        }
        Command::Verify { curve, p, m, precision, trace_lemma } => {
            let s = Settings { p, m: m.unwrap_or(p), digits: precision };
            let checks = if trace_lemma {
                verify::tower_checks(s)?
            } else {
                verify::check_p(p)?;
                verify::curve_checks(&load_curve(&curve)?, s)?
            };
            for c in &checks {
                println!("{c}");
            }
            let code = verify::exit_status(&checks);
            debug_assert!(code == 0 || code == EXIT_CHECK || code == EXIT_PRECISION);
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
