//! `multistat`: q-multinomials, inversion statistics, denumerants and flag
//! cells from the command line.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use multistat::denumerant::{
    denumerant, full_mahonian_via_binomials, mahonian_via_denumerant, psi, PsiMethod, WeightVector,
};
use multistat::flagcells::{enumerate_flags, free_positions, is_prime, sigma_stats, tau_for_lambda};
use multistat::inversions::{inv_bounds, mahonian_table};
use multistat::qanalogue::{q_binomial, q_multinomial};
use multistat::verify::{run_suite, Suite, VerifyConfig};
use multistat::{FlagShape, IntPoly, OrderedSetPartition, DEFAULT_CAP};

use output::{Format, OutputRecord};

#[derive(Parser, Debug)]
#[command(name = "multistat", version, about = "Exact q-analogue, inversion and flag-cell computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Largest number of objects an exhaustive enumeration may visit.
    #[arg(long, global = true, env = "MULTISTAT_CAP")]
    cap: Option<u64>,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of the Gaussian binomial [n choose e]_x.
    Qbinom {
        n: usize,
        e: usize,
        /// Evaluate at this integer instead of listing coefficients.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<i64>,
    },
    /// Coefficients of the q-multinomial of a flag shape.
    Qmultinom {
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        d: List<usize>,
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<i64>,
    },
    /// Inversion distribution I_n(d; k) for every k.
    Invdist {
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        d: List<usize>,
    },
    /// A single inversion count I_n(d; k).
    Inv {
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        d: List<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = InvMethod::Table)]
        method: InvMethod,
    },
    /// Coefficient of t^r in (1-t)(1-t^2)...(1-t^n).
    Psi {
        n: usize,
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(long, value_parser = parse_psi_method, default_value = "fn")]
        method: PsiMethod,
    },
    /// Number of solutions of w_1 x_1 + ... + w_n x_n = m in nonnegative integers.
    Denumerant {
        #[arg(long, value_parser = parse_list_i64)]
        w: List<i64>,
        #[arg(allow_hyphen_values = true)]
        m: i64,
    },
    /// Exact lower and upper bounds on I_n(d; k), next to the true value.
    Bounds {
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        d: List<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Flags of a given shape over F_p.
    Flags {
        n: usize,
        #[arg(long, value_parser = parse_list, default_value = "")]
        d: List<usize>,
        #[arg(long)]
        p: u64,
        /// Print only the number of flags.
        #[arg(long, conflicts_with = "cells")]
        count_only: bool,
        /// List the cells: one row per ordered set partition with its dimension.
        #[arg(long)]
        cells: bool,
    },
    /// An ordered set partition (tau_1, tau_2) of [n] with |tau_1| = d1 and lambda = k.
    Tau { n: usize, d1: usize, k: usize },
    /// Run the self-verification suites.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InvMethod {
    /// Read off the q-multinomial coefficients.
    Table,
    /// Convolve psi_n with the denumerant of the block weights.
    Denumerant,
    /// Sum psi_n against binomials (full shape only).
    Binomial,
}

/// A comma-separated list given as one argument.
#[derive(Clone, Debug)]
struct List<T>(Vec<T>);

fn parse_comma_list<T: std::str::FromStr>(s: &str) -> Result<List<T>, String>
where
    T::Err: std::fmt::Display,
{
    if s.trim().is_empty() {
        return Ok(List(Vec::new()));
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(List)
}

fn parse_list(s: &str) -> Result<List<usize>, String> {
    parse_comma_list(s)
}

fn parse_list_i64(s: &str) -> Result<List<i64>, String> {
    parse_comma_list(s)
}

fn parse_psi_method(s: &str) -> Result<PsiMethod, String> {
    s.parse().map_err(|e: multistat::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: multistat::Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<multistat::Error> for Failure {
    fn from(e: multistat::Error) -> Self {
        Failure {
            code: if e.is_resource() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

/// Builds a shape, dropping a trailing `d_r = n` with a notice.
fn shape(n: usize, d: List<usize>) -> Result<FlagShape, Failure> {
    let mut d = d.0;
    if n > 0 && d.last() == Some(&n) {
        eprintln!("note: dropping trailing d entry {n} (equal to n)");
        d.pop();
    }
    Ok(FlagShape::new(n, d)?)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn set(xs: &[usize]) -> String {
    format!("{{{}}}", join(xs))
}

fn coefficient_rows(mut rec: OutputRecord, poly: &IntPoly) -> OutputRecord {
    for (k, c) in poly.coeffs().iter().enumerate() {
        rec.row([k.to_string(), c.to_string()]);
    }
    rec
}

/// Outcome of a command: the record, and whether it reports a failed check.
struct Report {
    record: OutputRecord,
    failed_checks: bool,
}

impl From<OutputRecord> for Report {
    fn from(record: OutputRecord) -> Self {
        Report {
            record,
            failed_checks: false,
        }
    }
}

fn run(command: Command, cap: u64) -> Result<Report, Failure> {
    let report = match command {
        Command::Qbinom { n, e, eval } => {
            let poly = q_binomial(n, e)?;
            let base = OutputRecord::new("qbinom", &[]).param("n", n).param("e", e);
            evaluated_or_coefficients(base, &poly, eval, "coeff")
        }
        Command::Qmultinom { n, d, eval } => {
            let s = shape(n, d)?;
            let poly = q_multinomial(&s);
            let base = OutputRecord::new("qmultinom", &[]).param("n", n).param("d", join(s.d()));
            evaluated_or_coefficients(base, &poly, eval, "coeff")
        }
        Command::Invdist { n, d } => {
            let s = shape(n, d)?;
            let mut rec = OutputRecord::new("invdist", &["k", "count"])
                .param("n", n)
                .param("d", join(s.d()));
            for (k, c) in mahonian_table(&s).counts().iter().enumerate() {
                rec.row([k.to_string(), c.to_string()]);
            }
            rec.into()
        }
        Command::Inv { n, d, k, method } => {
            let s = shape(n, d)?;
            let value = match method {
                InvMethod::Table => mahonian_table(&s).get(k),
                InvMethod::Denumerant => mahonian_via_denumerant(&s, k),
                InvMethod::Binomial => {
                    if s.num_blocks() != n {
                        return Err(Failure::usage("--method binomial needs the full shape d = 1,2,...,n-1"));
                    }
                    full_mahonian_via_binomials(n, k)?
                }
            };
            let method = method.to_possible_value().expect("named variant").get_name().to_string();
            let mut rec = OutputRecord::new("inv", &["value"])
                .param("n", n)
                .param("d", join(s.d()))
                .param("k", k)
                .param("method", method);
            rec.row([value]);
            rec.into()
        }
        Command::Psi { n, r, method } => {
            let value = psi(n, r, method, cap)?;
            let mut rec = OutputRecord::new("psi", &["value"])
                .param("n", n)
                .param("r", r)
                .param("method", method.name());
            rec.row([value]);
            rec.into()
        }
        Command::Denumerant { w, m } => {
            let wv = WeightVector::new(w.0)?;
            let mut rec = OutputRecord::new("denumerant", &["value"])
                .param("w", wv.weights().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .param("m", m);
            rec.row([denumerant(&wv, m)]);
            rec.into()
        }
        Command::Bounds { n, d, k } => {
            let s = shape(n, d)?;
            let (lower, upper) = inv_bounds(&s, k);
            let mut rec = OutputRecord::new("bounds", &["lower", "upper", "value"])
                .param("n", n)
                .param("d", join(s.d()))
                .param("k", k);
            rec.row([lower.to_string(), upper.to_string(), mahonian_table(&s).get(k).to_string()]);
            rec.into()
        }
        Command::Flags {
            n,
            d,
            p,
            count_only,
            cells,
        } => {
            let s = shape(n, d)?;
            let base = OutputRecord::new("flags", &[])
                .param("n", n)
                .param("d", join(s.d()))
                .param("p", p);
            if cells {
                cell_rows(base, &s, p, cap)?
            } else {
                let flags = enumerate_flags(&s, p, cap)?;
                if count_only {
                    let mut rec = retitle(base, "flags", &["count"]);
                    rec.row([flags.len()]);
                    rec.into()
                } else {
                    let mut columns = vec!["flag".to_string()];
                    columns.extend(s.d().iter().map(|dm| format!("V{dm}")));
                    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
                    let mut rec = retitle(base, "flags", &cols);
                    for (i, f) in flags.iter().enumerate() {
                        let mut row = vec![i.to_string()];
                        row.extend(f.bases.iter().map(ToString::to_string));
                        rec.row(row);
                    }
                    rec.into()
                }
            }
        }
        Command::Tau { n, d1, k } => {
            let tau = tau_for_lambda(n, d1, k)?;
            let mut rec = OutputRecord::new("tau", &["tau1", "tau2", "lambda"])
                .param("n", n)
                .param("d1", d1)
                .param("k", k);
            rec.row([
                set(&tau.blocks()[0]),
                set(&tau.blocks()[1]),
                sigma_stats(&tau).lambda.to_string(),
            ]);
            rec.into()
        }
        Command::Verify { suite, max_n } => {
            let outcomes = run_suite(suite, &VerifyConfig { max_n, cap });
            let mut rec = OutputRecord::new("verify", &["suite", "check", "status", "detail"])
                .param("suite", suite)
                .param("max_n", max_n);
            for o in &outcomes {
                rec.row([o.suite, o.name, if o.passed { "pass" } else { "fail" }, o.detail.as_str()]);
            }
            Report {
                record: rec,
                failed_checks: outcomes.iter().any(|o| !o.passed),
            }
        }
    };
    Ok(report)
}

fn retitle(mut rec: OutputRecord, kind: &str, columns: &[&str]) -> OutputRecord {
    rec.kind = kind.to_string();
    rec.payload.columns = columns.iter().map(|c| c.to_string()).collect();
    rec
}

fn evaluated_or_coefficients(base: OutputRecord, poly: &IntPoly, eval: Option<i64>, name: &str) -> Report {
    let kind = base.kind.clone();
    match eval {
        Some(q) => {
            let mut rec = retitle(base.param("eval", q), &kind, &["value"]);
            rec.row([poly.eval(&BigInt::from(q))]);
            rec.into()
        }
        None => coefficient_rows(retitle(base, &kind, &["k", name]), poly).into(),
    }
}

fn cell_rows(base: OutputRecord, s: &FlagShape, p: u64, cap: u64) -> Result<Report, Failure> {
    if !is_prime(p) {
        return Err(Failure::usage(format!("p = {p} is not prime")));
    }
    let mut rec = retitle(base, "flag-cells", &["sigma", "lambda", "size"]);
    for sigma in OrderedSetPartition::all(s, cap)? {
        let dim = free_positions(&sigma, false).len();
        rec.row([
            sigma.to_string(),
            dim.to_string(),
            BigUint::from(p).pow(dim as u32).to_string(),
        ]);
    }
    Ok(rec.into())
}

fn emit(record: &OutputRecord, format: Format, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            record.write(format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            record.write(format, &mut w)?;
            w.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    let result = run(cli.command, cap).and_then(|report| {
        emit(&report.record, cli.format, cli.out.as_ref())?;
        Ok(report.failed_checks)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: verification failed");
            ExitCode::from(3)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
