//! `modknot`: enumerate modular knots and check the Rademacher symbol.
//!
//! Data goes to stdout (CSV or JSON), diagnostics to stderr. Exit status is
//! 0 on success, 1 when an internal invariant fails, 2 on a configuration
//! error.

mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modknot::verify::{run_suite, VerifyConfig};
use modknot::winding::winding_number;
use modknot::{
    cauchy_cdf_compare, classes_by_length, density_mod_m, enumerate_classes, psi, symbol_record, BigInt,
    ClassRecord, EnumerationParams, Error,
};

use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(name = "modknot", version, about = "Modular knots and the Rademacher symbol")]
struct Cli {
    /// Output format for data written to stdout.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,
    /// Worker threads for enumeration (defaults to available parallelism).
    #[arg(long, env = "MODKNOT_WORKERS", global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Bound {
    /// Strict upper bound on the trace.
    #[arg(long)]
    trace_bound: Option<u64>,
    /// Strict upper bound on the geodesic length.
    #[arg(long)]
    length_bound: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List primitive hyperbolic classes.
    Enumerate {
        #[command(flatten)]
        bound: Bound,
    },
    /// List classes with their Dedekind and Rademacher symbols.
    Symbols {
        #[command(flatten)]
        bound: Bound,
    },
    /// Residues of Psi modulo m over classes with trace below the bound.
    Density {
        #[arg(long)]
        trace_bound: u64,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Psi/length against the Cauchy law with scale 3/pi.
    Cauchy {
        #[arg(long)]
        length_bound: f64,
        /// Comma-separated increasing bin edges; `inf` and `-inf` allowed.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
              default_value = "-inf,-2,-1,-0.5,0,0.5,1,2,inf")]
        edges: Vec<f64>,
    },
    /// Compare the winding-number computation of Psi with the closed form.
    Winding {
        #[arg(long)]
        trace_bound: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
    /// Run the full self-check suite.
    Verify {
        #[arg(long)]
        trace_bound: u64,
        #[arg(long, default_value_t = 20)]
        oracle_guard: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
}

enum Failure {
    Config(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::OracleBoundExceeded { .. } | Error::InsufficientTerms { .. } => {
                Failure::Config(e.to_string())
            }
            other => Failure::Invariant(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invariant(format!("write failed: {e}"))
    }
}

fn workers(cli: &Cli) -> Result<usize, Failure> {
    match cli.workers {
        Some(0) => Err(Failure::Config("worker count must be positive".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn classes(bound: &Bound, workers: usize) -> Result<Vec<ClassRecord>, Failure> {
    match (bound.trace_bound, bound.length_bound) {
        (Some(nu), None) => Ok(enumerate_classes(&EnumerationParams::new(nu, workers)?)?),
        (None, Some(len)) => Ok(classes_by_length(len, workers)?),
        _ => Err(Failure::Config("exactly one of --trace-bound / --length-bound".into())),
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let workers = workers(cli)?;
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    match &cli.command {
        Command::Enumerate { bound } => {
            let records = classes(bound, workers)?;
            let mut table = Table::new("enumerate", output::CLASS_COLUMNS);
            table.meta_bound(bound.trace_bound, bound.length_bound);
            for r in &records {
                table.push(output::class_row(r));
            }
            table.write(format, out)?;
        }
        Command::Symbols { bound } => {
            let records = classes(bound, workers)?;
            let mut columns = output::CLASS_COLUMNS.to_vec();
            columns.extend(["phi", "psi", "psi_word"]);
            let mut table = Table::new("symbols", &columns);
            table.meta_bound(bound.trace_bound, bound.length_bound);
            let mut mismatches = Vec::new();
            for r in &records {
                let s = symbol_record(r)?;
                if s.psi != s.psi_word {
                    mismatches.push(r.necklace.to_string());
                }
                let mut row = output::class_row(r);
                row.extend([s.phi.into(), s.psi.into(), s.psi_word.into()]);
                table.push(row);
            }
            table.write(format, out)?;
            if !mismatches.is_empty() {
                return Err(Failure::Invariant(format!("Psi routes disagree on {mismatches:?}")));
            }
        }
        Command::Density { trace_bound, modulus } => {
            if *modulus < 2 {
                return Err(Failure::Config(format!("--mod {modulus} must be at least 2")));
            }
            if *trace_bound < 4 {
                return Err(Failure::Config(format!("--trace-bound {trace_bound} must be at least 4")));
            }
            let report = density_mod_m(*trace_bound, *modulus, workers)?;
            if !report.mirror_symmetric() {
                output::write_density(&report, format, out)?;
                return Err(Failure::Invariant(format!("residue counts not mirror symmetric: {:?}", report.counts)));
            }
            output::write_density(&report, format, out)?;
        }
        Command::Cauchy { length_bound, edges } => {
            let report = cauchy_cdf_compare(*length_bound, edges, workers)?;
            output::write_cauchy(&report, format, out)?;
        }
        Command::Winding { trace_bound, samples, terms } => {
            let records = enumerate_classes(&EnumerationParams::new(*trace_bound, workers)?)?;
            let mut table = Table::new(
                "winding",
                &["necklace", "trace", "psi", "winding", "residual", "samples", "agree"],
            );
            table.meta_bound(Some(*trace_bound), None);
            let mut bad = Vec::new();
            for r in &records {
                let expected = psi(&r.rep)?;
                let w = winding_number::<_, f64>(&r.rep, *samples, *terms)?;
                let agree = BigInt::from(w.value) == expected;
                if !agree {
                    bad.push(r.necklace.to_string());
                }
                table.push(vec![
                    r.necklace.to_string().into(),
                    output::Cell::Int(r.trace().clone()),
                    output::Cell::Int(expected),
                    w.value.into(),
                    w.residual.into(),
                    (w.samples as i64).into(),
                    agree.into(),
                ]);
            }
            table.write(format, out)?;
            if !bad.is_empty() {
                return Err(Failure::Invariant(format!("winding differs from Psi on {bad:?}")));
            }
        }
        Command::Verify { trace_bound, oracle_guard, samples, terms } => {
            let cfg = VerifyConfig {
                trace_bound: *trace_bound,
                oracle_guard: *oracle_guard,
                worker_count: workers,
                n_samples: *samples,
                n_terms: *terms,
            };
            let outcomes = run_suite(&cfg)?;
            let mut table = Table::new("verify", &["check", "passed", "detail"]);
            table.meta_bound(Some(*trace_bound), None);
            for o in &outcomes {
                table.push(vec![o.name.to_string().into(), o.passed.into(), o.detail.clone().into()]);
            }
            table.write(format, out)?;
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
            if !failed.is_empty() {
                return Err(Failure::Invariant(format!("failed checks: {failed:?}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            let _ = out.flush();
            eprintln!("modknot: configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            let _ = out.flush();
            eprintln!("modknot: {msg}");
            ExitCode::from(1)
        }
    }
}
