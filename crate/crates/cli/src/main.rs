use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitgate_cli::analyze::{parse_height, parse_primes, parse_sunit_options};
use unitgate_cli::poly::{parse_coeff_list, parse_polynomial};
use unitgate_cli::{
    analyze, run_batch, scan, AnalyzeOptions, CliError, FieldRecord, Predicate, ScanOptions, EXIT_OK,
    EXIT_VIOLATION,
};

/// Local criteria for unit equations and asymptotic Fermat over number fields.
///
/// Coefficient lists are little-endian: the constant term comes first, so
/// x^3 - 6x^2 + 9x - 3 is [-3, 9, -6, 1]. Pass --lmfdb-order for big-endian input.
/// Output is JSON lines unless --format table is given. Exit codes: 0 ok,
/// 1 an oracle search contradicts a certificate, 2 input error.
/// UNITGATE_SEED sets the seed of the randomized factorization over F_p.
#[derive(Parser)]
#[command(name = "unitgate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct CommonOpts {
    /// Primes whose splitting shape is reported, comma-separated [default: 2, 3 and primes ≥ 5 dividing disc]
    #[arg(long)]
    primes: Option<String>,
    /// Prime for pram/unitcrit [default: try every prime ≥ 5 dividing the discriminant]
    #[arg(long)]
    prime: Option<u64>,
    /// Unit-equation search height, as H=20
    #[arg(long, value_parser = parse_height_arg)]
    search: Option<i64>,
    /// S-unit search: height and optional denominator exponent, as `H=4 denom=3`
    #[arg(long, num_args = 1..=2)]
    sunits: Option<Vec<String>>,
    /// Coefficient lists are big-endian (leading coefficient first)
    #[arg(long)]
    lmfdb_order: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include per-phase timings in reports
    #[arg(long)]
    timings: bool,
}

impl CommonOpts {
    fn analyze_options(&self) -> Result<AnalyzeOptions, CliError> {
        Ok(AnalyzeOptions {
            primes: self.primes.as_deref().map(parse_primes).transpose()?,
            criterion_prime: self.prime,
            unit_height: self.search,
            sunits: self.sunits.as_deref().map(parse_sunit_options).transpose()?,
            timings: self.timings,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one field given by its defining polynomial
    Analyze {
        /// Polynomial such as "x^3-6x^2+9x-3", or a comma-separated coefficient list with --coeffs
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Read POLY as a comma-separated coefficient list
        #[arg(long)]
        coeffs: bool,
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Analyze newline-delimited JSON records {"label": .., "coeffs": [..]} ("-" reads stdin)
    Batch {
        file: String,
        /// Exit with status 2 if any line was skipped or rejected
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Enumerate monic irreducible polynomials whose field satisfies a predicate
    Scan {
        #[arg(long)]
        degree: usize,
        /// Coefficient bound (at most 50)
        #[arg(long)]
        bound: i64,
        /// Comma-separated conjunction: any, totally_real, eisenstein:p, ramified:p,
        /// inert:p, split:p, or a criterion name such as t23ram or pram(p=5)
        #[arg(long, default_value = "any")]
        predicate: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Unit-equation search height for fields certified by unitcrit or triantafillou
        #[arg(long, value_parser = parse_height_arg)]
        search: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_height_arg(s: &str) -> Result<i64, String> {
    parse_height(s).map_err(|e| e.to_string())
}

fn emit<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Analyze {
            poly,
            coeffs,
            label,
            opts,
        } => {
            let mut c = if coeffs {
                parse_coeff_list(&poly)?
            } else {
                parse_polynomial(&poly)?
            };
            if opts.lmfdb_order && coeffs {
                c.reverse();
            }
            let record = match label {
                Some(l) => FieldRecord::with_label(l, c),
                None => FieldRecord::new(c),
            };
            let report = analyze(&record, &opts.analyze_options()?)?;
            match opts.format {
                Format::Json => emit(&mut out, &report)?,
                Format::Table => write!(out, "{}", report.to_table())?,
            }
            if report.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Command::Batch { file, strict, opts } => {
            let mut input = String::new();
            if file == "-" {
                io::stdin().read_to_string(&mut input)?;
            } else {
                input = std::fs::read_to_string(&file)
                    .map_err(|e| CliError::Input(format!("cannot read {file}: {e}")))?;
            }
            let outcome = run_batch(&input, &opts.analyze_options()?, opts.lmfdb_order);
            for (line, why) in &outcome.problems {
                eprintln!("warning: line {line} skipped: {why}");
            }
            for report in &outcome.reports {
                match opts.format {
                    Format::Json => emit(&mut out, report)?,
                    Format::Table => writeln!(out, "{}", report.to_table())?,
                }
            }
            emit(&mut out, &serde_json::json!({ "summary": outcome.summary }))?;
            if outcome.summary.violations > 0 {
                EXIT_VIOLATION
            } else if strict && !outcome.problems.is_empty() {
                unitgate_cli::EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
        Command::Scan {
            degree,
            bound,
            predicate,
            limit,
            search,
            format,
        } => {
            let predicate: Predicate = predicate.parse().map_err(CliError::Input)?;
            let outcome = scan(&ScanOptions {
                degree,
                bound,
                predicate,
                limit,
                oracle_height: search,
            })?;
            for r in &outcome.records {
                match format {
                    Format::Json => emit(&mut out, r)?,
                    Format::Table => {
                        let yes: Vec<&str> = r
                            .verdicts
                            .iter()
                            .flatten()
                            .filter(|(_, h)| **h == unitgate_core::criteria::Holds::Yes)
                            .map(|(t, _)| t.name())
                            .collect();
                        writeln!(out, "{:<40} {}", r.label, yes.join(" "))?;
                    }
                }
            }
            for v in &outcome.violations {
                eprintln!("VIOLATION: {v}");
            }
            if outcome.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
