//! Command-line front end; all computation lives in the library.
//!
//! Exit codes: 0 success, 1 invalid parameters or input, 2 verification or
//! consistency failure (including a scan counterexample), 3 I/O failure.
//!
//! Commands assemble their report text first and write it in one shot, so a
//! consumer closing the pipe early (`fouradic scan ... | head`) truncates
//! the output quietly instead of aborting mid-line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use fouradic::adic;
use fouradic::cyclotomy::{
    build_class_table, cyclotomic_numbers_bruteforce, cyclotomic_numbers_formula,
    quadratic_partition, CycloMatrix,
};
use fouradic::scan::{self, ScanOptions};
use fouradic::sequence::{self, QuaternarySequence, SequenceFormat};
use fouradic::verify;
use fouradic::{Error, TwoPrimeParams};

#[derive(Parser)]
#[command(
    name = "fouradic",
    version,
    about = "4-adic complexity of two-prime quaternary sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Encoding {
    Digits,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableMode {
    Brute,
    Formula,
    Both,
}

#[derive(Args)]
struct PairArgs {
    /// First prime of the ordered pair
    #[arg(long)]
    p: u64,
    /// Second prime of the ordered pair
    #[arg(long)]
    q: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the generator data (g, h, e) for a pair
    Params {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate one period of the sequence
    Generate {
        #[command(flatten)]
        pair: PairArgs,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "digits")]
        encoding: Encoding,
    },
    /// Exact and/or predicted 4-adic complexity
    Complexity {
        #[arg(long, requires = "q", conflicts_with = "input")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        q: Option<u64>,
        /// Read the sequence from a file instead of generating it
        #[arg(long = "in", value_name = "FILE")]
        input: Option<String>,
        /// Base for the complexity (file mode and --exact mode)
        #[arg(long, default_value = "4")]
        m: u64,
        /// Compute only the exact complexity
        #[arg(long, conflicts_with = "predict")]
        exact: bool,
        /// Compute only the closed-form prediction
        #[arg(long)]
        predict: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sweep all valid ordered pairs with pq below a bound
    Scan {
        #[arg(long = "pq-max")]
        pq_max: u64,
        /// Resume point: skip pairs with pq below this
        #[arg(long = "pq-min", default_value = "0")]
        pq_min: u64,
        /// Worker threads
        #[arg(long, env = "FOURADIC_JOBS")]
        jobs: Option<usize>,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<String>,
        /// Also compute the exact complexity per pair (slow path)
        #[arg(long)]
        exact: bool,
        /// Evaluate the candidate divisor even when it is composite
        #[arg(long = "force-eval")]
        force_eval: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: ScanFormat,
    },
    /// Run the congruence-identity suite for a pair
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Search bound for cofactor prime divisors 1 + 2*lambda*pq
        #[arg(
            long = "lambda-max",
            env = "FOURADIC_LAMBDA_MAX",
            default_value = "10000"
        )]
        lambda_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cyclotomic numbers: enumeration, closed form, or both with a diff
    Cyclotomic {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value = "both")]
        mode: TableMode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => 3,
            Error::FactorizationMismatch(_)
            | Error::BothFactorsNontrivial { .. }
            | Error::PartitionNotFound { .. }
            | Error::PartitionAmbiguous { .. }
            | Error::NonIntegralConstants { .. } => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

/// What a command produced: its report text plus the exit code.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            eprint!("{}", outcome.stderr);
            match std::io::stdout().write_all(outcome.stdout.as_bytes()) {
                Ok(()) => ExitCode::from(outcome.code),
                // the consumer hung up; the truncation was requested
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                    ExitCode::from(outcome.code)
                }
                Err(e) => {
                    eprintln!("error: cannot write stdout: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn pair_params(pair: &PairArgs) -> Result<TwoPrimeParams, Failure> {
    Ok(TwoPrimeParams::new(pair.p, pair.q)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::new(3, format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Writes to the file when a path is given; otherwise defers to the caller's
/// stdout report.
fn deliver(path: Option<&str>, contents: String) -> Result<Outcome, Failure> {
    match path {
        Some(path) => {
            fs::write(path, contents)
                .map_err(|e| Failure::new(3, format!("cannot write {path}: {e}")))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(contents)),
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Params { pair, format } => {
            let params = pair_params(&pair)?;
            let text = match format {
                Format::Json => to_json(&params)?,
                Format::Text => format!(
                    "p = {}\nq = {}\ng = {}\nh = {}\ne = {}\n",
                    params.p(),
                    params.q(),
                    params.g(),
                    params.h(),
                    params.e()
                ),
            };
            Ok(Outcome::ok(text))
        }
        Command::Generate {
            pair,
            out,
            encoding,
        } => {
            let params = pair_params(&pair)?;
            let seq = sequence::generate(&params);
            let text = match encoding {
                Encoding::Digits => seq.serialize(SequenceFormat::Digits),
                Encoding::Structured => seq.serialize(SequenceFormat::Structured),
            };
            deliver(out.as_deref(), text)
        }
        Command::Complexity {
            p,
            q,
            input,
            m,
            exact,
            predict,
            format,
        } => match (p, q, input) {
            (Some(p), Some(q), None) => complexity_pair(p, q, m, exact, predict, format),
            (None, None, Some(path)) => complexity_file(&path, m, format),
            _ => Err(Failure::new(1, "provide either --p and --q, or --in FILE")),
        },
        Command::Scan {
            pq_max,
            pq_min,
            jobs,
            out,
            exact,
            force_eval,
            format,
        } => {
            if pq_max < 25 {
                return Err(Failure::new(1, "--pq-max must be at least 25"));
            }
            if pq_min > pq_max {
                return Err(Failure::new(1, "--pq-min must not exceed --pq-max"));
            }
            let rows = scan::run_scan(&ScanOptions {
                pq_min,
                pq_max,
                exact,
                force_eval,
                jobs,
            })?;
            let mut buf = Vec::new();
            match format {
                ScanFormat::Csv => {
                    scan::write_csv(&rows, &mut buf).map_err(|e| Failure::new(3, e.to_string()))?
                }
                ScanFormat::Json => {
                    serde_json::to_writer_pretty(&mut buf, &rows)
                        .map_err(|e| Failure::new(3, e.to_string()))?;
                    buf.push(b'\n');
                }
            }
            let text = String::from_utf8(buf).expect("both formats are utf-8");
            let mut outcome = deliver(out.as_deref(), text)?;
            let hits: Vec<_> = rows.iter().filter(|r| r.d_divides).collect();
            if !hits.is_empty() {
                for r in hits {
                    writeln!(
                        outcome.stderr,
                        "counterexample: {} divides the sequence value for ({}, {})",
                        r.candidate_d, r.p, r.q
                    )
                    .unwrap();
                }
                outcome.code = 2;
            }
            Ok(outcome)
        }
        Command::Verify {
            pair,
            lambda_max,
            format,
        } => {
            let params = pair_params(&pair)?;
            let summary = verify::run_all(&params, lambda_max)?;
            let text = match format {
                Format::Json => to_json(&summary)?,
                Format::Text => {
                    let mut s = format!(
                        "pair ({}, {}), lambda <= {}, moduli {:?}\n",
                        summary.p, summary.q, summary.lambda_max, summary.d0s
                    );
                    for report in &summary.reports {
                        let status = match (report.passed, report.vacuous) {
                            (true, false) => "pass",
                            (true, true) => "pass (vacuous)",
                            _ => "FAIL",
                        };
                        writeln!(s, "{:?}: {status}", report.check).unwrap();
                        if !report.passed {
                            for rec in report.records.iter().filter(|r| !r.passed) {
                                writeln!(s, "  failed: {}", rec.label).unwrap();
                            }
                        }
                    }
                    writeln!(
                        s,
                        "{} of {} checks non-vacuous",
                        summary.non_vacuous(),
                        summary.reports.len()
                    )
                    .unwrap();
                    s
                }
            };
            Ok(Outcome {
                code: if summary.all_passed() { 0 } else { 2 },
                stdout: text,
                stderr: String::new(),
            })
        }
        Command::Cyclotomic { pair, mode, format } => {
            let params = pair_params(&pair)?;
            let table = build_class_table(&params);
            let brute = cyclotomic_numbers_bruteforce(&table);
            match mode {
                TableMode::Brute => Ok(Outcome::ok(render_table("brute", &brute, None, format)?)),
                TableMode::Formula => {
                    // calibration needs the enumeration anyway
                    let (a, b) = quadratic_partition(&table, &brute)?;
                    let formula = cyclotomic_numbers_formula(&params, a, b)?;
                    Ok(Outcome::ok(render_table(
                        "formula",
                        &formula,
                        Some((a, b)),
                        format,
                    )?))
                }
                TableMode::Both => {
                    let (a, b) = quadratic_partition(&table, &brute)?;
                    let formula = cyclotomic_numbers_formula(&params, a, b)?;
                    let matches = formula == brute;
                    let text = match format {
                        Format::Json => to_json(&serde_json::json!({
                            "brute": brute,
                            "formula": formula,
                            "a": a,
                            "b": b,
                            "match": matches,
                        }))?,
                        Format::Text => {
                            let mut s = render_matrix("brute", &brute);
                            s.push_str(&render_matrix("formula", &formula));
                            writeln!(s, "(a, b) = ({a}, {b})").unwrap();
                            writeln!(s, "match: {matches}").unwrap();
                            s
                        }
                    };
                    Ok(Outcome {
                        code: if matches { 0 } else { 2 },
                        stdout: text,
                        stderr: String::new(),
                    })
                }
            }
        }
    }
}

fn complexity_pair(
    p: u64,
    q: u64,
    m: u64,
    exact_only: bool,
    predict_only: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let params = TwoPrimeParams::new(p, q)?;
    if predict_only {
        let prediction = adic::predict(&params)?;
        let text = match format {
            Format::Json => to_json(&prediction)?,
            Format::Text => format!(
                "r1 = {}, r2 = {}\ncase {}, candidate divisor {} (prime: {})\npredicted phi: {:?}\n",
                prediction.r1,
                prediction.r2,
                prediction.case_tag.as_str(),
                prediction.candidate_d,
                prediction.candidate_prime,
                prediction.phi_set
            ),
        };
        return Ok(Outcome::ok(text));
    }
    if exact_only {
        let seq = sequence::generate(&params);
        let phi = adic::madic_complexity(&seq, m)?;
        let text = match format {
            Format::Json => to_json(&serde_json::json!({
                "p": p, "q": q, "m": m, "period": seq.period(), "phi": phi,
            }))?,
            Format::Text => format!("phi_{m} = {phi} (period {})\n", seq.period()),
        };
        return Ok(Outcome::ok(text));
    }
    if m != 4 {
        return Err(Failure::new(
            1,
            "prediction applies to m = 4; use --exact for other bases",
        ));
    }
    let report = adic::complexity_report(&params)?;
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = format!("phi_exact = {} (period {})\n", report.phi_exact, p * q);
            writeln!(s, "predicted set: {:?}", report.prediction.phi_set).unwrap();
            writeln!(
                s,
                "r1 = {}, r2 = {}",
                report.prediction.r1, report.prediction.r2
            )
            .unwrap();
            writeln!(
                s,
                "gcd split: {} * {} * {} = {}",
                report.decomposition.gcd_p,
                report.decomposition.gcd_q,
                report.decomposition.gcd_cofactor,
                report.decomposition.gcd_total
            )
            .unwrap();
            writeln!(
                s,
                "candidate divisor {} (prime: {}, divides: {})",
                report.probe.candidate_d, report.probe.candidate_prime, report.probe.divides
            )
            .unwrap();
            writeln!(s, "consistent: {}", report.consistent).unwrap();
            s
        }
    };
    Ok(Outcome {
        code: if report.consistent { 0 } else { 2 },
        stdout: text,
        stderr: String::new(),
    })
}

fn complexity_file(path: &str, m: u64, format: Format) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(3, format!("cannot read {path}: {e}")))?;
    let seq = QuaternarySequence::parse(&text)?;
    let phi = adic::madic_complexity(&seq, m)?;
    let text = match format {
        Format::Json => to_json(&serde_json::json!({
            "period": seq.period(), "m": m, "phi": phi,
        }))?,
        Format::Text => format!("phi_{m} = {phi} (period {})\n", seq.period()),
    };
    Ok(Outcome::ok(text))
}

fn render_table(
    name: &str,
    matrix: &CycloMatrix,
    calibration: Option<(i64, i64)>,
    format: Format,
) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut value = serde_json::json!({ name: matrix });
            if let Some((a, b)) = calibration {
                value["a"] = a.into();
                value["b"] = b.into();
            }
            to_json(&value)
        }
        Format::Text => {
            let mut s = render_matrix(name, matrix);
            if let Some((a, b)) = calibration {
                writeln!(s, "(a, b) = ({a}, {b})").unwrap();
            }
            Ok(s)
        }
    }
}

fn render_matrix(name: &str, matrix: &CycloMatrix) -> String {
    let mut s = format!("{name}:\n");
    for row in matrix {
        writeln!(s, "  {} {} {} {}", row[0], row[1], row[2], row[3]).unwrap();
    }
    s
}
