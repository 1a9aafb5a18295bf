//! `polydep` — classify multiplicative dependence of polynomial roots, run
//! exhaustive dependence censuses, print the exact expected-absolute-value
//! constants, and run the built-in verification suites.
//!
//! Exit codes: `0` success, `2` invalid arguments or malformed input,
//! `3` verification-suite failure, `1` anything else.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use polydep::census::{run_census, write_csv, CensusRecord, CensusSpec, ClassLabel, Family};
use polydep::depend::{multiplicative_dependence, DependenceVerdict, SearchParameters};
use polydep::verify::{self, ClauseResult};
use polydep::volume;
use polydep::{Error, IntPolynomial, Result};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "polydep",
    version,
    about = "Dependence of polynomial roots: certified verdicts and exhaustive censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide multiplicative dependence of the distinct non-zero roots of an
    /// integer polynomial and print a certified verdict
    Classify(ClassifyArgs),
    /// Exhaustively count dependence classes over a coefficient box and
    /// stream the records as CSV (or JSON)
    Census(CensusArgs),
    /// Print the expected absolute value ν_n of a sum of n uniform ±1-box
    /// variables as an exact fraction and a 12-digit decimal
    Nu(NuArgs),
    /// Run a built-in verification suite and print pass/fail per clause
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Plain,
}

#[derive(clap::Args)]
struct ClassifyArgs {
    /// Polynomial as ascending coefficients, e.g. "[-1,-1,1]" for x² − x − 1
    #[arg(long)]
    poly: String,
    /// Override the exponent search bound
    #[arg(long)]
    exponent_bound: Option<u64>,
    /// Override the starting precision (bits)
    #[arg(long)]
    precision: Option<u32>,
    /// Output format (json or plain)
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct CensusArgs {
    /// Degree n ≥ 2 of the enumerated polynomials
    #[arg(long)]
    degree: usize,
    /// Comma-separated list of height bounds
    #[arg(long, value_delimiter = ',', required = true)]
    height: Vec<i64>,
    /// Coefficient family: monic or general
    #[arg(long, default_value = "monic")]
    family: String,
    /// Comma-separated class labels (M,I,R,P,Q,M*,I*,R*,P*,Q*,F2,DegIrr,L)
    #[arg(long, value_delimiter = ',', required = true)]
    classes: Vec<String>,
    /// Worker threads (default: POLYDEP_THREADS or all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Process only the slabs of one shard, as "index/total"
    #[arg(long)]
    shard: Option<String>,
    /// Write records to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Checkpoint file for interrupt/resume (single height only)
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Override the exponent search bound
    #[arg(long)]
    exponent_bound: Option<u64>,
    /// Override the starting precision (bits)
    #[arg(long)]
    precision: Option<u32>,
    /// Zero the wall-time column so identical runs are byte-identical
    #[arg(long)]
    no_timing: bool,
    /// Output format (csv or json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct NuArgs {
    /// Number of summands n ≥ 1
    #[arg(long)]
    n: u32,
    /// Output format (plain or json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Suite to run: paper, invariants, determinism, or oracle
    #[arg(long, default_value = "paper")]
    suite: String,
    /// Restrict the paper suite to one degree
    #[arg(long)]
    degree: Option<usize>,
    /// Restrict the paper suite to one family (monic or general)
    #[arg(long)]
    family: Option<String>,
    /// Worker threads (default: POLYDEP_THREADS or all cores)
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::InvalidInput(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify(args) => classify(args),
        Command::Census(args) => census(args),
        Command::Nu(args) => nu(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

/// Parses "[c0,c1,...,cn]" (brackets optional) into a polynomial with
/// ascending coefficients, naming the offending token on failure.
fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    let mut coeffs = Vec::new();
    for token in inner.split(',') {
        let t = token.trim();
        if t.is_empty() {
            return Err(Error::Parse(format!("empty coefficient token in `{text}`")));
        }
        let c = BigInt::from_str(t).map_err(|_| Error::Parse(format!("invalid coefficient `{t}`")))?;
        coeffs.push(c);
    }
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::Parse("the zero polynomial has no roots".into()));
    }
    Ok(IntPolynomial::new(coeffs))
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let threads = match flag {
        Some(n) => Some(n),
        None => match std::env::var("POLYDEP_THREADS") {
            Ok(v) => Some(v.parse::<usize>().map_err(|_| {
                Error::InvalidInput(format!("POLYDEP_THREADS must be a positive integer, got `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidInput("thread count must be positive".into()));
        }
        // ignore the error if a global pool already exists (repeat calls)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn apply_overrides(
    params: &mut SearchParameters,
    exponent_bound: Option<u64>,
    precision: Option<u32>,
) -> Result<()> {
    if let Some(k) = exponent_bound {
        params.exponent_bound = k;
    }
    if let Some(p) = precision {
        params.precision_start = p;
        if params.max_precision < p {
            params.max_precision = p;
        }
    }
    params.validate()
}

fn classify(args: ClassifyArgs) -> Result<ExitCode> {
    let f = parse_poly(&args.poly)?;
    let mut params = SearchParameters::for_polynomial(&f);
    apply_overrides(&mut params, args.exponent_bound, args.precision)?;
    let verdict = multiplicative_dependence(&f, &params)?;
    match args.format {
        OutputFormat::Json => println!("{}", verdict.to_json()),
        OutputFormat::Plain => println!("{}", plain_verdict(&verdict)),
        OutputFormat::Csv => {
            return Err(Error::InvalidInput("classify output is json or plain, not csv".into()))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn plain_verdict(verdict: &DependenceVerdict) -> String {
    match verdict {
        DependenceVerdict::Dependent { relation, .. } => {
            let ks: Vec<String> = relation.iter().map(|k| k.to_string()).collect();
            format!("dependent [{}]", ks.join(","))
        }
        DependenceVerdict::Independent { reason } => format!("independent ({})", reason.as_str()),
        DependenceVerdict::Unknown { searched_bound } => {
            format!("unknown (searched exponent bound {searched_bound})")
        }
    }
}

fn census(args: CensusArgs) -> Result<ExitCode> {
    configure_threads(args.threads)?;
    let family: Family = args.family.parse()?;
    let classes: BTreeSet<ClassLabel> = args
        .classes
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let shard = args.shard.as_deref().map(parse_shard).transpose()?;
    if args.checkpoint.is_some() && args.height.len() != 1 {
        return Err(Error::InvalidInput(
            "checkpointing requires a single height".into(),
        ));
    }
    let mut records: Vec<CensusRecord> = Vec::new();
    for &height in &args.height {
        let mut spec = CensusSpec::new(args.degree, height, family, classes.clone());
        apply_overrides(&mut spec.params, args.exponent_bound, args.precision)?;
        spec.shard = shard;
        spec.checkpoint_path = args.checkpoint.clone();
        spec.validate()?;
        records.extend(run_census(&spec)?);
    }
    let rendered = render_records(&records, args.no_timing, args.format)?;
    match &args.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(rendered.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_shard(text: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = text.split('/').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("shard must be `index/total`, got `{text}`")));
    }
    let index: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid shard index `{}`", parts[0])))?;
    let total: u32 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid shard total `{}`", parts[1])))?;
    Ok((index, total))
}

fn render_records(records: &[CensusRecord], no_timing: bool, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => {
            let mut out = Vec::new();
            write_csv(records, no_timing, &mut out)?;
            Ok(String::from_utf8(out).expect("CSV output is UTF-8"))
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "degree": r.degree,
                        "height": r.height,
                        "family": r.family.to_string(),
                        "class": r.class.to_string(),
                        "count_certain": r.count_certain,
                        "count_unknown": r.count_unknown,
                        "elapsed_ms": if no_timing { 0 } else { r.elapsed_ms },
                        "version": r.version,
                    })
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&rows)?;
            text.push('\n');
            Ok(text)
        }
        OutputFormat::Plain => Err(Error::InvalidInput(
            "census output is csv or json, not plain".into(),
        )),
    }
}

/// Twelve exact decimal digits of a positive rational, rounded half-up.
fn twelve_digits(numer: &BigInt, denom: &BigInt) -> String {
    let scale = BigInt::from(10u32).pow(12);
    let scaled = (numer * &scale * 2u32 + denom) / (denom * 2u32);
    let whole = &scaled / &scale;
    let frac = &scaled % &scale;
    format!("{whole}.{:0>12}", frac.to_string())
}

fn nu(args: NuArgs) -> Result<ExitCode> {
    let value = volume::nu(args.n)?;
    let decimal = twelve_digits(value.numer(), value.denom());
    match args.format {
        OutputFormat::Plain => {
            println!("{value}");
            println!("{decimal}");
        }
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::json!({ "n": args.n, "nu": value.to_string(), "decimal": decimal })
            );
        }
        OutputFormat::Csv => {
            return Err(Error::InvalidInput("nu output is plain or json, not csv".into()))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode> {
    configure_threads(args.threads)?;
    let family = args
        .family
        .as_deref()
        .map(|s| s.parse::<Family>())
        .transpose()?;
    if args.suite != "paper" && (args.degree.is_some() || family.is_some()) {
        return Err(Error::InvalidInput(
            "--degree/--family filters apply to the paper suite only".into(),
        ));
    }
    let clauses: Vec<ClauseResult> = match args.suite.as_str() {
        "paper" => verify::paper_suite(args.degree, family)?,
        "invariants" => verify::invariant_suite(2024)?,
        "determinism" => vec![verify::determinism_checks()?],
        "oracle" => vec![verify::oracle_equivalence(15, 8)?],
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite `{other}` (expected paper, invariants, determinism, or oracle)"
            )))
        }
    };
    let mut failed = false;
    for clause in &clauses {
        let status = if clause.passed { "PASS" } else { "FAIL" };
        println!("{status} — {}: {}", clause.name, clause.detail);
        if !clause.passed {
            failed = true;
        }
    }
    if failed {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
