//! Command-line interface: quiver ingestion, table computation, series
//! dumps, the enlarged-quiver and embedding helpers, and the verification
//! runner. Results go to stdout, diagnostics to stderr; identical
//! invocations produce byte-identical output.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kacq::hua::{p_series, q_series, KacTable, RefinedKacTable};
use kacq::partitions::{tau_m, MultiplicityMatrix, PartitionTuple};
use kacq::qfield::RationalFunction;
use kacq::quiver::{DimVector, Quiver};
use kacq::verify::{run_suite, CheckReport, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "kacq",
    version,
    about = "Exact Kac polynomials and refined Kac functions of finite quivers",
    after_help = "Set RAYON_NUM_THREADS to limit the worker count used for series assembly."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac polynomials A(alpha, q) up to a weight bound
    Kac(KacArgs),
    /// Refined Kac functions A(lambda_*, q) up to a weight bound
    Refined(RefinedArgs),
    /// The enlarged quiver on n*m vertices
    #[command(name = "gamma-m")]
    GammaM(GammaArgs),
    /// The embedding of a partition tuple into all-ones tuples
    #[command(name = "tau-m")]
    TauM(TauArgs),
    /// Dump a generating series term by term
    Series(SeriesArgs),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct QuiverSource {
    #[arg(
        long,
        value_name = "MATRIX",
        help = "Inline companion matrix, e.g. \"[[2]]\" or \"[[1,1],[0,1]]\""
    )]
    matrix: Option<String>,
    /// Quiver file with `vertices:` and `arrows:` fields
    #[arg(long, value_name = "PATH", conflicts_with = "matrix")]
    file: Option<PathBuf>,
}

impl QuiverSource {
    fn load(&self) -> Result<Quiver, CliError> {
        match (&self.matrix, &self.file) {
            (Some(text), None) => Ok(Quiver::parse(text)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
                Ok(Quiver::parse(&text)?)
            }
            _ => Err(CliError(
                "provide a quiver via exactly one of --matrix or --file".to_string(),
            )),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// Dimension-graded series in X1..Xn
    P,
    /// Refined series in the level variables Xi_k
    Q,
}

#[derive(Args)]
struct KacArgs {
    #[command(flatten)]
    quiver: QuiverSource,
    /// Weight bound on |alpha|
    #[arg(long, default_value_t = 3)]
    weight: u32,
    /// Print a single entry, e.g. --alpha 1,2
    #[arg(long, value_name = "DIMS")]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct RefinedArgs {
    #[command(flatten)]
    quiver: QuiverSource,
    /// Weight bound on |lambda_*|
    #[arg(long, default_value_t = 3)]
    weight: u32,
    /// Cap on partition parts (defaults to the weight bound)
    #[arg(long, value_name = "M")]
    max_part: Option<u32>,
    #[arg(
        long,
        value_name = "TUPLE",
        help = "Print a single entry, e.g. --lambda \"[2,1];[1]\""
    )]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    quiver: QuiverSource,
    /// Level count m >= 1
    #[arg(long, default_value_t = 2)]
    m: u32,
}

#[derive(Args)]
struct TauArgs {
    #[arg(
        long,
        value_name = "TUPLE",
        help = "Partition tuple, e.g. \"[2,1,1];[2,2,1];[2,2,2]\""
    )]
    lambda: String,
    /// Level count m >= max part
    #[arg(long, default_value_t = 2)]
    m: u32,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    quiver: QuiverSource,
    #[arg(long, value_enum, default_value_t = SeriesKind::P)]
    kind: SeriesKind,
    #[arg(long, default_value_t = 3)]
    weight: u32,
    /// Level cap for the refined series (defaults to the weight bound)
    #[arg(long, value_name = "M")]
    max_part: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name (tables, sum, transport, positivity, jordan, heine,
    /// width1, mozgovoy, oracle, gamma) or "all"
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed for the randomized suites
    #[arg(long, default_value_t = 1729)]
    seed: u64,
    /// Override the per-suite default weight bound
    #[arg(long)]
    weight: Option<u32>,
    /// Write the machine-readable report to this path
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// JSON rendering of one table entry; q-coefficients are decimal strings by
/// ascending exponent, arbitrary-precision safe. Field names are sorted so
/// that a parse/re-render cycle through ordinary JSON values is a fixpoint.
#[derive(Serialize, Deserialize)]
struct EntryJson {
    key: serde_json::Value,
    value_den: Vec<String>,
    value_num: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    entries: Vec<EntryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_part: Option<u32>,
    quiver: Vec<Vec<u32>>,
    weight_bound: u32,
}

fn entry_json(key: serde_json::Value, value: &RationalFunction) -> EntryJson {
    EntryJson {
        key,
        value_den: value
            .denominator()
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect(),
        value_num: value
            .numerator()
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect(),
    }
}

fn print_json(table: &TableJson) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(table)?);
    Ok(())
}

fn cmd_kac(args: &KacArgs) -> Result<(), CliError> {
    let quiver = args.quiver.load()?;
    let table = KacTable::compute(&quiver, args.weight)?;
    if let Some(alpha_text) = &args.alpha {
        let alpha: DimVector = alpha_text.parse()?;
        let value = table.get(&alpha)?;
        match args.format {
            Format::Table => println!("{value}"),
            Format::Json => print_json(&TableJson {
                entries: vec![entry_json(serde_json::to_value(alpha.entries())?, &value)],
                max_part: None,
                quiver: quiver.companion().to_vec(),
                weight_bound: args.weight,
            })?,
        }
        return Ok(());
    }
    match args.format {
        Format::Table => {
            for (alpha, value) in table.dense_entries() {
                println!("{alpha}: {value}");
            }
        }
        Format::Json => {
            let entries = table
                .dense_entries()
                .into_iter()
                .map(|(alpha, value)| {
                    Ok(entry_json(serde_json::to_value(alpha.entries())?, &value))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            print_json(&TableJson {
                entries,
                max_part: None,
                quiver: quiver.companion().to_vec(),
                weight_bound: args.weight,
            })?;
        }
    }
    Ok(())
}

fn tuple_key_json(t: &PartitionTuple) -> Result<serde_json::Value, CliError> {
    let lists: Vec<Vec<u32>> = t.components().iter().map(|p| p.parts().to_vec()).collect();
    Ok(serde_json::to_value(lists)?)
}

fn cmd_refined(args: &RefinedArgs) -> Result<(), CliError> {
    let quiver = args.quiver.load()?;
    let max_part = args.max_part.unwrap_or(args.weight);
    let table = RefinedKacTable::compute(&quiver, args.weight, Some(max_part))?;
    if let Some(lambda_text) = &args.lambda {
        let lambda: PartitionTuple = lambda_text.parse()?;
        if lambda.is_zero() {
            return Err(CliError(
                "the zero tuple is excluded from the refined table".to_string(),
            ));
        }
        let value = table.get(&lambda)?;
        match args.format {
            Format::Table => println!("{value}"),
            Format::Json => print_json(&TableJson {
                entries: vec![entry_json(tuple_key_json(&lambda)?, &value)],
                max_part: Some(max_part),
                quiver: quiver.companion().to_vec(),
                weight_bound: args.weight,
            })?,
        }
        return Ok(());
    }
    match args.format {
        Format::Table => {
            for (t, value) in table.dense_entries() {
                let vector = MultiplicityMatrix::from_tuple(&t);
                println!("{t} | {vector} | {value}");
            }
        }
        Format::Json => {
            let entries = table
                .dense_entries()
                .into_iter()
                .map(|(t, value)| Ok(entry_json(tuple_key_json(&t)?, &value)))
                .collect::<Result<Vec<_>, CliError>>()?;
            print_json(&TableJson {
                entries,
                max_part: Some(max_part),
                quiver: quiver.companion().to_vec(),
                weight_bound: args.weight,
            })?;
        }
    }
    Ok(())
}

fn cmd_gamma_m(args: &GammaArgs) -> Result<(), CliError> {
    let quiver = args.quiver.load()?;
    let enlarged = quiver.gamma_m(args.m)?;
    println!("vertices: {}", enlarged.labels().join(" "));
    println!("{}", enlarged.render_matrix());
    Ok(())
}

fn cmd_tau_m(args: &TauArgs) -> Result<(), CliError> {
    let lambda: PartitionTuple = args.lambda.parse()?;
    let image = tau_m(&lambda, args.m)?;
    println!("{image}");
    Ok(())
}

fn cmd_series(args: &SeriesArgs) -> Result<(), CliError> {
    let quiver = args.quiver.load()?;
    let series = match args.kind {
        SeriesKind::P => p_series(&quiver, args.weight)?,
        SeriesKind::Q => q_series(
            &quiver,
            args.weight,
            Some(args.max_part.unwrap_or(args.weight)),
        )?,
    };
    print!("{}", series.dump());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let cfg = VerifyConfig {
        weight: args.weight,
        seed: args.seed,
    };
    let reports: Vec<CheckReport> = run_suite(&args.suite, &cfg)?;
    let mut all_pass = true;
    for report in &reports {
        println!("{report}");
        all_pass &= report.passed();
    }
    println!(
        "{}: {} checks, {}",
        args.suite,
        reports.len(),
        if all_pass { "all passed" } else { "FAILURES" }
    );
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&reports)?)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(all_pass)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Kac(args) => cmd_kac(args).map(|()| true),
        Command::Refined(args) => cmd_refined(args).map(|()| true),
        Command::GammaM(args) => cmd_gamma_m(args).map(|()| true),
        Command::TauM(args) => cmd_tau_m(args).map(|()| true),
        Command::Series(args) => cmd_series(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic from println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
