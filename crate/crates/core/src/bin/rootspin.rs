use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use rootspin::analysis::{self, AnalysisReport, CountOptions, MethodChoice};
use rootspin::sigsum::{DEFAULT_BRUTE_LIMIT, DEFAULT_MITM_LIMIT};
use rootspin::spinor::DEFAULT_ORACLE_LIMIT;
use rootspin::{positive_roots, Error, Family, FamilyRank};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rootspin",
    version,
    about = "Invariant spinors on maximal flag manifolds"
)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "ROOTSPIN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Family letter: A, B, C, D, E, F or G.
    family: String,
    rank: usize,
}

impl Target {
    fn id(&self) -> Result<FamilyRank, Error> {
        let family: Family = self.family.parse()?;
        FamilyRank::new(family, self.rank)
    }
}

#[derive(Args)]
struct Counting {
    #[arg(long, default_value = "auto", value_parser = ["auto", "brute", "mitm"])]
    method: String,
    /// Count exactly only when r <= max-r.
    #[arg(long, default_value_t = DEFAULT_MITM_LIMIT)]
    max_r: usize,
    /// Largest r accepted by the brute-force counter.
    #[arg(long, default_value_t = DEFAULT_BRUTE_LIMIT)]
    brute_limit: usize,
}

impl Counting {
    fn options(&self) -> Result<CountOptions, Error> {
        Ok(CountOptions {
            method: self.method.parse::<MethodChoice>()?,
            max_r: self.max_r,
            brute_limit: self.brute_limit,
            ..CountOptions::default()
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the positive roots in scaled integer coordinates.
    Roots(Target),
    /// Obstruction, certificate and count for one family.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        counting: Counting,
        #[arg(long)]
        json: bool,
    },
    /// Run a counter directly.
    Count {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        counting: Counting,
    },
    /// Emit the verified certificate.
    Certify(Target),
    /// Invariant dimension from the spin representation model.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        max_r: usize,
    },
    /// Analyse every family in the results table.
    Table {
        #[command(flatten)]
        counting: Counting,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidFamily(_)
            | Error::InvalidRank { .. }
            | Error::InvalidInput(_)
            | Error::LengthMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. } => EXIT_INPUT,
            Error::ResourceLimit(_) => EXIT_LIMIT,
            Error::CountOverflow | Error::Invariant(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string(value).expect("JSON values serialise")
    );
}

fn limited(report: &AnalysisReport) -> Result<(), Failure> {
    match &report.resource_limited {
        Some(msg) => Err(Failure {
            code: EXIT_LIMIT,
            message: format!("{}: exact count skipped: {msg}", report.id),
        }),
        None => Ok(()),
    }
}

fn table_group(id: FamilyRank) -> usize {
    match (id.family(), id.rank()) {
        (Family::A, _) => 1,
        (Family::B, _) => 2,
        (Family::C, _) => 3,
        (Family::D, _) => 4,
        (Family::E, 6) => 5,
        (Family::E, 7) => 6,
        (Family::E, _) => 7,
        (Family::F, _) => 8,
        (Family::G, _) => 9,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Roots(target) => {
            print!("{}", positive_roots(target.id()?).to_text());
        }
        Command::Analyze {
            target,
            counting,
            json,
        } => {
            let report = analysis::analyze(target.id()?, &counting.options()?)?;
            if json {
                print_json(&report.to_json());
            } else {
                println!("{}", report.summary_line());
            }
            limited(&report)?;
        }
        Command::Count { target, counting } => {
            let system = positive_roots(target.id()?);
            let result = analysis::count(&system, &counting.options()?)?;
            print_json(&analysis::count_json(&system, &result));
        }
        Command::Certify(target) => {
            print_json(&analysis::certify_json(target.id()?)?);
        }
        Command::Oracle { target, max_r } => {
            print_json(&analysis::oracle_json(target.id()?, max_r)?);
        }
        Command::Table { counting, json } => {
            let opts = counting.options()?;
            let mut reports = Vec::new();
            for id in analysis::table_ids() {
                reports.push(analysis::analyze(id, &opts)?);
            }
            if json {
                let rows: Vec<Value> = reports.iter().map(AnalysisReport::to_json).collect();
                print_json(&Value::Array(rows));
            } else {
                let mut item = 0;
                for report in &reports {
                    let current = table_group(report.id);
                    if current != item {
                        item = current;
                        println!("({item})");
                    }
                    println!("    {}", report.summary_line());
                }
            }
            for report in &reports {
                limited(report)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
