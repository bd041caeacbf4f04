use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
mod input;

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "defring", version, about = "Groebner bases over localized integers and deformation-ring checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical strong Groebner basis of an ideal.
    Gb(RingArgs),
    /// Ideal operations.
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// Hilbert function and polynomial of the reduction mod l of a homogeneous ideal.
    Hilbert(HilbertArgs),
    /// Regenerates the catalogued presentations and solves the cycle identities.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Comma-separated variables, greatest first.
    #[arg(long)]
    pub vars: String,
    #[arg(long, default_value = "lex")]
    pub order: String,
    /// The prime of the coefficient ring.
    #[arg(long)]
    pub l: u64,
    /// Generators: a file with one per line, or a comma-separated list.
    #[arg(long)]
    pub gens: String,
}

#[derive(Subcommand, Debug)]
enum IdealCommand {
    /// Whether a polynomial lies in the ideal.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        poly: String,
    },
    /// Whether two ideals coincide.
    Equal {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        other: String,
    },
    /// Intersection of two ideals.
    Intersect {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        other: String,
    },
    /// Saturation by `l` or by a polynomial.
    Saturate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        by: String,
    },
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, default_value_t = defring::hilbert::DEFAULT_HORIZON)]
    pub horizon: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all`, `bm`, or a case id of the catalogue.
    #[arg(long, default_value = "all")]
    pub case: String,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Catalogue file replacing the bundled one.
    #[arg(long)]
    pub catalogue: Option<PathBuf>,
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gb(_) => "gb",
        Command::Ideal(IdealCommand::Member { .. }) => "ideal member",
        Command::Ideal(IdealCommand::Equal { .. }) => "ideal equal",
        Command::Ideal(IdealCommand::Intersect { .. }) => "ideal intersect",
        Command::Ideal(IdealCommand::Saturate { .. }) => "ideal saturate",
        Command::Hilbert(_) => "hilbert",
        Command::Verify(_) => "verify",
    }
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gb(a) => commands::gb(a),
        Command::Ideal(IdealCommand::Member { ring, poly }) => commands::member(ring, poly),
        Command::Ideal(IdealCommand::Equal { ring, other }) => commands::equal(ring, other),
        Command::Ideal(IdealCommand::Intersect { ring, other }) => commands::intersect(ring, other),
        Command::Ideal(IdealCommand::Saturate { ring, by }) => commands::saturate(ring, by),
        Command::Hilbert(a) => commands::hilbert(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let command = name_of(&cli.command);
    match run(&cli.command) {
        Ok(outcome) => {
            let status = if outcome.passed { 0 } else { 1 };
            let total_ms = start.elapsed().as_secs_f64() * 1e3;
            match cli.format {
                Format::Text => {
                    for line in &outcome.text {
                        println!("{line}");
                    }
                }
                Format::Json => {
                    let mut timings = outcome.timings.clone();
                    timings.insert("total_ms".into(), json!(total_ms));
                    let report = json!({
                        "schema": "defring-report/1",
                        "command": command,
                        "argv": argv,
                        "inputs": outcome.inputs,
                        "outputs": outcome.outputs,
                        "checks": outcome.checks,
                        "passed": outcome.passed,
                        "exit_status": status,
                        "timings": Value::Object(timings),
                    });
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                }
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("defring {command}: {e}");
            ExitCode::from(2)
        }
    }
}
