mod commands;
mod examples;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sweedler::semantics::observe::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "sweedler",
    version,
    about = "Exact evaluation and law checking for differential linear logic proofs"
)]
struct Cli {
    #[command(flatten)]
    run: RunFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct RunFlags {
    /// Seed for random trials and probe families. SWEEDLER_SEED takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Largest base dimension of random elements in the law suite.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub dim: u64,

    /// Trials per randomized law.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    /// Largest tangent count of a random ket.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub max_tangents: u64,

    /// Total tangents spent by nested probe kets when comparing or printing maps.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub probe_depth: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file and print its conclusion.
    Check { file: PathBuf },
    /// Evaluate the denotation of a proof.
    Eval(commands::EvalArgs),
    /// Evaluate the derivative of a proof of `!A ⊢ B` (same as `eval --derive`).
    Derive(commands::EvalArgs),
    /// Run the law suites.
    Axioms(commands::AxiomArgs),
    /// Reproduce the worked examples, or write the bundled proofs to a directory.
    Examples {
        /// Write each bundled proof as DIR/<name>.sexp instead.
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
    },
}

/// A failure with its exit code: 1 for failed checks, 2 for usage and I/O.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn check(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = cli.run;
    if let Ok(text) = std::env::var("SWEEDLER_SEED") {
        match text.trim().parse() {
            Ok(seed) => run.seed = seed,
            Err(_) => {
                eprintln!("error: SWEEDLER_SEED must be an unsigned integer, found {text:?}");
                return ExitCode::from(2);
            }
        }
    }
    let result = match cli.command {
        Command::Check { file } => commands::check(&file, &run),
        Command::Eval(args) => commands::eval(args, &run),
        Command::Derive(mut args) => {
            args.derive = true;
            commands::eval(args, &run)
        }
        Command::Axioms(args) => commands::axioms(&args, &run),
        Command::Examples { emit: Some(dir) } => examples::emit(&dir),
        Command::Examples { emit: None } => examples::run(&run),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            if code == 1 {
                print!("{message}");
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
