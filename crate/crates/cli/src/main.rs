mod commands;
mod fixtures;

use clap::{Args, Parser, Subcommand};
use pcross_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact computations with twisted partial actions and their crossed
/// products.
///
/// Exit codes: 0 success, 1 validation or claim failure, 2 usage, 3 parse.
#[derive(Parser)]
#[command(name = "pcross", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file (TOML).
    path: PathBuf,
    /// Warn about unknown fields instead of rejecting the file.
    #[arg(long)]
    lenient: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of the algebra, group, action and bimodule in a file.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Print the reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the crossed product of the file's action.
    Build {
        #[command(flatten)]
        input: Input,
        /// Write the crossed product as an instance file ("-" for stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Radical, center, Frobenius and symmetric forms, fixed ring.
    ///
    /// With no analysis flags every applicable analysis runs.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        radical: bool,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        frobenius: bool,
        #[arg(long)]
        symmetric: bool,
        #[arg(long = "fixed-ring")]
        fixed_ring: bool,
        /// Analyze the crossed product instead of the algebra in the file.
        #[arg(long)]
        crossed: bool,
        /// Print the analyses as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the enveloping action of the file's partial action and check
    /// the round trip.
    Globalize {
        #[command(flatten)]
        input: Input,
        /// Write the global action (restricted to the image of R) as an
        /// instance file ("-" for stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify the triangular representation of the crossed product.
    ///
    /// A file without a triangular block is extended diagonally to (R, R, R).
    Triangular {
        #[command(flatten)]
        input: Input,
    },
    /// Run a verification suite and stream its findings as JSON lines.
    Lab {
        /// Suite name.
        suite: String,
        #[arg(long, env = "PCROSS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random instance bounds: max algebra dimension, max group order.
        #[arg(long, value_name = "DIM,ORDER", value_parser = parse_bounds)]
        bounds: Option<(usize, usize)>,
        /// Only untwisted random instances.
        #[arg(long)]
        no_twist: bool,
        /// Field for random instances ("Q" or "GF(p)"); default per suite.
        #[arg(long)]
        field: Option<String>,
        /// Check this instance instead of fixtures and random ones.
        #[arg(long, value_name = "PATH")]
        instance: Option<PathBuf>,
        /// Write findings here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
    /// Print or write the bundled example instances.
    Fixture {
        /// Fixture name; omit with --list or --dir.
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Write every fixture into this directory.
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
    },
}

fn parse_bounds(s: &str) -> Result<(usize, usize), String> {
    let (d, o) = s.split_once(',').ok_or("expected DIM,ORDER")?;
    let d = d.trim().parse().map_err(|_| format!("bad dimension '{d}'"))?;
    let o = o.trim().parse().map_err(|_| format!("bad order '{o}'"))?;
    Ok((d, o))
}

/// How a command ended when it did not hit an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 3,
        Error::UnknownSuite { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input, json } => commands::validate(&input.path, !input.lenient, json),
        Command::Build { input, out } => commands::build(&input.path, !input.lenient, out.as_deref()),
        Command::Analyze {
            input,
            radical,
            center,
            frobenius,
            symmetric,
            fixed_ring,
            crossed,
            json,
        } => {
            let any = radical || center || frobenius || symmetric || fixed_ring;
            let which = commands::Analyses {
                radical: radical || !any,
                center: center || !any,
                frobenius: frobenius || !any,
                symmetric: symmetric || !any,
                fixed_ring,
                fixed_ring_if_possible: !any,
            };
            commands::analyze(&input.path, !input.lenient, which, crossed, json)
        }
        Command::Globalize { input, out } => commands::globalize(&input.path, !input.lenient, out.as_deref()),
        Command::Triangular { input } => commands::triangular(&input.path, !input.lenient),
        Command::Lab {
            suite,
            seed,
            trials,
            bounds,
            no_twist,
            field,
            instance,
            out,
            lenient,
        } => commands::lab(commands::LabArgs {
            suite,
            seed,
            trials,
            bounds,
            twist: !no_twist,
            field,
            instance,
            out,
            strict: !lenient,
        }),
        Command::Fixture { name, list, dir } => fixtures::command(name.as_deref(), list, dir.as_deref()),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
