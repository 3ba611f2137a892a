//! The `fahp` command line: solve study files, cross-check blocks against
//! the lattice oracle, screen survey data, and print the case-study
//! deviation report.
//!
//! [`run`] drives everything in-process and returns the exit code:
//! 0 ok, 1 internal, 2 input or validation, 3 solver or statistic
//! undefined, 4 oracle tolerance breach.

pub mod commands;
pub mod error;
pub mod results;
pub mod study;
pub mod survey_io;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;
use error::{EXIT_INPUT, EXIT_OK};

#[derive(Debug, Parser)]
#[command(
    name = "fahp",
    version,
    about = "Fuzzy AHP priorities by fuzzy preference programming"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve every block of a study file and rank the leaves.
    Solve {
        study: PathBuf,
        /// Write the results document (JSON) here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bisection tolerance on lambda.
        #[arg(long)]
        tol: Option<f64>,
        /// Leave the generation time out of the results document.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Solve the bundled case study and report deviations from the published values.
    ReproducePaper {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every block's solution with an exhaustive lattice search.
    Oracle {
        study: PathBuf,
        /// Lattice step (default 0.005, or 0.01 for 4-item blocks).
        #[arg(long)]
        step: Option<f64>,
    },
    /// Run Delphi rounds, one ratings file per round.
    Delphi {
        #[arg(required = true)]
        ratings: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.75)]
        threshold: f64,
        /// Use only the first k rounds.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Cronbach's alpha of a respondents x items response file.
    Alpha { responses: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut emit = |text: &str| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("cannot write output: {e}")))
    };
    match command {
        Command::Solve {
            study,
            out: dest,
            tol,
            no_timestamp,
        } => {
            let (_, text) = commands::cmd_solve(&commands::SolveArgs {
                study: &study,
                out: dest.as_deref(),
                tol,
                timestamp: !no_timestamp,
            })?;
            emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::ReproducePaper { out: dest } => {
            let (report, text) = commands::cmd_reproduce(dest.as_deref())?;
            emit(&text)?;
            if report.composition_holds {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Internal(
                    "composition identity does not hold".into(),
                ))
            }
        }
        Command::Oracle { study, step } => {
            let (rows, text) = commands::cmd_oracle(&study, step)?;
            emit(&text)?;
            let breaches: Vec<&str> = rows
                .iter()
                .filter(|r| !r.within)
                .map(|r| r.block.as_str())
                .collect();
            if breaches.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Breach(format!(
                    "oracle tolerance exceeded in block(s) {}",
                    breaches.join(", ")
                )))
            }
        }
        Command::Delphi {
            ratings,
            threshold,
            rounds,
        } => {
            let paths: Vec<&std::path::Path> = ratings.iter().map(|p| p.as_path()).collect();
            let (_, text) = survey_io::cmd_delphi(&paths, threshold, rounds)?;
            emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Alpha { responses } => {
            let (_, text) = survey_io::cmd_alpha(&responses)?;
            emit(&text)?;
            Ok(EXIT_OK)
        }
    }
}
