//! File formats, the end-to-end pipeline, the property suite and the
//! command-line surface of the `fibress` binary.

pub mod formats;
pub mod pipeline;
pub mod suite;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::gf2::TieBreak;
pub use pipeline::{load_bundle, run_loaded, run_pipeline, LoadedBundle, PipelineOptions, PipelineReport};
pub use suite::{run_property_suite, run_property_suite_with, SuiteReport};

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum TieBreakArg {
    #[default]
    Canonical,
    Reversed,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::Canonical => TieBreak::Canonical,
            TieBreakArg::Reversed => TieBreak::Reversed,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fibress", version, about = "Spectral sequences of fibre bundles from a GF(2) model of the structure group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline on a `.bundle` file and print the report.
    Run {
        bundle: PathBuf,
        #[arg(long)]
        deg_max: Option<usize>,
        #[arg(long)]
        arity_max: Option<usize>,
        /// Explicitly filtered total complex to compare pages against.
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        tie_break: TieBreakArg,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the randomized identity battery.
    Props {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Runs a parsed command; returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    match cli.command {
        Command::Run {
            bundle,
            deg_max,
            arity_max,
            oracle,
            tie_break,
            output,
        } => {
            let opts = PipelineOptions {
                deg_max,
                arity_max,
                oracle,
                tie_break: tie_break.into(),
            };
            match run_pipeline(&bundle, &opts) {
                Ok(report) => {
                    let text = report.text();
                    match output {
                        Some(p) => {
                            if let Err(e) = std::fs::write(&p, &text) {
                                eprintln!("error: {}: {e}", p.display());
                                return 2;
                            }
                        }
                        None => print!("{text}"),
                    }
                    if report.passed() {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Props { seed, trials } => {
            let report = run_property_suite(seed, trials);
            print!("{}", report.text());
            if report.passed() {
                0
            } else {
                1
            }
        }
    }
}
