//! Argument parsing.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::run::{Command, RunConfig};

/// Embed probabilistic models into complex quantum theory and check the result.
#[derive(Debug, Parser)]
#[command(name = "qembed", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Tolerance for every numerical check.
    #[arg(
        long,
        global = true,
        default_value_t = 1e-9,
        allow_negative_numbers = true
    )]
    pub tol: f64,
    /// Random samples per randomized check.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Build the standard embedding of a model.
    Embed { model: PathBuf },
    /// Verify an embedding and the structure of its projection.
    Verify { model: PathBuf },
    /// Restrict an embedding to the support of an interior state.
    Reduce { model: PathBuf },
    /// Choi matrix of the projection and its complete positivity.
    Choi { model: PathBuf },
    /// Classify the projection as a decoherence map.
    Classify { model: PathBuf },
    /// Decide whether a polyhedral model is classical.
    Decide { model: PathBuf },
    /// The gbit: Holevo map and the certificate that no linear psi exists.
    Demo,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, model_path) = match self.command {
            CliCommand::Embed { model } => (Command::Embed, Some(model)),
            CliCommand::Verify { model } => (Command::Verify, Some(model)),
            CliCommand::Reduce { model } => (Command::Reduce, Some(model)),
            CliCommand::Choi { model } => (Command::Choi, Some(model)),
            CliCommand::Classify { model } => (Command::Classify, Some(model)),
            CliCommand::Decide { model } => (Command::Decide, Some(model)),
            CliCommand::Demo => (Command::Demo, None),
        };
        RunConfig {
            command,
            model_path,
            tol: self.tol,
            trials: self.trials as usize,
            seed: self.seed,
            json_output: self.json,
            out_path: self.out,
        }
    }
}
