//! `orthoshell`: closed-form shell solutions, effective properties and
//! finite-difference verification from a JSON configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthoshell::bvp::LoadKind;

mod commands;
mod config;

#[derive(Parser)]
#[command(name = "orthoshell", version, about = "Orthotropic unshearable cylindrical shells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate or convert the configured material.
    Material {
        action: MaterialAction,
        #[command(flatten)]
        common: Common,
    },
    /// Solve one of the four canonical problems and write a profile.
    Solve {
        problem: Problem,
        #[command(flatten)]
        common: Common,
    },
    /// Effective properties of the configured shell.
    Props {
        #[command(flatten)]
        common: Common,
    },
    /// Identify Kirchhoff-Love moduli from an experiment record.
    Identify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare closed-form and finite-difference solutions.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of profile stations.
    #[arg(long)]
    stations: Option<usize>,
    /// Use the Kirchhoff-Love theory.
    #[arg(long)]
    kl: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MaterialAction {
    Check,
    Convert,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Torsion,
    Traction,
    Pressure,
    Flexure,
}

impl From<Problem> for LoadKind {
    fn from(p: Problem) -> Self {
        match p {
            Problem::Torsion => LoadKind::Torsion,
            Problem::Traction => LoadKind::Traction,
            Problem::Pressure => LoadKind::Pressure,
            Problem::Flexure => LoadKind::RimFlexure,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Solver(m) | CliError::Verify(m) => m,
        }
    }
}

impl From<orthoshell::Error> for CliError {
    fn from(e: orthoshell::Error) -> Self {
        CliError::Solver(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let load = |c: &Common| config::load(&c.config, c.out.clone(), c.stations, c.kl);
    match cli.command {
        Command::Material { action: MaterialAction::Check, common } => commands::material_check(&load(&common)?),
        Command::Material { action: MaterialAction::Convert, common } => commands::material_convert(&load(&common)?),
        Command::Solve { problem, common } => commands::solve(&load(&common)?, problem.into()),
        Command::Props { common } => commands::props(&load(&common)?),
        Command::Identify { common } => commands::identify(&common.config, common.out.as_deref()),
        Command::Verify { common } => commands::verify(&load(&common)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = e.message().replace('\n', " ");
            eprintln!("error: {line}");
            ExitCode::from(e.code())
        }
    }
}
