//! Command-line front end.
//!
//! Every command writes its artifacts plus `manifest.json` into `--out`.
//! Exit codes: 0 success, 1 other failure, 2 usage, 3 config, 4 blowup.

mod manifest;
mod run;

pub use manifest::{config_hash, RunManifest};

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::calculus::CalculusError;
use crate::checks::CheckError;
use crate::lab::LabError;
use crate::norms::NormError;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_BLOWUP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "decaylab", version, about = "Decay exponent bootstrap and radial wave experiments")]
pub struct Cli {
    /// Directory for artifacts and the manifest.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exponent bootstrap and write trace files.
    Iterate {
        /// Decay rate of the background perturbation, `p/q`.
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value_t = Region::Both)]
        region: Region,
    },
    /// Evolve a configuration and store the trajectory.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Measure a stored trajectory.
    Measure {
        #[arg(long)]
        traj: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Run inequality sweeps on a stored trajectory.
    Check {
        #[arg(long)]
        traj: PathBuf,
        /// Comma-separated check names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        kinds: Vec<String>,
    },
    /// Simulate and fit once per value of one config key, in parallel.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `key=v1,v2,...`
        #[arg(long)]
        vary: String,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Region {
    Exterior,
    Interior,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Norms,
    Envelopes,
    Fit,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("blowup detected at t = {0}")]
    Blowup(f64),
    #[error("{0}")]
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Blowup(_) => EXIT_BLOWUP,
            Failure::Other(_) => EXIT_FAILURE,
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Config(m) => Failure::Config(m),
            LabError::BlowupDetected { time } => Failure::Blowup(time),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<NormError> for Failure {
    fn from(e: NormError) -> Self {
        match e {
            NormError::Lab(e) => e.into(),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<CalculusError> for Failure {
    fn from(e: CalculusError) -> Self {
        Failure::Other(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and writes
/// `manifest.json`. Help and version requests print and return 0.
pub fn dispatch(argv: &[String]) -> (i32, RunManifest) {
    let mut manifest = RunManifest::new(argv.to_vec());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => EXIT_USAGE,
            };
            if code != 0 {
                manifest.error = Some(e.render().to_string());
            }
            manifest.exit_code = code;
            return (code, manifest);
        }
    };
    let result = std::fs::create_dir_all(&cli.out)
        .map_err(Failure::from)
        .and_then(|_| run::execute(&cli, &mut manifest));
    if let Err(e) = result {
        if let Failure::Blowup(t) = e {
            manifest.blowup_time = Some(t);
        }
        manifest.exit_code = e.exit_code();
        manifest.error = Some(e.to_string());
    }
    if let Err(e) = std::fs::write(cli.out.join("manifest.json"), manifest.to_json()) {
        if manifest.exit_code == 0 {
            manifest.exit_code = EXIT_FAILURE;
            manifest.error = Some(format!("writing manifest: {e}"));
        }
    }
    (manifest.exit_code, manifest)
}
