//! Library side of the `qflow` scenario driver. The binary is a thin
//! argument parser over [`run`]; everything else lives here so the
//! integration and acceptance suites can drive scenarios in-process.

pub mod config;
pub mod manifest;
pub mod scenarios;
pub mod svg;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{Scenario, ScenarioConfig};

/// Process-level outcome classes, mapped to exit codes by the binary:
/// 0 success, 2 configuration, 3 numerical, 4 failed `--check`.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("acceptance check failed: {0}")]
    CheckFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Numerical(_) => 3,
            CliError::CheckFailed(_) => 4,
        }
    }
}

/// Run one scenario end to end; returns the output directory.
pub fn run(config: &ScenarioConfig, check: bool) -> Result<PathBuf, CliError> {
    config.validate().map_err(CliError::Config)?;
    let out_dir = PathBuf::from(&config.outputs.directory);
    std::fs::create_dir_all(&out_dir)?;
    let mut sink = manifest::OutputSink::new(out_dir.clone(), config);
    let check_report = match config.scenario {
        Scenario::FreeGaussian => scenarios::free_gaussian::run(config, &mut sink)?,
        Scenario::Superposition => scenarios::superposition::run(config, &mut sink)?,
        Scenario::EffectiveWell => scenarios::effective_well::run(config, &mut sink)?,
        Scenario::Reaction2d => scenarios::reaction_2d::run(config, &mut sink)?,
    };
    sink.finalize(check, &check_report)?;
    if check {
        let failed: Vec<&str> = check_report
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        if !failed.is_empty() {
            return Err(CliError::CheckFailed(failed.join(", ")));
        }
    }
    Ok(out_dir)
}
