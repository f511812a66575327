//! Command-line front end: catalog handling, batch verification and report
//! rendering.

mod commands;
mod config;
mod plot;
mod render;

use serde::Serialize;
use thiserror::Error;

pub use config::{Command, LambdaSpec, OutputFormat, RunConfig};
pub use plot::{emit_plot_data, t_grid, PlotRow};
pub use render::Table;

/// Exit status when every check passed.
pub const EXIT_OK: i32 = 0;
/// Some verification failed or raised a domain error.
pub const EXIT_FAILED: i32 = 1;
/// Bad flags or an unusable catalog.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("catalog error: {0}")]
    Catalog(shelstad_core::Error),
    #[error("{context}: {source}")]
    Domain {
        context: String,
        source: shelstad_core::Error,
    },
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Catalog(_) => EXIT_CONFIG,
            CliError::Domain { .. } => EXIT_FAILED,
        }
    }

    fn failure(&self) -> Failure {
        let kind = match self {
            CliError::Config(_) => "ConfigError".to_string(),
            CliError::Catalog(_) => "CatalogError".to_string(),
            CliError::Domain { source, .. } => error_kind(source).to_string(),
        };
        Failure {
            kind,
            context: match self {
                CliError::Domain { context, .. } => context.clone(),
                _ => String::new(),
            },
            message: self.to_string(),
        }
    }
}

/// Name of the error variant, as used in failure lists.
pub fn error_kind(e: &shelstad_core::Error) -> &'static str {
    use shelstad_core::Error::*;
    match e {
        DivisionByZero => "DivisionByZero",
        InvalidCartanData(_) => "InvalidCartanData",
        Unsupported(_) => "Unsupported",
        SingularWeight { .. } => "SingularWeight",
        NotDominant(_) => "NotDominant",
        NonIntegralWeight(_) => "NonIntegralWeight",
        SingularPoint { .. } => "SingularPoint",
        NotASubgroup(_) => "NotASubgroup",
        ExhaustedSearch { .. } => "ExhaustedSearch",
        RouteMismatch { .. } => "RouteMismatch",
        InvalidRealForm { .. } => "InvalidRealForm",
        DimensionMismatch { .. } => "DimensionMismatch",
        Parse(_) => "ParseError",
        Catalog(_) => "CatalogError",
    }
}

/// One entry of the machine-readable failure list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: String,
    /// Pair, parameter and point the failure belongs to, when known.
    pub context: String,
    pub message: String,
}

/// Result of [`run`]: the rendered report, the exit status, and every failure.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub failures: Vec<Failure>,
}

impl RunOutput {
    pub fn passed(&self) -> bool {
        self.status == EXIT_OK
    }

    /// The failure list as a JSON array.
    pub fn failures_json(&self) -> String {
        serde_json::to_string(&self.failures).expect("failures serialize")
    }
}

/// Executes one configuration. Exit status is 0 iff every check passed.
pub fn run(config: &RunConfig) -> RunOutput {
    let result = match config.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| commands::dispatch(config)),
            Err(e) => Err(CliError::Config(format!("cannot start {n} worker threads: {e}"))),
        },
        None => commands::dispatch(config),
    };
    match result {
        Ok(table) => {
            let status = if table.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            RunOutput {
                status,
                stdout: table.render(config.format, config.command),
                failures: table.failures,
            }
        }
        Err(e) => {
            let failure = e.failure();
            let mut table = Table::new(&[]);
            table.failures.push(failure.clone());
            RunOutput {
                status: e.status(),
                stdout: table.render(config.format, config.command),
                failures: vec![failure],
            }
        }
    }
}
