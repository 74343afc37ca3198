// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Configuration, experiment orchestration and data emission for `laxflow`.

// `!(x >= a)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod expr;
pub mod output;
pub mod specs;

use std::path::Path;

use thiserror::Error;

pub use commands::{cmd_convergence, cmd_diagnostics, cmd_evolve, cmd_talbot, execute, Outcome};
pub use config::{Command, ConfigError, Run, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "LAXFLOW_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] laxflow_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// `2` for anything the user can fix in the config or data, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        use laxflow_core::Error as E;
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(e) => match e {
                E::InvalidKappa(_)
                | E::NotHermitianSymmetric { .. }
                | E::ComplexZeroMode(_)
                | E::ModeOutOfBand { .. }
                | E::NegativeHardyMode(_)
                | E::InvalidProfile(_)
                | E::ZeroBandwidth
                | E::EmptySchedule
                | E::ScheduleLength { .. }
                | E::NegativeScheduleEntry { .. }
                | E::FocusingThreshold { .. }
                | E::KappaSearchExhausted { .. }
                | E::AmbientTooSmall { .. }
                | E::Precondition(_) => EXIT_CONFIG,
                _ => EXIT_CHECK_FAILED,
            },
            CliError::Io { .. } | CliError::Output(_) => EXIT_CHECK_FAILED,
        }
    }
}

/// Caps rayon and the linear-algebra backend at `threads` workers; `0`
/// leaves the defaults.
pub fn configure_threads(threads: usize) {
    if threads == 0 {
        return;
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        log::debug!("thread pool already configured: {e}");
    }
    faer::set_global_parallelism(faer::Par::rayon(threads));
}

/// Reads [`THREADS_ENV`]; unset or empty means no cap.
pub fn threads_from_env() -> Result<usize, ConfigError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| ConfigError::new("LAXFLOW_THREADS", format!("{v:?} is not a thread count"))),
        _ => Ok(0),
    }
}
