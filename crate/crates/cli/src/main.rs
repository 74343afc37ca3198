// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use laxflow_cli::config::{Command, RunConfig};
use laxflow_cli::output::load_config;
use laxflow_cli::{configure_threads, execute, threads_from_env, CliError, EXIT_CHECK_FAILED, EXIT_OK};
use laxflow_core::Equation;

/// Explicit finite-dimensional flows for the Benjamin-Ono and Calogero-Moser
/// derivative NLS equations on the torus.
#[derive(Parser)]
#[command(name = "laxflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Evolve one profile and write coefficients, samples and conserved quantities.
    Evolve(Flags),
    /// Nonlinear versus linear profiles at rational and irrational multiples of pi.
    Talbot(Flags),
    /// Error table against a reference run and the fitted rate.
    Convergence(Flags),
    /// Operator bounds, resolvent rate and propagator sweep.
    Diagnostics(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON config file or a previous run's manifest.json.
    #[arg(long)]
    config: Option<PathBuf>,
    /// bo, ccm-focusing or ccm-defocusing.
    #[arg(long)]
    equation: Option<String>,
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    profile: Option<String>,
    /// Comma-separated time expressions, e.g. `pi/2,sqrt2*pi`.
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<String>>,
    #[arg(long = "T")]
    t_max: Option<String>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    kref: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<usize>>,
    #[arg(long = "M")]
    ambient: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    kappas: Option<Vec<f64>>,
    #[arg(long)]
    override_focusing_threshold: bool,
    #[arg(long, hide = true)]
    bound_scale: Option<f64>,
}

fn parse_equation(s: &str) -> Result<Equation, CliError> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
        laxflow_cli::ConfigError::new(
            "equation",
            format!("{s:?}; expected bo, ccm-focusing or ccm-defocusing"),
        )
        .into()
    })
}

fn layered(command: Command, flags: Flags) -> Result<RunConfig, CliError> {
    let base = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            load_config(&text)?
        }
        None => RunConfig::default(),
    };
    let top = RunConfig {
        command: Some(command),
        equation: flags.equation.as_deref().map(parse_equation).transpose()?,
        k: flags.k,
        schedule: flags.schedule,
        profile: flags.profile,
        times: flags.times,
        t_max: flags.t_max,
        grid_points: flags.grid_points,
        out: flags.out,
        seed: flags.seed,
        kref: flags.kref,
        ks: flags.ks,
        ambient: flags.ambient,
        kappas: flags.kappas,
        override_focusing_threshold: flags.override_focusing_threshold.then_some(true),
        bound_scale: flags.bound_scale,
        ..RunConfig::default()
    };
    Ok(base.overlay(top))
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    configure_threads(threads_from_env()?);
    let (command, flags) = match cli.command {
        Sub::Evolve(f) => (Command::Evolve, f),
        Sub::Talbot(f) => (Command::Talbot, f),
        Sub::Convergence(f) => (Command::Convergence, f),
        Sub::Diagnostics(f) => (Command::Diagnostics, f),
    };
    let run = layered(command, flags)?.resolve()?;
    let outcome = execute(&run)?;
    for w in &outcome.manifest.warnings {
        log::warn!("{w}");
    }
    for c in &outcome.manifest.checks {
        println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
    }
    println!("wrote {}", run.out.display());
    Ok(outcome.all_pass())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::from(EXIT_OK as u8),
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
