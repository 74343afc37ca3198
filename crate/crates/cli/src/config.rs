// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: the JSON schema, defaults per command, and validation.
//!
//! A [`RunConfig`] has every field optional. Files and flags are layered
//! with [`RunConfig::overlay`], then [`RunConfig::resolve`] fills the
//! command's defaults and validates everything before any computation. The
//! resolved config is echoed into the manifest with every field present, so
//! a manifest alone reproduces a run.

use std::fmt;
use std::path::PathBuf;

use laxflow_core::{Equation, InitialProfile, ScheduleKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::parse_time;
use crate::specs::{parse_profile, parse_schedule, ScheduleSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `K`, `K_ref` or `M` accepted; dense matrices grow as `M^2`.
pub const MAX_SIZE: usize = 4096;

pub const MAX_TIMES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("config field `{field}`: {message}")]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Evolve,
    Talbot,
    Convergence,
    Diagnostics,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Evolve => "evolve",
            Command::Talbot => "talbot",
            Command::Convergence => "convergence",
            Command::Diagnostics => "diagnostics",
        })
    }
}

/// Check tolerances; every field has a default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct Tolerances {
    /// `|u_K(t,0) - u0(0)|`.
    pub mass: f64,
    /// Norm bounds, telescoping, final iterate.
    pub l2: f64,
    /// Linear-case coefficients against the phase formula.
    pub linear: f64,
    /// Accepted window for the fitted convergence slope, if any.
    pub slope_window: Option<[f64; 2]>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            mass: 1e-12,
            l2: 1e-10,
            linear: 1e-10,
            slope_window: None,
        }
    }
}

/// One run, as written in JSON or assembled from flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<Equation>,
    /// Number of output frequencies `K`.
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    /// Explicit times as expressions; overrides `T` and `grid-points`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<String>>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t_max: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kref: Option<usize>,
    /// `K` values of a convergence study.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks: Option<Vec<usize>>,
    /// Ambient size `M` of the diagnostics.
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub override_focusing_threshold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    /// Harness self-test: multiplies every diagnostic bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_scale: Option<f64>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: RunConfig) -> Self {
        overlay_fields!(self, top; schema_version, command, equation, k, schedule, profile, times,
            t_max, grid_points, out, seed, kref, ks, ambient, kappas, override_focusing_threshold,
            tolerances, bound_scale);
        self
    }

    /// Fills the defaults of the command and validates every field.
    pub fn resolve(&self) -> Result<Run, ConfigError> {
        if let Some(v) = self.schema_version {
            if v != SCHEMA_VERSION {
                return Err(ConfigError::new(
                    "schema-version",
                    format!("unsupported version {v}, expected {SCHEMA_VERSION}"),
                ));
            }
        }
        let command = self.command.ok_or_else(|| {
            ConfigError::new(
                "command",
                "missing; expected evolve, talbot, convergence or diagnostics",
            )
        })?;
        let defaults = Defaults::for_command(command);

        let equation = self.equation.unwrap_or(Equation::Bo);
        if command == Command::Talbot && !equation.is_bo() {
            return Err(ConfigError::new("equation", "talbot panels are defined for bo only"));
        }
        let k = self.k.unwrap_or(defaults.k);
        check_size("K", k)?;
        let schedule_text = self.schedule.clone().unwrap_or_else(|| defaults.schedule.to_string());
        let schedule = parse_schedule(&schedule_text).map_err(|m| ConfigError::new("schedule", m))?;
        if let Some(values) = &schedule.values {
            if values.len() != k {
                return Err(ConfigError::new(
                    "schedule",
                    format!("custom schedule has {} entries but K = {k}", values.len()),
                ));
            }
            if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v < 0) {
                return Err(ConfigError::new("schedule", format!("entry n({i}) = {v} is negative")));
            }
        }
        let seed = self.seed.unwrap_or(0);
        let profile_text = self.profile.clone().unwrap_or_else(|| defaults.profile.to_string());
        let profile = parse_profile(&profile_text, seed).map_err(|m| ConfigError::new("profile", m))?;

        let t_text = self.t_max.clone().unwrap_or_else(|| defaults.t_max.to_string());
        let t_max = parse_time(&t_text).map_err(|e| ConfigError::new("T", e.to_string()))?;
        if !(t_max > 0.0) {
            return Err(ConfigError::new("T", format!("must be positive, got {t_max}")));
        }
        let grid_points = self.grid_points.unwrap_or(defaults.grid_points);
        if grid_points == 0 || grid_points > MAX_TIMES {
            return Err(ConfigError::new("grid-points", format!("must lie in 1..={MAX_TIMES}")));
        }
        let times_text = match (&self.times, defaults.times) {
            (Some(t), _) => Some(t.clone()),
            (None, Some(d)) => Some(d.iter().map(|s| s.to_string()).collect()),
            (None, None) => None,
        };
        let times = match &times_text {
            Some(list) => {
                if list.is_empty() || list.len() > MAX_TIMES {
                    return Err(ConfigError::new(
                        "times",
                        format!("need between 1 and {MAX_TIMES} times"),
                    ));
                }
                list.iter()
                    .map(|s| {
                        parse_time(s)
                            .map(|v| TimePoint {
                                expr: s.clone(),
                                value: v,
                            })
                            .map_err(|e| ConfigError::new("times", format!("{s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            None => laxflow_core::diagnostics::time_grid(t_max, grid_points)
                .into_iter()
                .map(|v| TimePoint {
                    expr: format!("{v:e}"),
                    value: v,
                })
                .collect(),
        };

        let kref = self.kref.unwrap_or(defaults.kref);
        check_size("kref", kref)?;
        let ks = self.ks.clone().unwrap_or_else(|| defaults.ks.to_vec());
        if command == Command::Convergence {
            if ks.is_empty() || ks.windows(2).any(|w| w[1] <= w[0]) || ks[0] == 0 {
                return Err(ConfigError::new(
                    "ks",
                    "must be a nonempty, strictly increasing list of positive sizes",
                ));
            }
            let max_k = *ks.last().unwrap();
            check_size("ks", max_k)?;
            if kref < 4 * max_k {
                return Err(ConfigError::new(
                    "kref",
                    format!("must be at least 4 max(ks) = {}", 4 * max_k),
                ));
            }
            if self.times.is_some() {
                return Err(ConfigError::new("times", "convergence studies use T and grid-points"));
            }
            if grid_points < 11 {
                return Err(ConfigError::new(
                    "grid-points",
                    "convergence studies need at least 11 points",
                ));
            }
        }
        let ambient = self.ambient.unwrap_or(defaults.ambient);
        if command == Command::Diagnostics && (ambient < 64 || !ambient.is_power_of_two() || ambient > MAX_SIZE) {
            return Err(ConfigError::new(
                "M",
                format!("must be a power of two in 64..={MAX_SIZE}"),
            ));
        }
        let kappas = self.kappas.clone().unwrap_or_else(|| defaults.kappas.to_vec());
        if let Some(k) = kappas.iter().find(|&&k| !(k >= 1.0) || !k.is_finite()) {
            return Err(ConfigError::new("kappas", format!("{k} is not a finite shift >= 1")));
        }
        let bound_scale = self.bound_scale.unwrap_or(1.0);
        if !bound_scale.is_finite() || bound_scale < 0.0 {
            return Err(ConfigError::new("bound-scale", "must be a finite nonnegative factor"));
        }
        let tolerances = self.tolerances.clone().unwrap_or_default();
        for (name, v) in [
            ("mass", tolerances.mass),
            ("l2", tolerances.l2),
            ("linear", tolerances.linear),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(ConfigError::new(
                    "tolerances",
                    format!("{name} must be finite and nonnegative"),
                ));
            }
        }
        let out = self.out.clone().unwrap_or_else(|| PathBuf::from(defaults.out));

        let echo = RunConfig {
            schema_version: Some(SCHEMA_VERSION),
            command: Some(command),
            equation: Some(equation),
            k: Some(k),
            schedule: Some(schedule_text),
            profile: Some(profile_text),
            times: times_text,
            t_max: Some(t_text),
            grid_points: Some(grid_points),
            out: Some(out.clone()),
            seed: Some(seed),
            kref: Some(kref),
            ks: Some(ks.clone()),
            ambient: Some(ambient),
            kappas: Some(kappas.clone()),
            override_focusing_threshold: Some(self.override_focusing_threshold.unwrap_or(false)),
            tolerances: Some(tolerances.clone()),
            bound_scale: Some(bound_scale),
        };
        Ok(Run {
            command,
            equation,
            k,
            schedule,
            profile,
            times,
            t_max,
            grid_points,
            out,
            seed,
            kref,
            ks,
            ambient,
            kappas,
            override_focusing_threshold: self.override_focusing_threshold.unwrap_or(false),
            tolerances,
            bound_scale,
            echo,
        })
    }
}

fn check_size(field: &'static str, v: usize) -> Result<(), ConfigError> {
    if v == 0 || v > MAX_SIZE {
        return Err(ConfigError::new(field, format!("must lie in 1..={MAX_SIZE}, got {v}")));
    }
    Ok(())
}

struct Defaults {
    k: usize,
    schedule: &'static str,
    profile: &'static str,
    times: Option<&'static [&'static str]>,
    t_max: &'static str,
    grid_points: usize,
    kref: usize,
    ks: &'static [usize],
    ambient: usize,
    kappas: &'static [f64],
    out: &'static str,
}

impl Defaults {
    fn for_command(command: Command) -> Self {
        let base = Defaults {
            k: 64,
            schedule: "constant",
            profile: "square-wave",
            times: None,
            t_max: "pi",
            grid_points: 41,
            kref: 1024,
            ks: &[16, 32, 64, 128],
            ambient: 128,
            kappas: &[1.0, 10.0, 100.0],
            out: "laxflow-out",
        };
        match command {
            Command::Evolve => base,
            Command::Talbot => Defaults {
                k: 1024,
                schedule: "half-staircase",
                times: Some(&["pi/2", "pi/3", "pi/6", "sqrt2*pi"]),
                ..base
            },
            Command::Convergence => base,
            Command::Diagnostics => Defaults {
                profile: "random-sobolev:0.5:128:1",
                t_max: "1",
                ..base
            },
        }
    }
}

/// A time with the expression it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct TimePoint {
    pub expr: String,
    pub value: f64,
}

/// A validated run with every default filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub command: Command,
    pub equation: Equation,
    pub k: usize,
    pub schedule: ScheduleSpec,
    pub profile: InitialProfile,
    pub times: Vec<TimePoint>,
    pub t_max: f64,
    pub grid_points: usize,
    pub out: PathBuf,
    pub seed: u64,
    pub kref: usize,
    pub ks: Vec<usize>,
    pub ambient: usize,
    pub kappas: Vec<f64>,
    pub override_focusing_threshold: bool,
    pub tolerances: Tolerances,
    pub bound_scale: f64,
    /// The config with every field explicit.
    pub echo: RunConfig,
}

impl Run {
    pub fn schedule_kind(&self) -> ScheduleKind {
        self.schedule.kind
    }
}
