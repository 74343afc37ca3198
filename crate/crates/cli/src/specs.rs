// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Compact string forms for initial profiles and truncation schedules.
//!
//! Profiles:
//!
//! * `zero`, `square-wave`
//! * `single-mode:K0:RE[:IM]`
//! * `random-sobolev:S:BANDWIDTH[:L2NORM]` (seed taken from the run)
//! * `explicit:RE[,IM];RE[,IM];...` (modes `0, 1, ..`)
//!
//! Schedules: `constant`, `linear-case`, `half-staircase`,
//! `full-staircase`, or `custom:N0,N1,...`.

use laxflow_core::{Complex64, InitialProfile, ScheduleKind};

/// Largest mode index or bandwidth accepted from a spec string.
pub const MAX_MODES: usize = 1 << 16;

fn float(field: &str, text: &str) -> Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("{field}: {text:?} is not a number"))?;
    if !v.is_finite() {
        return Err(format!("{field}: {text:?} is not finite"));
    }
    Ok(v)
}

fn complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = float("real part", parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(t) => float("imaginary part", t)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("{text:?} has more than two components"));
    }
    Ok(Complex64::new(re, im))
}

fn arity(parts: &[&str], min: usize, max: usize, usage: &str) -> Result<(), String> {
    if parts.len() < min || parts.len() > max {
        return Err(format!("expected {usage}"));
    }
    Ok(())
}

/// Parses a profile spec; `seed` feeds the random profile.
pub fn parse_profile(spec: &str, seed: u64) -> Result<InitialProfile, String> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    match parts[0] {
        "zero" => {
            arity(&parts, 1, 1, "zero")?;
            Ok(InitialProfile::zero())
        }
        "square-wave" => {
            arity(&parts, 1, 1, "square-wave")?;
            Ok(InitialProfile::SquareWave)
        }
        "single-mode" => {
            arity(&parts, 3, 4, "single-mode:K0:RE[:IM]")?;
            let k0: i64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| format!("mode {:?} is not an integer", parts[1]))?;
            if k0.unsigned_abs() as usize >= MAX_MODES {
                return Err(format!("mode {k0} exceeds {MAX_MODES}"));
            }
            let re = float("amplitude", parts[2])?;
            let im = parts.get(3).map(|t| float("amplitude", t)).transpose()?.unwrap_or(0.0);
            Ok(InitialProfile::SingleMode {
                k0,
                amplitude: Complex64::new(re, im),
            })
        }
        "random-sobolev" => {
            arity(&parts, 3, 4, "random-sobolev:S:BANDWIDTH[:L2NORM]")?;
            let s = float("s", parts[1])?;
            let bandwidth: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| format!("bandwidth {:?} is not a positive integer", parts[2]))?;
            if bandwidth == 0 || bandwidth > MAX_MODES {
                return Err(format!("bandwidth must lie in 1..={MAX_MODES}"));
            }
            let l2_norm = parts.get(3).map(|t| float("l2 norm", t)).transpose()?;
            if let Some(n) = l2_norm {
                if n < 0.0 {
                    return Err("l2 norm must be nonnegative".into());
                }
            }
            Ok(InitialProfile::RandomSobolev {
                s,
                seed,
                bandwidth,
                l2_norm,
            })
        }
        "explicit" => {
            arity(&parts, 2, 2, "explicit:RE[,IM];RE[,IM];...")?;
            let coeffs = parts[1].split(';').map(complex).collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() > MAX_MODES {
                return Err(format!("more than {MAX_MODES} modes"));
            }
            Ok(InitialProfile::Explicit { coeffs })
        }
        other => Err(format!(
            "unknown profile {other:?}; expected zero, square-wave, single-mode, random-sobolev or explicit"
        )),
    }
}

/// Parsed schedule spec: a kind plus explicit values for `custom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleSpec {
    pub kind: ScheduleKind,
    pub values: Option<Vec<i64>>,
}

pub fn parse_schedule(spec: &str) -> Result<ScheduleSpec, String> {
    let spec = spec.trim();
    let kind = |kind| Ok(ScheduleSpec { kind, values: None });
    match spec {
        "constant" => kind(ScheduleKind::Constant),
        "linear-case" => kind(ScheduleKind::LinearCase),
        "half-staircase" => kind(ScheduleKind::HalfStaircase),
        "full-staircase" => kind(ScheduleKind::FullStaircase),
        _ => match spec.strip_prefix("custom:") {
            Some(list) => {
                let values = list
                    .split(',')
                    .map(|v| {
                        let n: i64 = v
                            .trim()
                            .parse()
                            .map_err(|_| format!("schedule entry {v:?} is not an integer"))?;
                        if n > MAX_MODES as i64 {
                            return Err(format!("schedule entry {n} exceeds {MAX_MODES}"));
                        }
                        Ok(n)
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                Ok(ScheduleSpec {
                    kind: ScheduleKind::Custom,
                    values: Some(values),
                })
            }
            None => Err(format!(
                "unknown schedule {spec:?}; expected constant, linear-case, half-staircase, full-staircase or custom:N0,N1,..."
            )),
        },
    }
}
