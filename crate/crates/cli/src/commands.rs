// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! The four experiments: evolve, talbot, convergence and diagnostics.

use std::time::Instant;

use laxflow_core::diagnostics::{
    bound_holds, fit_rate, non_increasing, run_bound_suite, run_convergence_study, run_propagator_sweep,
    run_resolvent_convergence, RateFit, StudySpec, SuiteOptions,
};
use laxflow_core::propagator::find_kappa_zero;
use laxflow_core::scheme::run_scheme_with_cache;
use laxflow_core::spectral::{synthesize, uniform_grid};
use laxflow_core::{
    make_schedule, Complex64, Equation, LaxPotential, PropagatorCache, Schedule, ScheduleKind, SchemeConfig,
    SchemeOutput,
};
use serde::Serialize;

use crate::config::{Command, Run, SCHEMA_VERSION};
use crate::output::{num, Check, OutputDir, RunManifest};
use crate::CliError;

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub manifest: RunManifest,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.manifest.all_pass
    }
}

/// Runs the command named in `run`.
pub fn execute(run: &Run) -> Result<Outcome, CliError> {
    match run.command {
        Command::Evolve => cmd_evolve(run),
        Command::Talbot => cmd_talbot(run),
        Command::Convergence => cmd_convergence(run),
        Command::Diagnostics => cmd_diagnostics(run),
    }
}

struct Report {
    checks: Vec<Check>,
    warnings: Vec<String>,
    decompositions: Option<usize>,
    kappa_zero: Option<laxflow_core::KappaZero>,
}

impl Report {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            warnings: Vec::new(),
            decompositions: None,
            kappa_zero: None,
        }
    }
}

fn finish(run: &Run, out: OutputDir, report: Report, start: Instant) -> Result<Outcome, CliError> {
    let all_pass = report.checks.iter().all(|c| c.pass);
    for c in report.checks.iter().filter(|c| !c.pass) {
        log::warn!("check failed: {} {:?} > {:?}", c.name, c.measured, c.limit);
    }
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        tool: "laxflow",
        version: env!("CARGO_PKG_VERSION"),
        command: run.command,
        config: run.echo.clone(),
        kappa_zero: report.kappa_zero,
        decompositions: report.decompositions,
        wall_seconds: start.elapsed().as_secs_f64(),
        warnings: report.warnings,
        checks: report.checks,
        all_pass,
        files: Vec::new(),
    };
    Ok(Outcome {
        manifest: out.finish(manifest)?,
    })
}

fn schedule_for(run: &Run, kind: ScheduleKind, k: usize) -> Result<Schedule, CliError> {
    let custom = if kind == ScheduleKind::Custom {
        run.schedule.values.as_deref()
    } else {
        None
    };
    Ok(make_schedule(kind, k, custom)?)
}

fn scheme_config(run: &Run, schedule: Schedule, times: Vec<f64>) -> SchemeConfig {
    let mut cfg = SchemeConfig::new(run.equation, schedule, times, run.profile.clone());
    cfg.override_focusing_threshold = run.override_focusing_threshold;
    cfg
}

/// Field values on the grid: real for Benjamin-Ono, complex otherwise.
fn profile_values(out: &SchemeOutput, index: usize, grid: &[f64]) -> Result<Vec<Complex64>, CliError> {
    let t = out.times()[index];
    Ok(if out.equation().is_bo() {
        synthesize(&out.real_spectrum(t)?, grid)
    } else {
        synthesize(&out.hardy(t)?, grid)
    })
}

/// Mass, norm and telescoping checks shared by evolve and talbot.
fn conservation_checks(run: &Run, label: &str, out: &SchemeOutput, potential: &LaxPotential, report: &mut Report) {
    let tol = &run.tolerances;
    let sched = out.schedule();
    let mut mass_err = 0.0f64;
    let mut hardy_excess = f64::NEG_INFINITY;
    let mut full_excess = f64::NEG_INFINITY;
    let mut telescoping = 0.0f64;
    let mut residual = 0.0f64;
    let (mut hardy_min, mut hardy_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let seed = out.seed_l2();
    for index in 0..out.times().len() {
        let t = out.times()[index];
        let coeffs = out.coefficients_at(index);
        mass_err = mass_err.max((coeffs[0] - potential.coeff(0)).norm());
        let h = out.hardy_l2(t).unwrap_or(0.0);
        hardy_min = hardy_min.min(h);
        hardy_max = hardy_max.max(h);
        hardy_excess = hardy_excess.max(h - seed);
        if out.equation().is_bo() {
            full_excess = full_excess.max(out.full_l2(t).unwrap_or(0.0) - out.initial_l2());
        }
        let r = out.final_iterate_norm(t).unwrap_or(0.0);
        telescoping = telescoping.max((r * r + h * h - seed * seed).abs());
        residual = residual.max(out.final_iterate_max_abs(t).unwrap_or(0.0));
    }
    if sched.keeps_zero_mode() {
        report
            .checks
            .push(Check::at_most(format!("{label}mass-conservation"), mass_err, tol.mass));
    }
    report.checks.push(Check::at_most(
        format!("{label}hardy-l2-non-increase"),
        hardy_excess.max(0.0),
        tol.l2,
    ));
    if out.equation().is_bo() {
        report.checks.push(Check::at_most(
            format!("{label}full-l2-non-increase"),
            full_excess.max(0.0),
            tol.l2,
        ));
    }
    report.checks.push(Check::at_most(
        format!("{label}telescoping-identity"),
        telescoping,
        tol.l2,
    ));
    if sched.l2_preserving() {
        report.checks.push(Check::at_most(
            format!("{label}final-iterate-vanishes"),
            residual,
            tol.l2,
        ));
        report.checks.push(Check::at_most(
            format!("{label}hardy-l2-constant"),
            hardy_max - hardy_min,
            tol.l2,
        ));
    }
}

/// `max_{t,k} |u_K(t,k) - e^{+-itk^2} u0(k)|`.
fn linear_phase_error(out: &SchemeOutput, potential: &LaxPotential) -> f64 {
    let alpha = out.equation().alpha();
    let mut worst = 0.0f64;
    for (index, &t) in out.times().iter().enumerate() {
        for (k, z) in out.coefficients_at(index).iter().enumerate() {
            let expect = potential.coeff(k as i64) * Complex64::cis(alpha * t * (k * k) as f64);
            worst = worst.max((z - expect).norm());
        }
    }
    worst
}

fn zero_mode_warning(schedule: &Schedule, report: &mut Report) {
    if !schedule.keeps_zero_mode() {
        report
            .warnings
            .push("n(0) = 0: the zero mode of the data is dropped and the mean is not preserved".into());
    }
}

/// Coefficients, spatial samples and conserved quantities on the given times.
pub fn cmd_evolve(run: &Run) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut times: Vec<f64> = run.times.iter().map(|t| t.value).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let schedule = schedule_for(run, run.schedule_kind(), run.k)?;
    let cfg = scheme_config(run, schedule.clone(), times.clone());
    let potential = cfg.potential()?;
    let cache = PropagatorCache::new();
    let out = run_scheme_with_cache(&cfg, &cache)?;

    let mut report = Report::new();
    report.decompositions = Some(cache.decompositions());
    zero_mode_warning(&schedule, &mut report);
    conservation_checks(run, "", &out, &potential, &mut report);
    if schedule.kind() == ScheduleKind::LinearCase {
        report.checks.push(Check::at_most(
            "linear-phase",
            linear_phase_error(&out, &potential),
            run.tolerances.linear,
        ));
    }

    let mut dir = OutputDir::create(&run.out)?;
    let bo = run.equation.is_bo();
    dir.write_csv(
        "coefficients.csv",
        &["t", "k", "re", "im"],
        times.iter().enumerate().flat_map(|(i, &t)| {
            out.coefficients_at(i)
                .iter()
                .enumerate()
                .map(move |(k, z)| vec![num(t), k.to_string(), num(z.re), num(z.im)])
                .collect::<Vec<_>>()
        }),
    )?;

    let grid = uniform_grid(2 * run.k);
    let mut rows = Vec::with_capacity(times.len() * grid.len());
    for (i, &t) in times.iter().enumerate() {
        let values = profile_values(&out, i, &grid)?;
        for (&x, z) in grid.iter().zip(values) {
            rows.push(if bo {
                vec![num(t), num(x), num(z.re)]
            } else {
                vec![num(t), num(x), num(z.re), num(z.im)]
            });
        }
    }
    let header: &[&str] = if bo {
        &["t", "x", "value"]
    } else {
        &["t", "x", "re", "im"]
    };
    dir.write_csv("samples.csv", header, rows)?;

    let mut rows = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        let mean = out.coefficients_at(i)[0];
        let full = if bo { num(out.full_l2(t)?) } else { String::new() };
        rows.push(vec![
            num(t),
            num(mean.re),
            num(mean.im),
            num(out.hardy_l2(t)?),
            full,
            num(out.final_iterate_norm(t)?),
        ]);
    }
    dir.write_csv(
        "conserved.csv",
        &["t", "mean_re", "mean_im", "hardy_l2", "full_l2", "final_iterate_l2"],
        rows,
    )?;
    finish(run, dir, report, start)
}

#[derive(Serialize)]
struct Panel {
    index: usize,
    time: String,
    t: f64,
    file: String,
    max_abs_difference: f64,
}

/// Paired nonlinear and linear profiles at each time, on `2K` points.
pub fn cmd_talbot(run: &Run) -> Result<Outcome, CliError> {
    let start = Instant::now();
    if !run.equation.is_bo() {
        return Err(crate::config::ConfigError::new("equation", "talbot panels are defined for bo only").into());
    }
    let times: Vec<f64> = run.times.iter().map(|t| t.value).collect();
    let cache = PropagatorCache::new();
    let nonlinear_sched = schedule_for(run, run.schedule_kind(), run.k)?;
    let nonlinear_cfg = scheme_config(run, nonlinear_sched.clone(), times.clone());
    let potential = nonlinear_cfg.potential()?;
    let nonlinear = run_scheme_with_cache(&nonlinear_cfg, &cache)?;
    let linear_cfg = scheme_config(
        run,
        make_schedule(ScheduleKind::LinearCase, run.k, None)?,
        times.clone(),
    );
    let linear_potential = linear_cfg.potential()?;
    let linear = run_scheme_with_cache(&linear_cfg, &cache)?;

    let mut report = Report::new();
    report.decompositions = Some(cache.decompositions());
    zero_mode_warning(&nonlinear_sched, &mut report);
    conservation_checks(run, "nonlinear-", &nonlinear, &potential, &mut report);
    report.checks.push(Check::at_most(
        "linear-phase",
        linear_phase_error(&linear, &linear_potential),
        run.tolerances.linear,
    ));

    let mut dir = OutputDir::create(&run.out)?;
    let grid = uniform_grid(2 * run.k);
    let mut panels = Vec::new();
    for (i, tp) in run.times.iter().enumerate() {
        let a = profile_values(&nonlinear, i, &grid)?;
        let b = profile_values(&linear, i, &grid)?;
        let max_abs_difference = a.iter().zip(&b).map(|(x, y)| (x.re - y.re).abs()).fold(0.0, f64::max);
        let file = format!("panel_{i}.csv");
        dir.write_csv(
            &file,
            &["x", "nonlinear", "linear"],
            grid.iter()
                .zip(a.iter().zip(&b))
                .map(|(&x, (p, q))| vec![num(x), num(p.re), num(q.re)]),
        )?;
        panels.push(Panel {
            index: i,
            time: tp.expr.clone(),
            t: tp.value,
            file,
            max_abs_difference,
        });
    }
    dir.write_csv(
        "panels.csv",
        &["panel", "time", "t", "file", "max_abs_difference"],
        panels.iter().map(|p| {
            vec![
                p.index.to_string(),
                p.time.clone(),
                num(p.t),
                p.file.clone(),
                num(p.max_abs_difference),
            ]
        }),
    )?;
    finish(run, dir, report, start)
}

#[derive(Serialize)]
struct ConvergenceSummary<'a> {
    equation: Equation,
    schedule: ScheduleKind,
    k_ref: usize,
    t_max: f64,
    grid_points: usize,
    errors_non_increasing: bool,
    errors_strictly_decreasing: bool,
    norm_gaps_bounded: bool,
    fit: &'a RateFit,
}

/// Error table against the `K_ref` reference and the fitted rate.
pub fn cmd_convergence(run: &Run) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let spec = StudySpec {
        equation: run.equation,
        u0: run.profile.clone(),
        ks: run.ks.clone(),
        schedule: run.schedule_kind(),
        t_max: run.t_max,
        grid_points: run.grid_points,
        k_ref: run.kref,
        override_focusing_threshold: run.override_focusing_threshold,
    };
    if spec.schedule == ScheduleKind::Custom {
        return Err(crate::config::ConfigError::new(
            "schedule",
            "convergence studies need a schedule kind, not a custom list",
        )
        .into());
    }
    let table = run_convergence_study(&spec)?;
    let fit = fit_rate(&table);

    let mut report = Report::new();
    report.decompositions =
        Some(table.reference_decompositions + table.rows.iter().map(|r| r.decompositions).sum::<usize>());
    report.checks.push(Check::flag(
        "errors-non-increasing",
        table.monotone(),
        "error(K_next) <= error(K) + 1e-12",
    ));
    report.checks.push(Check::flag(
        "norm-gap-bounded",
        table.norm_gaps_bounded(),
        "| ||u_K|| - ||u_ref|| | <= ||u_K - u_ref|| at every grid time",
    ));
    if let Some([lo, hi]) = run.tolerances.slope_window {
        let check = match fit.slope() {
            Some(s) => Check {
                name: "rate-window".into(),
                pass: (lo..=hi).contains(&s),
                measured: Some(s),
                limit: None,
                detail: Some(format!("slope in [{lo}, {hi}]")),
            },
            None => Check::flag("rate-window", false, "rate not applicable"),
        };
        report.checks.push(check);
    }

    let mut dir = OutputDir::create(&run.out)?;
    dir.write_csv(
        "convergence.csv",
        &["K", "schedule", "error", "norm_gap", "norm_gap_ok", "decompositions"],
        table.rows.iter().map(|r| {
            vec![
                r.k.to_string(),
                r.schedule.name().to_string(),
                num(r.error),
                num(r.norm_gap),
                r.norm_gap_ok.to_string(),
                r.decompositions.to_string(),
            ]
        }),
    )?;
    dir.write_json(
        "summary.json",
        &ConvergenceSummary {
            equation: table.equation,
            schedule: spec.schedule,
            k_ref: table.k_ref,
            t_max: table.t_max,
            grid_points: table.times.len(),
            errors_non_increasing: table.monotone(),
            errors_strictly_decreasing: table.strictly_decreasing(),
            norm_gaps_bounded: table.norm_gaps_bounded(),
            fit: &fit,
        },
    )?;
    for r in &table.rows {
        log::info!("K = {}: {:.2}s", r.k, r.wall_seconds);
    }
    finish(run, dir, report, start)
}

#[derive(Serialize)]
struct DiagnosticsSummary {
    equation: Equation,
    ambient: usize,
    kappa_zero: f64,
    bound_reports: usize,
    bound_failures: usize,
    resolvent_failures: usize,
    resolvent_non_increasing: bool,
    sweep_endpoint_pass: bool,
    sweep_within_factor_two: bool,
}

/// Operator bounds, resolvent rate and propagator sweep; exit 1 on any failure.
pub fn cmd_diagnostics(run: &Run) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let m = run.ambient;
    let probe = scheme_config(run, make_schedule(ScheduleKind::Constant, m, None)?, Vec::new());
    let potential = probe.potential()?;
    let ns: Vec<usize> = std::iter::successors(Some(1usize), |n| Some(n * 2))
        .take_while(|&n| n <= m)
        .collect();
    let options = SuiteOptions {
        bound_scale: run.bound_scale,
        seed: run.seed,
        ..SuiteOptions::default()
    };
    let suite = run_bound_suite(&potential, m, &run.kappas, &ns, options)?;
    let kappa_zero = find_kappa_zero(&potential, m)?;
    let mut resolvent = run_resolvent_convergence(&potential, m, kappa_zero.value)?;
    for r in &mut resolvent {
        r.bound *= run.bound_scale;
        r.pass = bound_holds(r.measured, r.bound);
    }
    let sweep = run_propagator_sweep(&potential, m, run.t_max, run.seed)?;

    let bound_failures = suite.failures().count();
    let resolvent_failures = resolvent.iter().filter(|r| !r.pass).count();
    let resolvent_measured: Vec<f64> = resolvent.iter().map(|r| r.measured).collect();
    let mut report = Report::new();
    report.kappa_zero = Some(kappa_zero);
    report.checks.push(Check::flag(
        "operator-bounds",
        bound_failures == 0,
        format!("{bound_failures} of {} reports fail", suite.reports.len()),
    ));
    report.checks.push(Check::flag(
        "resolvent-rate",
        resolvent_failures == 0,
        format!("{resolvent_failures} of {} rows fail", resolvent.len()),
    ));
    report.checks.push(Check::flag(
        "resolvent-non-increasing",
        non_increasing(&resolvent_measured),
        "measured(2n) <= measured(n) + 1e-12",
    ));
    report.checks.push(Check::flag(
        "propagator-sweep",
        sweep.pass(),
        "error at n = M/2 does not exceed error at n = 4",
    ));

    let mut dir = OutputDir::create(&run.out)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    let bound_rows = suite.reports.iter().chain(&resolvent).map(|r| {
        vec![
            r.kind.name().to_string(),
            r.equation.name().to_string(),
            r.ambient.to_string(),
            opt(r.n.map(|n| n.to_string())),
            opt(r.kappa.map(num)),
            num(r.measured),
            num(r.bound),
            r.pass.to_string(),
            r.note.unwrap_or("").to_string(),
        ]
    });
    dir.write_csv(
        "bounds.csv",
        &[
            "bound",
            "equation",
            "M",
            "n",
            "kappa",
            "measured",
            "bound_value",
            "pass",
            "note",
        ],
        bound_rows,
    )?;
    dir.write_csv(
        "sweep.csv",
        &["n", "sup_error"],
        sweep.rows.iter().map(|r| vec![r.n.to_string(), num(r.sup_error)]),
    )?;
    dir.write_json(
        "summary.json",
        &DiagnosticsSummary {
            equation: run.equation,
            ambient: m,
            kappa_zero: kappa_zero.value,
            bound_reports: suite.reports.len(),
            bound_failures,
            resolvent_failures,
            resolvent_non_increasing: non_increasing(&resolvent_measured),
            sweep_endpoint_pass: sweep.pass(),
            sweep_within_factor_two: sweep.within_factor_two(),
        },
    )?;
    finish(run, dir, report, start)
}
