// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Operator-bound suites and convergence studies.
//!
//! Every operator inequality is checked at the Galerkin level: multiplication
//! by `u` becomes the finite matrix `U_{jl} = u(j - l)` on frequencies
//! `[0, M)`, and norms are largest singular values. Compression can only
//! shrink an operator norm, so the continuum upper bounds stay valid.

use std::time::Instant;

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lax::{multiplication_matrix, Equation, LaxPotential};
use crate::propagator::{find_kappa_zero, operator_norm, KappaZero, PropagatorCache};
use crate::scheme::{make_schedule, run_scheme_with_cache, ScheduleKind, SchemeConfig, SchemeOutput};
use crate::spectral::{hs_kappa_norm, HardyVector, InitialProfile, NormSpec};

/// Relative slack in `measured <= bound + slack * (1 + bound)`.
pub const BOUND_SLACK: f64 = 1e-10;

/// Extra room below `-kappa_0` allowed for the lowest eigenvalue.
pub const SEMI_BOUND_SLACK: f64 = 1e-8;

/// Shift at which the Gram perturbation must have decayed.
pub const GRAM_DECAY_KAPPA: f64 = 1e4;

/// Fraction of `2 ||u||^2` the Gram perturbation must reach by [`GRAM_DECAY_KAPPA`].
pub const GRAM_DECAY_FRACTION: f64 = 0.1;

/// Fitted slopes above this are reported as non-convergent.
pub const NONCONVERGENT_SLOPE: f64 = -0.1;

/// Tolerance for monotonicity checks between consecutive rows.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `||U P_n R0|| <= sqrt(3) kappa^{-1/2} ||u||`.
    MultiplierResolvent,
    /// `||U P_n U^H P_n R0|| <= 2 ||u||^2` (Hardy data).
    GramResolvent,
    /// `||U P_M U^H P_M R0(1e4)|| <= 0.2 ||u||^2` (Hardy data).
    GramDecay,
    /// `||(P - P_n) R0|| <= 1/n`.
    TailResolvent,
    /// `| ||(P - P_n) R0|| - 1/(n + kappa) | <= 1e-10`.
    TailResolventExact,
    /// `||(1/(l+1)) sum_{m<=l} |u(m)| ||_2 <= 2 ||u||`.
    HardyAverage,
    /// `||(L_n + kappa0) f|| <= 3/2 ||f||_{H^1}`.
    GraphNormUpper,
    /// `||f||_{H^1} <= 2 ||(L_n + kappa0) f||`, reported as the ratio.
    GraphNormLower,
    /// `||R_n f|| <= 2 ||f||_{H^-1}`.
    ResolventNormUpper,
    /// `||f||_{H^-1} <= 3/2 ||R_n f||`, reported as the ratio.
    ResolventNormLower,
    /// `-min spec(L_n) <= kappa0`.
    SemiBounded,
    /// `||R_n - R_M|| <= c / n`.
    ResolventRate,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::MultiplierResolvent => "multiplier-resolvent",
            BoundKind::GramResolvent => "gram-resolvent",
            BoundKind::GramDecay => "gram-decay",
            BoundKind::TailResolvent => "tail-resolvent",
            BoundKind::TailResolventExact => "tail-resolvent-exact",
            BoundKind::HardyAverage => "hardy-average",
            BoundKind::GraphNormUpper => "graph-norm-upper",
            BoundKind::GraphNormLower => "graph-norm-lower",
            BoundKind::ResolventNormUpper => "resolvent-norm-upper",
            BoundKind::ResolventNormLower => "resolvent-norm-lower",
            BoundKind::SemiBounded => "semi-bounded",
            BoundKind::ResolventRate => "resolvent-rate",
        }
    }
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub equation: Equation,
    pub ambient: usize,
    pub n: Option<usize>,
    pub kappa: Option<f64>,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl BoundReport {
    pub fn new(
        kind: BoundKind,
        equation: Equation,
        ambient: usize,
        n: Option<usize>,
        kappa: Option<f64>,
        measured: f64,
        bound: f64,
    ) -> Self {
        Self {
            kind,
            equation,
            ambient,
            n,
            kappa,
            measured,
            bound,
            pass: bound_holds(measured, bound),
            note: None,
        }
    }

    fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    fn sort_key(&self) -> (BoundKind, usize, u64) {
        (
            self.kind,
            self.n.unwrap_or(0),
            self.kappa.map(f64::to_bits).unwrap_or(0),
        )
    }
}

/// `measured <= bound + 1e-10 (1 + bound)`.
pub fn bound_holds(measured: f64, bound: f64) -> bool {
    measured <= bound + BOUND_SLACK * (1.0 + bound.abs())
}

/// Knobs for [`run_bound_suite`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Multiplies every bound before comparison; `1.0` in production. The
    /// harness self-test sets it to `0.0`.
    pub bound_scale: f64,
    /// Random test vectors for the norm sandwiches.
    pub sandwich_vectors: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            bound_scale: 1.0,
            sandwich_vectors: 200,
            seed: 0,
        }
    }
}

/// Reports from [`run_bound_suite`], sorted by bound, then `n`, then `kappa`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundSuite {
    pub kappa_zero: KappaZero,
    pub reports: Vec<BoundReport>,
}

impl BoundSuite {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.iter().filter(|r| !r.pass)
    }
}

fn scale_columns(m: &Mat<Complex64>, kappa: f64) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |j, l| m[(j, l)] / (l as f64 + kappa))
}

fn random_columns(rows: usize, cols: usize, seed: u64) -> Mat<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Mat::<Complex64>::zeros(rows, cols);
    for c in 0..cols {
        for r in 0..rows {
            m[(r, c)] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    m
}

fn column(m: &Mat<Complex64>, c: usize) -> HardyVector {
    HardyVector::new((0..m.nrows()).map(|r| m[(r, c)]).collect())
}

fn column_norm(m: &Mat<Complex64>, c: usize) -> f64 {
    (0..m.nrows()).map(|r| m[(r, c)].norm_sqr()).sum::<f64>().sqrt()
}

/// Evaluates the operator inequalities for `potential` at ambient size `M`.
///
/// Per `(n, kappa)`: the multiplier bound, the Gram bound (Hardy data) and
/// the projection tail. Per `n` at `kappa = kappa_0`: semi-boundedness and
/// the graph-norm and resolvent-norm sandwiches over random vectors. Once:
/// the Hardy average and (Hardy data) the Gram decay at large shift.
pub fn run_bound_suite(
    potential: &LaxPotential,
    ambient: usize,
    kappas: &[f64],
    ns: &[usize],
    options: SuiteOptions,
) -> Result<BoundSuite> {
    if ambient < 8 {
        return Err(Error::Precondition(format!("bound suite needs M >= 8, got {ambient}")));
    }
    if let Some(&k) = kappas.iter().find(|&&k| !(k >= 1.0)) {
        return Err(Error::InvalidKappa(k));
    }
    if let Some(&n) = ns.iter().find(|&&n| n == 0 || n > ambient) {
        return Err(Error::TruncationExceedsAmbient { n, ambient });
    }
    let equation = potential.equation();
    let norm = potential.l2_norm();
    let scale = options.bound_scale;
    let report = |kind, n, kappa, measured, bound: f64| {
        BoundReport::new(kind, equation, ambient, n, kappa, measured, bound * scale)
    };
    let u = multiplication_matrix(|k| potential.coeff(k), ambient);
    let mut reports = Vec::new();

    for &n in ns {
        let u_cols = u.as_ref().submatrix(0, 0, ambient, n).to_owned();
        let gram = (!equation.is_bo()).then(|| {
            let inner = u.as_ref().submatrix(0, 0, n, n).adjoint().to_owned();
            &u_cols * &inner
        });
        for &kappa in kappas {
            let measured = operator_norm(scale_columns(&u_cols, kappa).as_ref())?;
            let bound = 3f64.sqrt() / kappa.sqrt() * norm;
            reports.push(report(
                BoundKind::MultiplierResolvent,
                Some(n),
                Some(kappa),
                measured,
                bound,
            ));

            if let Some(g) = &gram {
                let measured = operator_norm(scale_columns(g, kappa).as_ref())?;
                reports.push(report(
                    BoundKind::GramResolvent,
                    Some(n),
                    Some(kappa),
                    measured,
                    2.0 * norm * norm,
                ));
            }

            // (P - P_n) R0 on the doubled window [0, 2M), so that n = M still
            // has a nonzero tail
            let measured = (n..2 * ambient).map(|k| 1.0 / (k as f64 + kappa)).fold(0.0, f64::max);
            reports.push(report(
                BoundKind::TailResolvent,
                Some(n),
                Some(kappa),
                measured,
                1.0 / n as f64,
            ));
            reports.push(report(
                BoundKind::TailResolventExact,
                Some(n),
                Some(kappa),
                (measured - 1.0 / (n as f64 + kappa)).abs(),
                BOUND_SLACK,
            ));
        }
    }

    let hardy = potential.hardy_part().resized(ambient);
    let mut running = 0.0;
    let averages: f64 = hardy
        .coeffs()
        .iter()
        .enumerate()
        .map(|(l, z)| {
            running += z.norm();
            (running / (l + 1) as f64).powi(2)
        })
        .sum();
    reports.push(report(BoundKind::HardyAverage, None, None, averages.sqrt(), 2.0 * norm));

    if !equation.is_bo() {
        let full = &u * u.adjoint();
        let measured = operator_norm(scale_columns(&full, GRAM_DECAY_KAPPA).as_ref())?;
        reports.push(report(
            BoundKind::GramDecay,
            Some(ambient),
            Some(GRAM_DECAY_KAPPA),
            measured,
            GRAM_DECAY_FRACTION * 2.0 * norm * norm,
        ));
    }

    let kappa_zero = find_kappa_zero(potential, ambient)?;
    let k0 = kappa_zero.value;
    let vectors = random_columns(ambient, options.sandwich_vectors, options.seed);
    let h1 = NormSpec::new(1.0, k0)?;
    let h_minus1 = NormSpec::new(-1.0, k0)?;
    let cache = PropagatorCache::new();
    for &n in ns {
        let lax = potential.build(n, ambient)?;
        let eig = cache.get_or_build_for(potential, n, ambient)?;
        reports.push(report(
            BoundKind::SemiBounded,
            Some(n),
            Some(k0),
            -eig.min_eigenvalue(),
            k0 + SEMI_BOUND_SLACK,
        ));

        let shifted = Mat::from_fn(ambient, ambient, |j, l| {
            lax.entries()[(j, l)]
                + if j == l {
                    Complex64::new(k0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
        });
        let images = &shifted * &vectors;
        let resolved = &eig.resolvent(k0)? * &vectors;
        let (mut g_up, mut g_low, mut r_up, mut r_low) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for c in 0..vectors.ncols() {
            let f = column(&vectors, c);
            let f_h1 = hs_kappa_norm(&f, h1);
            let f_hm1 = hs_kappa_norm(&f, h_minus1);
            let image = column_norm(&images, c);
            let resolved = column_norm(&resolved, c);
            g_up = g_up.max(image / f_h1);
            g_low = g_low.max(f_h1 / image);
            r_up = r_up.max(resolved / f_hm1);
            r_low = r_low.max(f_hm1 / resolved);
        }
        reports.push(report(BoundKind::GraphNormUpper, Some(n), Some(k0), g_up, 1.5));
        reports.push(report(BoundKind::GraphNormLower, Some(n), Some(k0), g_low, 2.0));
        reports.push(report(BoundKind::ResolventNormUpper, Some(n), Some(k0), r_up, 2.0));
        reports.push(report(BoundKind::ResolventNormLower, Some(n), Some(k0), r_low, 1.5));
    }

    reports.sort_by_key(|r| r.sort_key());
    Ok(BoundSuite { kappa_zero, reports })
}

/// `||R_n(kappa) - R_M(kappa)||` against its `1/n` bound for
/// `n = 2, 4, .., M/2`: `(8 sqrt(3) / n) kappa^{-1/2} ||u||` for
/// Benjamin-Ono, `16 ||u||^2 / n` for Calogero-Moser.
pub fn run_resolvent_convergence(potential: &LaxPotential, ambient: usize, kappa: f64) -> Result<Vec<BoundReport>> {
    if ambient < 32 || !ambient.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "resolvent convergence needs M a power of two >= 32, got {ambient}"
        )));
    }
    let kappa_zero = find_kappa_zero(potential, ambient)?;
    if !(kappa >= kappa_zero.value) {
        return Err(Error::Precondition(format!(
            "kappa = {kappa} is below kappa_0 = {}",
            kappa_zero.value
        )));
    }
    let equation = potential.equation();
    let norm = potential.l2_norm();
    let cache = PropagatorCache::new();
    let reference = cache.get_or_build_for(potential, ambient, ambient)?.resolvent(kappa)?;
    let mut out = Vec::new();
    let mut n = 2;
    while n <= ambient / 2 {
        let r_n = cache.get_or_build_for(potential, n, ambient)?.resolvent(kappa)?;
        let measured = operator_norm((&r_n - &reference).as_ref())?;
        let report = if equation.is_bo() {
            let bound = 8.0 * 3f64.sqrt() / n as f64 / kappa.sqrt() * norm;
            BoundReport::new(
                BoundKind::ResolventRate,
                equation,
                ambient,
                Some(n),
                Some(kappa),
                measured,
                bound,
            )
        } else {
            let bound = 16.0 * norm * norm / n as f64;
            BoundReport::new(
                BoundKind::ResolventRate,
                equation,
                ambient,
                Some(n),
                Some(kappa),
                measured,
                bound,
            )
            .with_note("derived constant")
        };
        out.push(report);
        n *= 2;
    }
    Ok(out)
}

/// `measured(2n) <= measured(n) + 1e-12` along a doubling sequence.
pub fn non_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK)
}

/// One `K` of a convergence study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub schedule: ScheduleKind,
    /// `max_t ||u_K(t) - u_ref(t)||`.
    pub error: f64,
    /// `max_t | ||u_K(t)|| - ||u_ref(t)|| |`.
    pub norm_gap: f64,
    /// Whether the norm gap is below the error at every grid time.
    pub norm_gap_ok: bool,
    pub wall_seconds: f64,
    pub decompositions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub equation: Equation,
    pub k_ref: usize,
    pub t_max: f64,
    pub times: Vec<f64>,
    pub reference_seconds: f64,
    pub reference_decompositions: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error).collect()
    }

    /// `error(K_{i+1}) <= error(K_i) + 1e-12`.
    pub fn monotone(&self) -> bool {
        non_increasing(&self.errors())
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].error < w[0].error)
    }

    pub fn norm_gaps_bounded(&self) -> bool {
        self.rows.iter().all(|r| r.norm_gap_ok)
    }
}

/// Parameters of [`run_convergence_study`].
#[derive(Clone, Debug, PartialEq)]
pub struct StudySpec {
    pub equation: Equation,
    pub u0: InitialProfile,
    pub ks: Vec<usize>,
    pub schedule: ScheduleKind,
    pub t_max: f64,
    pub grid_points: usize,
    pub k_ref: usize,
    pub override_focusing_threshold: bool,
}

/// `g` uniform times on `[-T, T]`, endpoints included. The midpoint is
/// exactly `0` for odd `g`.
pub fn time_grid(t_max: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![0.0; points];
    }
    let last = (points - 1) as f64;
    (0..points).map(|i| t_max * (2.0 * i as f64 - last) / last).collect()
}

fn field_norm(equation: Equation, coeffs: impl Iterator<Item = Complex64>) -> f64 {
    let mut total = 0.0;
    for (k, z) in coeffs.enumerate() {
        let weight = if equation.is_bo() && k > 0 { 2.0 } else { 1.0 };
        total += weight * z.norm_sqr();
    }
    total.sqrt()
}

fn difference_norm(equation: Equation, a: &[Complex64], b: &[Complex64]) -> f64 {
    let len = a.len().max(b.len());
    let zero = Complex64::new(0.0, 0.0);
    field_norm(
        equation,
        (0..len).map(|k| a.get(k).copied().unwrap_or(zero) - b.get(k).copied().unwrap_or(zero)),
    )
}

fn study_run(spec: &StudySpec, kind: ScheduleKind, k: usize, times: &[f64]) -> Result<(SchemeOutput, f64)> {
    let start = Instant::now();
    let mut cfg = SchemeConfig::new(
        spec.equation,
        make_schedule(kind, k, None)?,
        times.to_vec(),
        spec.u0.clone(),
    );
    cfg.override_focusing_threshold = spec.override_focusing_threshold;
    let out = run_scheme_with_cache(&cfg, &PropagatorCache::new())?;
    Ok((out, start.elapsed().as_secs_f64()))
}

/// Errors of `u_K` against the run at `K_ref` with the same schedule kind,
/// the proxy for the exact solution, over a uniform grid on `[-T, T]`.
pub fn run_convergence_study(spec: &StudySpec) -> Result<ConvergenceTable> {
    let max_k = spec.ks.iter().copied().max().ok_or(Error::EmptySchedule)?;
    if spec.k_ref < 4 * max_k {
        return Err(Error::Precondition(format!(
            "K_ref = {} must be at least 4 max K = {}",
            spec.k_ref,
            4 * max_k
        )));
    }
    if spec.grid_points < 11 {
        return Err(Error::Precondition(format!(
            "convergence study needs at least 11 grid points, got {}",
            spec.grid_points
        )));
    }
    if spec.ks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("K values must be strictly increasing".into()));
    }
    let times = time_grid(spec.t_max, spec.grid_points);
    let (reference, reference_seconds) = study_run(spec, spec.schedule, spec.k_ref, &times)?;
    let eq = spec.equation;

    let mut rows = Vec::with_capacity(spec.ks.len());
    for &k in &spec.ks {
        let (out, wall_seconds) = study_run(spec, spec.schedule, k, &times)?;
        let mut error = 0.0f64;
        let mut norm_gap = 0.0f64;
        let mut norm_gap_ok = true;
        for c in 0..times.len() {
            let a = out.coefficients_at(c);
            let b = reference.coefficients_at(c);
            let diff = difference_norm(eq, a, b);
            let gap = (field_norm(eq, a.iter().copied()) - field_norm(eq, b.iter().copied())).abs();
            error = error.max(diff);
            norm_gap = norm_gap.max(gap);
            norm_gap_ok &= gap <= diff + MONOTONE_SLACK;
        }
        log::info!("K = {k}: error {error:.3e} in {wall_seconds:.2}s");
        rows.push(ConvergenceRow {
            k,
            schedule: spec.schedule,
            error,
            norm_gap,
            norm_gap_ok,
            wall_seconds,
            decompositions: out.decompositions(),
        });
    }
    Ok(ConvergenceTable {
        equation: eq,
        k_ref: spec.k_ref,
        t_max: spec.t_max,
        times,
        reference_seconds,
        reference_decompositions: reference.decompositions(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RateFit {
    Fitted {
        slope: f64,
        intercept: f64,
        converging: bool,
    },
    NotApplicable {
        reason: String,
    },
}

impl RateFit {
    pub fn slope(&self) -> Option<f64> {
        match self {
            RateFit::Fitted { slope, .. } => Some(*slope),
            RateFit::NotApplicable { .. } => None,
        }
    }
}

/// Least-squares slope of `log(error)` against `log(K)`.
pub fn fit_rate(table: &ConvergenceTable) -> RateFit {
    fit_points(&table.rows.iter().map(|r| (r.k as f64, r.error)).collect::<Vec<_>>())
}

/// [`fit_rate`] on raw `(K, error)` pairs.
pub fn fit_points(points: &[(f64, f64)]) -> RateFit {
    if points.len() < 4 {
        return RateFit::NotApplicable {
            reason: format!("need at least 4 rows, got {}", points.len()),
        };
    }
    if points.iter().any(|&(_, e)| !(e > 0.0)) {
        return RateFit::NotApplicable {
            reason: "errors must all be nonzero".into(),
        };
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    RateFit::Fitted {
        slope,
        intercept: my - slope * mx,
        converging: slope < NONCONVERGENT_SLOPE,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    /// `max_{t, f} ||(e^{itL_n} - e^{itL_M}) f||`.
    pub sup_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropagatorSweep {
    pub equation: Equation,
    pub ambient: usize,
    pub t_max: f64,
    pub rows: Vec<SweepRow>,
}

impl PropagatorSweep {
    /// The largest `n` does no worse than the smallest.
    pub fn pass(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => b.sup_error <= a.sup_error + MONOTONE_SLACK,
            _ => true,
        }
    }

    /// `error(2n) <= 2 error(n)` for consecutive rows.
    pub fn within_factor_two(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].sup_error <= 2.0 * w[0].sup_error + MONOTONE_SLACK)
    }
}

/// Number of random members of the sweep family; the other eight are `e_0..e_7`.
pub const SWEEP_RANDOM_VECTORS: usize = 8;
pub const SWEEP_TIME_POINTS: usize = 21;

/// The test family: `e_0..e_7` and seeded smooth random unit vectors with
/// coefficients decaying like `(1 + k)^{-2}`.
pub fn sweep_family(ambient: usize, seed: u64) -> Mat<Complex64> {
    let basis = 8.min(ambient);
    let cols = basis + SWEEP_RANDOM_VECTORS;
    let mut f = Mat::<Complex64>::zeros(ambient, cols);
    for j in 0..basis {
        f[(j, j)] = Complex64::new(1.0, 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in basis..cols {
        for r in 0..ambient {
            let decay = (1.0 + r as f64).powi(-2);
            f[(r, c)] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * decay;
        }
        let norm = column_norm(&f, c);
        for r in 0..ambient {
            f[(r, c)] /= norm;
        }
    }
    f
}

/// `max_{t, f} ||(e^{itL_n} - e^{itL_M}) f||` for `n = 4, 8, .., M/2` over
/// 21 times in `[-T, T]`.
pub fn run_propagator_sweep(
    potential: &LaxPotential,
    ambient: usize,
    t_max: f64,
    seed: u64,
) -> Result<PropagatorSweep> {
    if ambient < 64 || !ambient.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "propagator sweep needs M a power of two >= 64, got {ambient}"
        )));
    }
    let family = sweep_family(ambient, seed);
    let members = family.ncols();
    let grid = time_grid(t_max, SWEEP_TIME_POINTS);
    // column (i, f) carries time grid[i] and member f
    let times: Vec<f64> = grid.iter().flat_map(|&t| std::iter::repeat(t).take(members)).collect();
    let tiled = Mat::from_fn(ambient, times.len(), |r, c| family[(r, c % members)]);

    let cache = PropagatorCache::new();
    let evolve = |n: usize| -> Result<Mat<Complex64>> {
        let mut v = tiled.clone();
        cache
            .get_or_build_for(potential, n, ambient)?
            .apply_exp_columns(&times, v.as_mut())?;
        Ok(v)
    };
    let reference = evolve(ambient)?;
    let mut rows = Vec::new();
    let mut n = 4;
    while n <= ambient / 2 {
        let diff = &evolve(n)? - &reference;
        let sup_error = (0..diff.ncols()).map(|c| column_norm(&diff, c)).fold(0.0, f64::max);
        rows.push(SweepRow { n, sup_error });
        n *= 2;
    }
    Ok(PropagatorSweep {
        equation: potential.equation(),
        ambient,
        t_max,
        rows,
    })
}
