// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! The explicit-formula scheme.
//!
//! With a truncation schedule `n(0), .., n(K-1)` the iterates are
//!
//! ```text
//! u^0 = Pi_{n(0)} u0
//! u^k = e^{+- it (I + 2 L_{n(k)})} S* u^{k-1},   1 <= k < K
//! ```
//!
//! and the output coefficients are `u_K(t, k) = <u^k, 1>`. Time only enters
//! through eigenvalue phases, so every `t` is an independent, exact
//! evaluation. All requested times are advanced together as the columns of
//! one `M x T` matrix.

use faer::{Mat, MatRef};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lax::{Equation, LaxPotential};
use crate::propagator::PropagatorCache;
use crate::spectral::{
    analyze_hardy_profile, analyze_profile, hermitian_symmetrize, truncate, HardyVector, InitialProfile, RealSpectrum,
};

/// Strict margin under the unit mass required for focusing data.
pub const FOCUSING_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    /// `n(k) = K`.
    Constant,
    /// `n(0) = K`, then `0`: the linear flow.
    LinearCase,
    /// `n(k) = K/2` for `k <= K/2`, then `0`.
    HalfStaircase,
    /// `n(k) = K - k`.
    FullStaircase,
    Custom,
}

impl ScheduleKind {
    pub fn name(self) -> &'static str {
        match self {
            ScheduleKind::Constant => "constant",
            ScheduleKind::LinearCase => "linear-case",
            ScheduleKind::HalfStaircase => "half-staircase",
            ScheduleKind::FullStaircase => "full-staircase",
            ScheduleKind::Custom => "custom",
        }
    }
}

/// Truncation parameters `n(k)` for `0 <= k < K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Schedule {
    kind: ScheduleKind,
    values: Vec<usize>,
    l2_preserving: bool,
}

impl Schedule {
    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    /// `K`, the number of output frequencies.
    pub fn frequency_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn n(&self, k: usize) -> usize {
        self.values[k]
    }

    /// `n(k) <= K - k` for every `k`: the discrete L2 norm is preserved.
    pub fn l2_preserving(&self) -> bool {
        self.l2_preserving
    }

    /// `n(0) >= 1`, needed for the mean to be carried over.
    pub fn keeps_zero_mode(&self) -> bool {
        self.values[0] >= 1
    }

    /// `max_k n(k)`, at least 1.
    pub fn ambient(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0).max(1)
    }

    /// Number of distinct operators `L_{n(k)}` used by iterations `1..K`.
    pub fn distinct_operators(&self) -> usize {
        let mut ns: Vec<usize> = self.values[1..].to_vec();
        ns.sort_unstable();
        ns.dedup();
        ns.len()
    }
}

pub fn make_schedule(kind: ScheduleKind, k_count: usize, custom: Option<&[i64]>) -> Result<Schedule> {
    if k_count == 0 {
        return Err(Error::EmptySchedule);
    }
    let values: Vec<usize> = match kind {
        ScheduleKind::Constant => vec![k_count; k_count],
        ScheduleKind::LinearCase => (0..k_count).map(|k| if k == 0 { k_count } else { 0 }).collect(),
        ScheduleKind::HalfStaircase => {
            let half = k_count / 2;
            (0..k_count).map(|k| if k <= half { half } else { 0 }).collect()
        }
        ScheduleKind::FullStaircase => (0..k_count).map(|k| k_count - k).collect(),
        ScheduleKind::Custom => {
            let raw = custom.ok_or(Error::ScheduleLength {
                expected: k_count,
                found: 0,
            })?;
            if raw.len() != k_count {
                return Err(Error::ScheduleLength {
                    expected: k_count,
                    found: raw.len(),
                });
            }
            raw.iter()
                .enumerate()
                .map(|(index, &value)| {
                    usize::try_from(value).map_err(|_| Error::NegativeScheduleEntry { index, value })
                })
                .collect::<Result<_>>()?
        }
    };
    if values[0] == 0 {
        log::warn!("n(0) = 0: the zero mode of the data is truncated away and the mean is not preserved");
    }
    let l2_preserving = values.iter().enumerate().all(|(k, &n)| n <= k_count - k);
    Ok(Schedule {
        kind,
        values,
        l2_preserving,
    })
}

/// Support size `m_k = max_{l <= k} (n(l) - (k - l))` of the `k`-th iterate.
pub fn iterate_size(sched: &Schedule, k: usize) -> usize {
    (0..=k)
        .map(|l| sched.values[l] as i64 - (k - l) as i64)
        .max()
        .unwrap_or(0)
        .max(0) as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeConfig {
    pub equation: Equation,
    pub schedule: Schedule,
    pub times: Vec<f64>,
    pub u0: InitialProfile,
    /// Frequency window; defaults to `max_k n(k)`.
    pub ambient: Option<usize>,
    pub override_focusing_threshold: bool,
}

impl SchemeConfig {
    pub fn new(equation: Equation, schedule: Schedule, times: Vec<f64>, u0: InitialProfile) -> Self {
        Self {
            equation,
            schedule,
            times,
            u0,
            ambient: None,
            override_focusing_threshold: false,
        }
    }

    pub fn resolved_ambient(&self) -> Result<usize> {
        let needed = self.schedule.ambient();
        match self.ambient {
            Some(a) if a < needed => Err(Error::AmbientTooSmall { ambient: a, needed }),
            Some(a) => Ok(a),
            None => Ok(needed),
        }
    }

    /// The Lax potential at the resolved ambient size, after the focusing
    /// mass check.
    pub fn potential(&self) -> Result<LaxPotential> {
        let ambient = self.resolved_ambient()?;
        let potential = match self.equation.sign() {
            None => LaxPotential::bo(analyze_profile(&self.u0, ambient)?),
            Some(sign) => LaxPotential::ccm(analyze_hardy_profile(&self.u0, ambient)?, sign),
        };
        if self.equation == Equation::CcmFocusing && !self.override_focusing_threshold {
            let mass = potential.l2_norm().powi(2);
            if !(mass < 1.0 - FOCUSING_MARGIN) {
                return Err(Error::FocusingThreshold { mass });
            }
        }
        Ok(potential)
    }
}

/// Scheme coefficients for every requested time.
#[derive(Clone, Debug)]
pub struct SchemeOutput {
    equation: Equation,
    schedule: Schedule,
    ambient: usize,
    data_digest: String,
    times: Vec<f64>,
    // coeffs[c][k] = u_K(times[c], k)
    coeffs: Vec<Vec<Complex64>>,
    seed_l2: f64,
    initial_l2: f64,
    initial_mean: Complex64,
    residual_norms: Vec<f64>,
    residual_max: Vec<f64>,
    decompositions: usize,
}

impl SchemeOutput {
    pub fn equation(&self) -> Equation {
        self.equation
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn data_digest(&self) -> &str {
        &self.data_digest
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Eigendecompositions this run added to its cache.
    pub fn decompositions(&self) -> usize {
        self.decompositions
    }

    /// `||Pi_{n(0)} u0||`.
    pub fn seed_l2(&self) -> f64 {
        self.seed_l2
    }

    /// `||u0||` of the data at the run's bandwidth (two-sided for BO).
    pub fn initial_l2(&self) -> f64 {
        self.initial_l2
    }

    pub fn initial_mean(&self) -> Complex64 {
        self.initial_mean
    }

    pub fn time_index(&self, t: f64) -> Result<usize> {
        self.times.iter().position(|&s| s == t).ok_or(Error::UnknownTime(t))
    }

    /// `u_K(t, k)` for `0 <= k < K`.
    pub fn coefficients(&self, t: f64) -> Result<&[Complex64]> {
        Ok(&self.coeffs[self.time_index(t)?])
    }

    pub fn coefficients_at(&self, index: usize) -> &[Complex64] {
        &self.coeffs[index]
    }

    /// Real part of `u_K(t, 0)`.
    pub fn mass(&self, t: f64) -> Result<f64> {
        Ok(self.coefficients(t)?[0].re)
    }

    /// `||Pi u_K(t)||`.
    pub fn hardy_l2(&self, t: f64) -> Result<f64> {
        Ok(HardyVector::new(self.coefficients(t)?.to_vec()).l2_norm())
    }

    /// `||u_K(t)||` of the real field, `sqrt(2 ||Pi u_K||^2 - u_K(t,0)^2)`.
    pub fn full_l2(&self, t: f64) -> Result<f64> {
        if !self.equation.is_bo() {
            return Err(Error::RequiresRealField("full_l2"));
        }
        let coeffs = self.coefficients(t)?;
        let hardy = HardyVector::new(coeffs.to_vec()).l2_norm();
        Ok((2.0 * hardy * hardy - coeffs[0].re * coeffs[0].re).max(0.0).sqrt())
    }

    /// Symmetrised output of a Benjamin-Ono run.
    pub fn real_spectrum(&self, t: f64) -> Result<RealSpectrum> {
        if !self.equation.is_bo() {
            return Err(Error::RequiresRealField("real_spectrum"));
        }
        let coeffs = self.coefficients(t)?;
        hermitian_symmetrize(&HardyVector::new(coeffs.to_vec()), coeffs.len())
    }

    /// Output of a Calogero-Moser run as a Hardy vector with `K` modes.
    pub fn hardy(&self, t: f64) -> Result<HardyVector> {
        if self.equation.is_bo() {
            return Err(Error::RequiresHardyField("hardy"));
        }
        Ok(HardyVector::new(self.coefficients(t)?.to_vec()))
    }

    /// `||u^K||`, equal to `||S* u^{K-1}||` since the last group is unitary.
    pub fn final_iterate_norm(&self, t: f64) -> Result<f64> {
        Ok(self.residual_norms[self.time_index(t)?])
    }

    pub fn final_iterate_max_abs(&self, t: f64) -> Result<f64> {
        Ok(self.residual_max[self.time_index(t)?])
    }
}

/// Runs the scheme with a fresh cache.
pub fn run_scheme(cfg: &SchemeConfig) -> Result<SchemeOutput> {
    run_scheme_with_cache(cfg, &PropagatorCache::new())
}

pub fn run_scheme_with_cache(cfg: &SchemeConfig, cache: &PropagatorCache) -> Result<SchemeOutput> {
    run_scheme_traced(cfg, cache, |_, _| {})
}

/// Runs the scheme and hands every iterate to `observer` as an `M x T`
/// matrix: `u^k` for `k = 0..K`, then `S* u^{K-1}` (same norm as `u^K`)
/// with `k = K`.
pub fn run_scheme_traced(
    cfg: &SchemeConfig,
    cache: &PropagatorCache,
    mut observer: impl FnMut(usize, MatRef<'_, Complex64>),
) -> Result<SchemeOutput> {
    let potential = cfg.potential()?;
    let ambient = cfg.resolved_ambient()?;
    let schedule = &cfg.schedule;
    let k_count = schedule.frequency_count();
    let times = &cfg.times;
    let cols = times.len();
    let alpha = cfg.equation.alpha();
    let before = cache.decompositions();

    let seed = truncate(&potential.hardy_part(), schedule.n(0)).resized(ambient);
    let mut state = Mat::from_fn(ambient, cols, |r, _| seed.coeffs()[r]);
    let mut coeffs = vec![Vec::with_capacity(k_count); cols];
    for (c, out) in coeffs.iter_mut().enumerate() {
        out.push(state[(0, c)]);
    }
    observer(0, state.as_ref());

    for k in 1..k_count {
        shift_rows(&mut state);
        let n = schedule.n(k);
        let step = |e: Error| Error::SchemeStep {
            k,
            n,
            source: Box::new(e),
        };
        let eig = cache.get_or_build_for(&potential, n, ambient).map_err(step)?;
        eig.apply_group_columns(times, alpha, state.as_mut()).map_err(step)?;
        for (c, out) in coeffs.iter_mut().enumerate() {
            out.push(state[(0, c)]);
        }
        observer(k, state.as_ref());
    }

    shift_rows(&mut state);
    observer(k_count, state.as_ref());
    let residual_norms = (0..cols)
        .map(|c| (0..ambient).map(|r| state[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let residual_max = (0..cols)
        .map(|c| (0..ambient).map(|r| state[(r, c)].norm()).fold(0.0, f64::max))
        .collect();

    Ok(SchemeOutput {
        equation: cfg.equation,
        schedule: schedule.clone(),
        ambient,
        data_digest: potential.digest().to_string(),
        times: times.clone(),
        coeffs,
        seed_l2: seed.l2_norm(),
        initial_l2: potential.l2_norm(),
        initial_mean: potential.coeff(0),
        residual_norms,
        residual_max,
        decompositions: cache.decompositions() - before,
    })
}

/// `S*` on every column: row `r` takes row `r + 1`, the last row is zeroed.
fn shift_rows(state: &mut Mat<Complex64>) {
    let rows = state.nrows();
    for c in 0..state.ncols() {
        for r in 1..rows {
            state[(r - 1, c)] = state[(r, c)];
        }
        if rows > 0 {
            state[(rows - 1, c)] = Complex64::new(0.0, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random(seed: u64, bandwidth: usize, norm: f64) -> InitialProfile {
        InitialProfile::RandomSobolev {
            s: 0.5,
            seed,
            bandwidth,
            l2_norm: Some(norm),
        }
    }

    #[test]
    fn schedule_kinds() {
        let s = make_schedule(ScheduleKind::Constant, 8, None).unwrap();
        assert_eq!(s.values(), &[8; 8]);
        assert!(!s.l2_preserving());

        let s = make_schedule(ScheduleKind::FullStaircase, 8, None).unwrap();
        assert_eq!(s.values(), &[8, 7, 6, 5, 4, 3, 2, 1]);
        assert!(s.l2_preserving());

        let k = 1 << 10;
        let s = make_schedule(ScheduleKind::HalfStaircase, k, None).unwrap();
        assert!(s.values()[..=512].iter().all(|&n| n == 512));
        assert!(s.values()[513..].iter().all(|&n| n == 0));
        assert!(s.l2_preserving());

        let s = make_schedule(ScheduleKind::LinearCase, 4, None).unwrap();
        assert_eq!(s.values(), &[4, 0, 0, 0]);
        assert!(s.l2_preserving());
    }

    #[test]
    fn schedule_errors() {
        assert_eq!(
            make_schedule(ScheduleKind::Constant, 0, None),
            Err(Error::EmptySchedule)
        );
        assert_eq!(
            make_schedule(ScheduleKind::Custom, 3, Some(&[1, -2, 0])),
            Err(Error::NegativeScheduleEntry { index: 1, value: -2 })
        );
        assert!(make_schedule(ScheduleKind::Custom, 3, Some(&[1, 2])).is_err());
        // n(0) = 0 is allowed
        let s = make_schedule(ScheduleKind::Custom, 3, Some(&[0, 2, 1])).unwrap();
        assert!(!s.keeps_zero_mode());
    }

    #[test]
    fn iterate_sizes() {
        let s = make_schedule(ScheduleKind::Constant, 8, None).unwrap();
        assert!((0..8).all(|k| iterate_size(&s, k) == 8));
        for kind in [ScheduleKind::LinearCase, ScheduleKind::FullStaircase] {
            let s = make_schedule(kind, 8, None).unwrap();
            // brute force: max over l of n(l) - (k - l)
            for k in 0..8 {
                let brute = (0..=k).map(|l| s.n(l) as i64 - (k - l) as i64).max().unwrap();
                assert_eq!(iterate_size(&s, k) as i64, brute.max(0));
                assert_eq!(iterate_size(&s, k), 8 - k);
            }
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let sched = make_schedule(ScheduleKind::Constant, 6, None).unwrap();
        for eq in [Equation::Bo, Equation::CcmDefocusing] {
            let cfg = SchemeConfig::new(eq, sched.clone(), vec![0.0, 1.5], InitialProfile::zero());
            let out = run_scheme(&cfg).unwrap();
            for &t in out.times() {
                assert!(out.coefficients(t).unwrap().iter().all(|z| z.norm() == 0.0));
            }
        }
    }

    #[test]
    fn single_frequency_returns_mean() {
        let u0 = InitialProfile::Explicit {
            coeffs: vec![c(0.4, 0.0), c(0.2, 0.1)],
        };
        for kind in [
            ScheduleKind::Constant,
            ScheduleKind::LinearCase,
            ScheduleKind::FullStaircase,
        ] {
            let sched = make_schedule(kind, 1, None).unwrap();
            let out = run_scheme(&SchemeConfig::new(Equation::Bo, sched, vec![3.0, -8.0], u0.clone())).unwrap();
            assert_eq!(out.coefficients(3.0).unwrap(), &[c(0.4, 0.0)]);
            assert_eq!(out.coefficients(-8.0).unwrap(), &[c(0.4, 0.0)]);
        }
    }

    #[test]
    fn linear_case_is_the_linear_flow() {
        let k_count = 24;
        let sched = make_schedule(ScheduleKind::LinearCase, k_count, None).unwrap();
        let times = vec![0.3, -2.0, 17.5];
        for eq in [Equation::Bo, Equation::CcmFocusing] {
            let u0 = random(8, k_count, 0.5);
            let cfg = SchemeConfig::new(eq, sched.clone(), times.clone(), u0);
            let pot = cfg.potential().unwrap();
            let out = run_scheme(&cfg).unwrap();
            for &t in &times {
                for (k, z) in out.coefficients(t).unwrap().iter().enumerate() {
                    let kk = (k * k) as f64;
                    let expect = pot.coeff(k as i64) * Complex64::cis(eq.alpha() * t * kk);
                    assert!((z - expect).norm() <= 1e-10, "{eq} t={t} k={k}");
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_pipeline() {
        let k_count = 4;
        let sched = make_schedule(ScheduleKind::Constant, k_count, None).unwrap();
        for eq in [Equation::Bo, Equation::CcmFocusing, Equation::CcmDefocusing] {
            let cfg = SchemeConfig::new(eq, sched.clone(), vec![0.5], random(21, k_count, 0.8));
            let pot = cfg.potential().unwrap();
            let out = run_scheme(&cfg).unwrap();
            let oracle = crate::oracle::brute_force_scheme(&|k| pot.coeff(k), eq, sched.values(), 0.5);
            for (a, b) in out.coefficients(0.5).unwrap().iter().zip(&oracle) {
                assert!((a - b).norm() <= 1e-9, "{eq}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn conserved_quantities() {
        let k_count = 16;
        let u0 = InitialProfile::Explicit {
            coeffs: (0..k_count)
                .map(|k| c(0.3 / (1.0 + k as f64), 0.1 * (k as f64).sin()))
                .collect(),
        };
        let times = vec![-3.0, 0.0, 0.7, 7.1];
        for kind in [
            ScheduleKind::Constant,
            ScheduleKind::HalfStaircase,
            ScheduleKind::FullStaircase,
        ] {
            let sched = make_schedule(kind, k_count, None).unwrap();
            let cfg = SchemeConfig::new(Equation::Bo, sched.clone(), times.clone(), u0.clone());
            let out = run_scheme(&cfg).unwrap();
            for &t in &times {
                assert!((out.mass(t).unwrap() - 0.3).abs() <= 1e-12);
                let h = out.hardy_l2(t).unwrap();
                assert!(h <= out.seed_l2() + 1e-10);
                assert!(out.full_l2(t).unwrap() <= out.initial_l2() + 1e-10);
                let r = out.final_iterate_norm(t).unwrap();
                assert!((r * r + h * h - out.seed_l2().powi(2)).abs() <= 1e-10);
                if sched.l2_preserving() {
                    assert!((h - out.seed_l2()).abs() <= 1e-10);
                    assert!(out.final_iterate_max_abs(t).unwrap() <= 1e-10);
                }
                let spectrum = out.real_spectrum(t).unwrap();
                assert!((spectrum.l2_norm() - out.full_l2(t).unwrap()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn zero_seed_drops_the_mean() {
        let sched = make_schedule(ScheduleKind::Custom, 4, Some(&[0, 4, 4, 4])).unwrap();
        let u0 = InitialProfile::Explicit {
            coeffs: vec![c(0.3, 0.0), c(0.2, 0.0)],
        };
        let out = run_scheme(&SchemeConfig::new(Equation::Bo, sched, vec![1.0], u0)).unwrap();
        assert_eq!(out.mass(1.0).unwrap(), 0.0);
    }

    #[test]
    fn support_bound_holds_at_every_iterate() {
        let k_count = 12;
        let sched = make_schedule(
            ScheduleKind::Custom,
            k_count,
            Some(&[6, 3, 8, 2, 0, 5, 7, 1, 4, 4, 2, 9]),
        )
        .unwrap();
        let cfg = SchemeConfig::new(Equation::Bo, sched.clone(), vec![0.9, -2.2], random(2, 16, 1.0));
        let cache = PropagatorCache::new();
        run_scheme_traced(&cfg, &cache, |k, state| {
            if k >= k_count {
                return;
            }
            let m = iterate_size(&sched, k);
            for c in 0..state.ncols() {
                for r in m..state.nrows() {
                    assert!(state[(r, c)].norm() <= 1e-12, "k={k} r={r}");
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn focusing_threshold() {
        let sched = make_schedule(ScheduleKind::Constant, 4, None).unwrap();
        let mut cfg = SchemeConfig::new(Equation::CcmFocusing, sched, vec![1.0], random(1, 4, 1.0));
        assert!(matches!(run_scheme(&cfg), Err(Error::FocusingThreshold { .. })));
        cfg.override_focusing_threshold = true;
        assert!(run_scheme(&cfg).is_ok());
        cfg.u0 = random(1, 4, 0.99);
        cfg.override_focusing_threshold = false;
        assert!(run_scheme(&cfg).is_ok());
    }

    #[test]
    fn accessors_reject_misuse() {
        let sched = make_schedule(ScheduleKind::Constant, 3, None).unwrap();
        let out = run_scheme(&SchemeConfig::new(
            Equation::CcmDefocusing,
            sched,
            vec![1.0],
            random(1, 3, 0.5),
        ))
        .unwrap();
        assert_eq!(out.mass(2.0), Err(Error::UnknownTime(2.0)));
        assert!(out.full_l2(1.0).is_err());
        assert!(out.real_spectrum(1.0).is_err());
        assert_eq!(out.hardy(1.0).unwrap().len(), 3);
    }

    #[test]
    fn time_reversal_for_even_profiles() {
        // real coefficients at every frequency: an even profile
        let u0 = InitialProfile::Explicit {
            coeffs: (0..10).map(|k| c(0.4 / (1.0 + (k * k) as f64), 0.0)).collect(),
        };
        let sched = make_schedule(ScheduleKind::Constant, 10, None).unwrap();
        let out = run_scheme(&SchemeConfig::new(Equation::Bo, sched, vec![1.3, -1.3], u0)).unwrap();
        let fwd = out.coefficients(1.3).unwrap();
        let bwd = out.coefficients(-1.3).unwrap();
        for (a, b) in fwd.iter().zip(bwd) {
            assert!((a - b.conj()).norm() <= 1e-12);
        }
    }

    #[test]
    fn ambient_override() {
        let sched = make_schedule(ScheduleKind::Constant, 4, None).unwrap();
        let mut cfg = SchemeConfig::new(Equation::Bo, sched, vec![0.4], random(3, 8, 1.0));
        let base = run_scheme(&cfg).unwrap();
        cfg.ambient = Some(2);
        assert!(matches!(run_scheme(&cfg), Err(Error::AmbientTooSmall { .. })));
        cfg.ambient = Some(7);
        let wide = run_scheme(&cfg).unwrap();
        for (a, b) in base
            .coefficients(0.4)
            .unwrap()
            .iter()
            .zip(wide.coefficients(0.4).unwrap())
        {
            assert!((a - b).norm() <= 1e-12);
        }
    }
}
