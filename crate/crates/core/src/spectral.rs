// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Fourier-space primitives on the torus.
//!
//! Coefficients follow the normalised convention
//! `f(x) = sum_k c(k) e^{ikx}`, `c(k) = (1/2pi) \int f(x) e^{-ikx} dx`, so that
//! the L2 norm is the plain l2 norm of the coefficient sequence.
//!
//! Two containers are used throughout the crate:
//!
//! * [`HardyVector`]: the non-negative modes `c(0), c(1), ..`, i.e. an element
//!   of the Hardy space. Modes past the end are implicitly zero.
//! * [`RealSpectrum`]: the modes `-K < k < K` of a real-valued field. It can
//!   only be built from its non-negative half, so `c(-k) == conj(c(k))` holds
//!   bit for bit.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest imaginary part tolerated on the zero mode of a real field.
pub const ZERO_MODE_TOLERANCE: f64 = 1e-10;

/// Decay margin for random Sobolev profiles: coefficients fall off as
/// `(1+k)^{-s-1/2-eps}` so the profile sits strictly inside `H^s`.
pub const SOBOLEV_EPSILON: f64 = 0.01;

/// Element of the Hardy space given by its modes `0..len`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HardyVector {
    coeffs: Vec<Complex64>,
}

impl HardyVector {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// `amplitude * e^{ikx}`.
    pub fn single_mode(k: usize, amplitude: Complex64) -> Self {
        let mut h = Self::zeros(k + 1);
        h.coeffs[k] = amplitude;
        h
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at frequency `k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(k as usize).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Same function stored with exactly `len` modes (zero-padded or cut).
    pub fn resized(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn l2_norm(&self) -> f64 {
        l2_norm(self)
    }
}

/// Modes `-K < k < K` of a real-valued field.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSpectrum {
    bandwidth: usize,
    // index k + bandwidth - 1
    coeffs: Vec<Complex64>,
}

impl RealSpectrum {
    pub fn zeros(bandwidth: usize) -> Result<Self> {
        if bandwidth == 0 {
            return Err(Error::ZeroBandwidth);
        }
        Ok(Self {
            bandwidth,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * bandwidth - 1],
        })
    }

    /// Builds the spectrum from its non-negative half. See
    /// [`hermitian_symmetrize`].
    pub fn from_nonnegative(half: &[Complex64], bandwidth: usize) -> Result<Self> {
        hermitian_symmetrize(&HardyVector::new(half.to_vec()), bandwidth)
    }

    /// Accepts a full two-sided table `c(-K+1), .., c(K-1)` only if it is
    /// exactly Hermitian-symmetric.
    pub fn from_two_sided(coeffs: Vec<Complex64>, bandwidth: usize) -> Result<Self> {
        if bandwidth == 0 {
            return Err(Error::ZeroBandwidth);
        }
        if coeffs.len() != 2 * bandwidth - 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * bandwidth - 1,
                found: coeffs.len(),
            });
        }
        let centre = bandwidth - 1;
        if coeffs[centre].im != 0.0 {
            return Err(Error::NotHermitianSymmetric { frequency: 0 });
        }
        for k in 1..bandwidth {
            if coeffs[centre - k] != coeffs[centre + k].conj() {
                return Err(Error::NotHermitianSymmetric { frequency: k as i64 });
            }
        }
        Ok(Self { bandwidth, coeffs })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// Coefficient at frequency `k`; zero for `|k| >= K`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let idx = k + self.bandwidth as i64 - 1;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Modes `0..K`.
    pub fn nonnegative(&self) -> &[Complex64] {
        &self.coeffs[self.bandwidth - 1..]
    }

    /// `(k, c(k))` for `-K < k < K`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let offset = self.bandwidth as i64 - 1;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - offset, c))
    }

    pub fn l2_norm(&self) -> f64 {
        l2_norm(self)
    }
}

/// Anything that is a finite Fourier series on the torus.
pub trait FourierModes {
    fn for_each_mode(&self, f: impl FnMut(i64, Complex64));
}

impl FourierModes for HardyVector {
    fn for_each_mode(&self, mut f: impl FnMut(i64, Complex64)) {
        for (k, &c) in self.coeffs.iter().enumerate() {
            f(k as i64, c);
        }
    }
}

impl FourierModes for RealSpectrum {
    fn for_each_mode(&self, mut f: impl FnMut(i64, Complex64)) {
        for (k, c) in self.iter() {
            f(k, c);
        }
    }
}

/// Sobolev exponent and resolvent shift for the `H^s_kappa` norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSpec {
    s: f64,
    kappa: f64,
}

impl NormSpec {
    pub fn new(s: f64, kappa: f64) -> Result<Self> {
        if !(kappa >= 1.0) {
            return Err(Error::InvalidKappa(kappa));
        }
        Ok(Self { s, kappa })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Riesz-Szegő projection: keeps the modes `0..K`.
pub fn project_hardy(spec: &RealSpectrum) -> HardyVector {
    HardyVector::new(spec.nonnegative().to_vec())
}

/// Truncated projection `Pi_j`: keeps the modes `0..j`.
pub fn truncate(h: &HardyVector, j: usize) -> HardyVector {
    HardyVector::new(h.coeffs[..j.min(h.len())].to_vec())
}

/// Left shift in frequency, `(S* h)(k) = h(k+1)`.
pub fn shift_left(h: &HardyVector) -> HardyVector {
    HardyVector::new(h.coeffs.iter().skip(1).copied().collect())
}

/// `<h, 1>`, the zero mode.
pub fn inner_with_one(h: &HardyVector) -> Complex64 {
    h.coeff(0)
}

pub fn l2_norm<F: FourierModes>(f: &F) -> f64 {
    let mut acc = 0.0;
    f.for_each_mode(|_, c| acc += c.norm_sqr());
    acc.sqrt()
}

/// `sqrt(sum_k (|k| + kappa)^{2s} |c(k)|^2)`.
pub fn hs_kappa_norm<F: FourierModes>(f: &F, spec: NormSpec) -> f64 {
    let mut acc = 0.0;
    f.for_each_mode(|k, c| {
        acc += (k.unsigned_abs() as f64 + spec.kappa).powf(2.0 * spec.s) * c.norm_sqr();
    });
    acc.sqrt()
}

/// Evaluates the series at each point by direct summation.
pub fn synthesize<F: FourierModes>(f: &F, points: &[f64]) -> Vec<Complex64> {
    let mut modes = Vec::new();
    f.for_each_mode(|k, c| {
        if c != Complex64::new(0.0, 0.0) {
            modes.push((k as f64, c));
        }
    });
    points
        .iter()
        .map(|&x| {
            modes
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, &(k, c)| acc + c * Complex64::cis(k * x))
        })
        .collect()
}

/// `n` uniform points on `[-pi, pi)`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| -PI + 2.0 * PI * j as f64 / n as f64).collect()
}

/// Extends Hardy modes to the spectrum of a real field with bandwidth `K`:
/// `c(-k) = conj(c(k))`, modes at `|k| >= K` dropped, zero mode made real.
pub fn hermitian_symmetrize(h: &HardyVector, bandwidth: usize) -> Result<RealSpectrum> {
    let mut out = RealSpectrum::zeros(bandwidth)?;
    let zero = h.coeff(0);
    if zero.im.abs() > ZERO_MODE_TOLERANCE {
        return Err(Error::ComplexZeroMode(zero.im));
    }
    let centre = bandwidth - 1;
    out.coeffs[centre] = Complex64::new(zero.re, 0.0);
    for k in 1..bandwidth.min(h.len()) {
        let c = h.coeffs[k];
        out.coeffs[centre + k] = c;
        out.coeffs[centre - k] = c.conj();
    }
    Ok(out)
}

/// Square wave `sgn(x)` on `(-pi, pi)`: `-i (1 - (-1)^k) / (pi k)`.
pub fn square_wave_coeff(k: i64) -> Complex64 {
    if k % 2 == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -2.0 / (PI * k as f64))
    }
}

/// Named initial data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialProfile {
    /// Modes `0, 1, ..` given verbatim as `[re, im]` pairs.
    Explicit { coeffs: Vec<Complex64> },
    /// `sgn(x)`.
    SquareWave,
    /// `amplitude * e^{i k0 x}` (plus its conjugate for a real field).
    SingleMode { k0: i64, amplitude: Complex64 },
    /// Random phases with `(1+k)^{-s-1/2-eps}` decay on `0 <= k < bandwidth`.
    /// Mode `k` depends only on `(seed, k)`, so the profile is the same at
    /// every analysis bandwidth. `l2_norm`, when set, rescales the profile.
    RandomSobolev {
        s: f64,
        seed: u64,
        bandwidth: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l2_norm: Option<f64>,
    },
}

impl InitialProfile {
    pub fn zero() -> Self {
        InitialProfile::Explicit { coeffs: Vec::new() }
    }
}

/// Raw random-Sobolev modes `0..bandwidth`, before any normalisation.
fn random_sobolev_modes(s: f64, seed: u64, bandwidth: usize) -> Vec<Complex64> {
    (0..bandwidth)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            let decay = (1.0 + k as f64).powf(-s - 0.5 - SOBOLEV_EPSILON);
            Complex64::new(re, im) * decay
        })
        .collect()
}

fn check_target_norm(target: Option<f64>) -> Result<()> {
    match target {
        Some(v) if !(v >= 0.0 && v.is_finite()) => Err(Error::InvalidProfile(format!(
            "target l2_norm must be finite and non-negative, got {v}"
        ))),
        _ => Ok(()),
    }
}

fn rescale(coeffs: &mut [Complex64], current: f64, target: Option<f64>) {
    if let Some(target) = target {
        if current > 0.0 {
            let factor = target / current;
            coeffs.iter_mut().for_each(|c| *c *= factor);
        }
    }
}

/// Spectrum of a profile viewed as a real field with bandwidth `K`.
pub fn analyze_profile(p: &InitialProfile, bandwidth: usize) -> Result<RealSpectrum> {
    if bandwidth == 0 {
        return Err(Error::ZeroBandwidth);
    }
    match p {
        InitialProfile::Explicit { coeffs } => hermitian_symmetrize(&HardyVector::new(coeffs.clone()), bandwidth),
        InitialProfile::SquareWave => {
            let half: Vec<_> = (0..bandwidth as i64).map(square_wave_coeff).collect();
            hermitian_symmetrize(&HardyVector::new(half), bandwidth)
        }
        &InitialProfile::SingleMode { k0, amplitude } => {
            if k0.unsigned_abs() as usize >= bandwidth {
                return Err(Error::ModeOutOfBand { k0, bandwidth });
            }
            let amp = if k0 < 0 { amplitude.conj() } else { amplitude };
            let h = HardyVector::single_mode(k0.unsigned_abs() as usize, amp);
            hermitian_symmetrize(&h, bandwidth)
        }
        &InitialProfile::RandomSobolev {
            s,
            seed,
            bandwidth: own,
            l2_norm: target,
        } => {
            check_target_norm(target)?;
            let mut modes = random_sobolev_modes(s, seed, own);
            if let Some(zero) = modes.first_mut() {
                zero.im = 0.0;
            }
            // two-sided norm of the full profile
            let full = match modes.split_first() {
                Some((zero, rest)) => (zero.norm_sqr() + 2.0 * rest.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt(),
                None => 0.0,
            };
            rescale(&mut modes, full, target);
            hermitian_symmetrize(&HardyVector::new(modes), bandwidth)
        }
    }
}

/// Hardy-space data (Calogero-Moser) for a profile, modes `0..bandwidth`.
pub fn analyze_hardy_profile(p: &InitialProfile, bandwidth: usize) -> Result<HardyVector> {
    if bandwidth == 0 {
        return Err(Error::ZeroBandwidth);
    }
    match p {
        InitialProfile::Explicit { coeffs } => Ok(truncate(&HardyVector::new(coeffs.clone()), bandwidth)),
        InitialProfile::SquareWave => Ok(HardyVector::new((0..bandwidth as i64).map(square_wave_coeff).collect())),
        &InitialProfile::SingleMode { k0, amplitude } => {
            if k0 < 0 {
                return Err(Error::NegativeHardyMode(k0));
            }
            if k0 as usize >= bandwidth {
                return Err(Error::ModeOutOfBand { k0, bandwidth });
            }
            Ok(HardyVector::single_mode(k0 as usize, amplitude))
        }
        &InitialProfile::RandomSobolev {
            s,
            seed,
            bandwidth: own,
            l2_norm: target,
        } => {
            check_target_norm(target)?;
            let mut modes = random_sobolev_modes(s, seed, own);
            let norm = HardyVector::new(modes.clone()).l2_norm();
            rescale(&mut modes, norm, target);
            Ok(truncate(&HardyVector::new(modes), bandwidth))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Composite Simpson rule for `(1/2pi) \int sgn(x) e^{-ikx} dx`, split at the
    /// jump so each half is smooth.
    fn square_wave_quadrature(k: i64) -> Complex64 {
        let panels = 4000;
        let integrate = |a: f64, b: f64, sign: f64| {
            let h = (b - a) / panels as f64;
            let f = |x: f64| Complex64::cis(-(k as f64) * x) * sign;
            let mut acc = f(a) + f(b);
            for j in 1..panels {
                let w = if j % 2 == 1 { 4.0 } else { 2.0 };
                acc += f(a + j as f64 * h) * w;
            }
            acc * (h / 3.0)
        };
        (integrate(-PI, 0.0, -1.0) + integrate(0.0, PI, 1.0)) / (2.0 * PI)
    }

    #[test]
    fn project_keeps_nonnegative_modes() {
        let a = 0.7;
        let spec = RealSpectrum::from_nonnegative(&[c(1.0, 0.0), c(0.0, a)], 2).unwrap();
        assert_eq!(spec.coeff(-1), c(0.0, -a));
        assert_eq!(project_hardy(&spec).coeffs(), &[c(1.0, 0.0), c(0.0, a)]);

        let zero = RealSpectrum::zeros(5).unwrap();
        assert!(project_hardy(&zero).coeffs().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn square_wave_matches_quadrature() {
        assert!((square_wave_coeff(1) - c(0.0, -2.0 / PI)).norm() < 1e-15);
        assert!((c(0.0, -0.63662) - square_wave_coeff(1)).norm() < 1e-5);
        for k in -64..=64 {
            let q = square_wave_quadrature(k);
            assert!(
                (q - square_wave_coeff(k)).norm() < 1e-8,
                "k = {k}: quadrature {q}, closed form {}",
                square_wave_coeff(k)
            );
        }
        let spec = analyze_profile(&InitialProfile::SquareWave, 65).unwrap();
        for k in -64..=64 {
            assert!((spec.coeff(k) - square_wave_quadrature(k)).norm() < 1e-8);
        }
        let h = project_hardy(&spec);
        assert_eq!(inner_with_one(&h), c(0.0, 0.0));
        assert_eq!(h.coeff(2), c(0.0, 0.0));
    }

    #[test]
    fn truncate_cases() {
        let h = HardyVector::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(truncate(&h, 2).coeffs(), &[c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(truncate(&h, 0).is_empty());
        assert_eq!(truncate(&h, 7), h);
        assert_eq!(truncate(&truncate(&h, 2), 2), truncate(&h, 2));
    }

    #[test]
    fn shift_cases() {
        let h = HardyVector::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(shift_left(&h).coeffs(), &[c(2.0, 0.0), c(3.0, 0.0)]);
        assert!(shift_left(&HardyVector::default()).is_empty());
        let five = HardyVector::single_mode(5, c(1.0, 0.0));
        assert_eq!(shift_left(&five), HardyVector::single_mode(4, c(1.0, 0.0)));
    }

    #[test]
    fn inner_with_one_cases() {
        let h = HardyVector::new(vec![c(3.0, 1.0), c(7.0, 0.0)]);
        assert_eq!(inner_with_one(&h), c(3.0, 1.0));
        assert_eq!(inner_with_one(&HardyVector::default()), c(0.0, 0.0));
    }

    #[test]
    fn norms() {
        assert_eq!(HardyVector::single_mode(3, c(1.0, 0.0)).l2_norm(), 1.0);
        let cosine = RealSpectrum::from_nonnegative(&[c(0.0, 0.0), c(0.5, 0.0)], 2).unwrap();
        assert!((cosine.l2_norm() - 0.5f64.sqrt()).abs() < 1e-15);

        // partial sum of 4/(pi^2 k^2) over odd k < K, summed independently
        let big_k = 1usize << 10;
        let spec = analyze_profile(&InitialProfile::SquareWave, big_k).unwrap();
        let oracle: f64 = (1..big_k)
            .step_by(2)
            .map(|k| 2.0 * 4.0 / (PI * PI * (k * k) as f64))
            .sum::<f64>()
            .sqrt();
        assert!((spec.l2_norm() - oracle).abs() < 1e-12);
        assert!(spec.l2_norm() < 1.0);
    }

    #[test]
    fn hs_kappa_cases() {
        let h = HardyVector::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((hs_kappa_norm(&h, NormSpec::new(1.0, 2.0).unwrap()) - 3.0).abs() < 1e-15);
        let h = HardyVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let v = hs_kappa_norm(&h, NormSpec::new(-1.0, 1.0).unwrap());
        assert!((v - 1.25f64.sqrt()).abs() < 1e-15);
        assert_eq!(hs_kappa_norm(&h, NormSpec::new(0.0, 5.0).unwrap()), h.l2_norm());
        assert_eq!(NormSpec::new(1.0, 0.5), Err(Error::InvalidKappa(0.5)));
        assert!(NormSpec::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn synthesize_cases() {
        let pts = uniform_grid(16);
        let constant = HardyVector::new(vec![c(2.5, -1.0)]);
        for z in synthesize(&constant, &pts) {
            assert_eq!(z, c(2.5, -1.0));
        }
        let cosine = RealSpectrum::from_nonnegative(&[c(0.0, 0.0), c(0.5, 0.0)], 2).unwrap();
        for (z, &x) in synthesize(&cosine, &pts).iter().zip(&pts) {
            assert!((z - c(x.cos(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn analyze_single_mode() {
        let p = InitialProfile::SingleMode {
            k0: 3,
            amplitude: c(0.2, 0.0),
        };
        let spec = analyze_profile(&p, 8).unwrap();
        assert_eq!(spec.coeff(3), c(0.2, 0.0));
        assert_eq!(spec.coeff(-3), c(0.2, 0.0).conj());
        let bad = InitialProfile::SingleMode {
            k0: -8,
            amplitude: c(1.0, 0.0),
        };
        assert_eq!(
            analyze_profile(&bad, 8),
            Err(Error::ModeOutOfBand { k0: -8, bandwidth: 8 })
        );
        assert!(analyze_hardy_profile(
            &InitialProfile::SingleMode {
                k0: -1,
                amplitude: c(1.0, 0.0)
            },
            8
        )
        .is_err());
    }

    #[test]
    fn random_sobolev_is_bandwidth_consistent() {
        let p = InitialProfile::RandomSobolev {
            s: 2.0,
            seed: 7,
            bandwidth: 40,
            l2_norm: Some(1.0),
        };
        let small = analyze_profile(&p, 16).unwrap();
        let large = analyze_profile(&p, 128).unwrap();
        for k in -15..16 {
            assert_eq!(small.coeff(k), large.coeff(k));
        }
        assert_eq!(large.coeff(40), c(0.0, 0.0));
        assert!((large.l2_norm() - 1.0).abs() < 1e-14);
        assert_eq!(large.coeff(0).im, 0.0);

        let h = analyze_hardy_profile(&p, 128).unwrap();
        assert!((h.l2_norm() - 1.0).abs() < 1e-14);
        assert_eq!(h, analyze_hardy_profile(&p, 128).unwrap());
    }

    #[test]
    fn symmetrize_cases() {
        let spec = hermitian_symmetrize(&HardyVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]), 2).unwrap();
        assert_eq!(spec.coeff(0), c(1.0, 0.0));
        assert_eq!(spec.coeff(1), c(0.0, 1.0));
        assert_eq!(spec.coeff(-1), c(0.0, -1.0));
        let zero = hermitian_symmetrize(&HardyVector::default(), 3).unwrap();
        assert_eq!(zero.l2_norm(), 0.0);
        assert_eq!(
            hermitian_symmetrize(&HardyVector::new(vec![c(1.0, 1e-3)]), 3),
            Err(Error::ComplexZeroMode(1e-3))
        );
        // tiny imaginary noise is scrubbed to an exactly real mean
        let s = hermitian_symmetrize(&HardyVector::new(vec![c(1.0, 1e-14)]), 3).unwrap();
        assert_eq!(s.coeff(0).im, 0.0);
    }

    #[test]
    fn two_sided_validation() {
        let ok = vec![c(1.0, -2.0), c(3.0, 0.0), c(1.0, 2.0)];
        assert!(RealSpectrum::from_two_sided(ok, 2).is_ok());
        let bad = vec![c(1.0, 2.0), c(3.0, 0.0), c(1.0, 2.0)];
        assert_eq!(
            RealSpectrum::from_two_sided(bad, 2),
            Err(Error::NotHermitianSymmetric { frequency: 1 })
        );
    }
}
