// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Truncated Lax operators as dense Hermitian matrices on the frequency
//! window `[0, M)`.
//!
//! Both operators are the free operator `diag(0, 1, .., M-1)` plus a
//! perturbation confined to the leading `n x n` block:
//!
//! * Benjamin-Ono: `-B`, with `B[j][l] = u(j-l)` (Hermitian Toeplitz).
//! * Calogero-Moser: `-G` (focusing) or `+G` (defocusing), `G = A A^H` with
//!   `A[j][m] = u(j-m)` lower-triangular Toeplitz.
//!
//! The diagonal is never truncated, so rows and columns past `n` are exactly
//! those of the free operator.

use std::fmt;
use std::io::{self, Write};

use faer::{Accum, Mat, MatRef, Par};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::spectral::{HardyVector, RealSpectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Focusing,
    Defocusing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    Bo,
    CcmFocusing,
    CcmDefocusing,
}

impl Equation {
    /// Direction of the unitary group in the scheme: `+1` for Benjamin-Ono,
    /// `-1` for Calogero-Moser.
    pub fn alpha(self) -> f64 {
        match self {
            Equation::Bo => 1.0,
            Equation::CcmFocusing | Equation::CcmDefocusing => -1.0,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            Equation::Bo => None,
            Equation::CcmFocusing => Some(Sign::Focusing),
            Equation::CcmDefocusing => Some(Sign::Defocusing),
        }
    }

    pub fn ccm(sign: Sign) -> Self {
        match sign {
            Sign::Focusing => Equation::CcmFocusing,
            Sign::Defocusing => Equation::CcmDefocusing,
        }
    }

    pub fn is_bo(self) -> bool {
        self == Equation::Bo
    }

    pub fn name(self) -> &'static str {
        match self {
            Equation::Bo => "bo",
            Equation::CcmFocusing => "ccm-focusing",
            Equation::CcmDefocusing => "ccm-defocusing",
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum PotentialData {
    Bo(RealSpectrum),
    Ccm { data: HardyVector, sign: Sign },
}

/// Initial datum that parametrises a family of Lax operators, tagged with
/// its equation and a content digest.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxPotential {
    data: PotentialData,
    digest: String,
}

impl LaxPotential {
    pub fn bo(u0: RealSpectrum) -> Self {
        let digest = digest_modes(Equation::Bo, u0.nonnegative());
        Self {
            data: PotentialData::Bo(u0),
            digest,
        }
    }

    pub fn ccm(u0: HardyVector, sign: Sign) -> Self {
        let digest = digest_modes(Equation::ccm(sign), u0.coeffs());
        Self {
            data: PotentialData::Ccm { data: u0, sign },
            digest,
        }
    }

    pub fn equation(&self) -> Equation {
        match &self.data {
            PotentialData::Bo(_) => Equation::Bo,
            PotentialData::Ccm { sign, .. } => Equation::ccm(*sign),
        }
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Full L2 norm of the datum (two-sided for a real field).
    pub fn l2_norm(&self) -> f64 {
        match &self.data {
            PotentialData::Bo(u) => u.l2_norm(),
            PotentialData::Ccm { data, .. } => data.l2_norm(),
        }
    }

    /// `Pi u0`, the Hardy part the scheme is seeded with.
    pub fn hardy_part(&self) -> HardyVector {
        match &self.data {
            PotentialData::Bo(u) => HardyVector::new(u.nonnegative().to_vec()),
            PotentialData::Ccm { data, .. } => data.clone(),
        }
    }

    pub fn real_spectrum(&self) -> Option<&RealSpectrum> {
        match &self.data {
            PotentialData::Bo(u) => Some(u),
            PotentialData::Ccm { .. } => None,
        }
    }

    /// Fourier coefficient of the datum at any integer frequency.
    pub fn coeff(&self, k: i64) -> Complex64 {
        match &self.data {
            PotentialData::Bo(u) => u.coeff(k),
            PotentialData::Ccm { data, .. } => data.coeff(k),
        }
    }

    /// `L_n` at ambient size `M`.
    pub fn build(&self, n: usize, ambient: usize) -> Result<LaxMatrix> {
        let mut lax = match &self.data {
            PotentialData::Bo(u) => build_bo_lax(u, n, ambient)?,
            PotentialData::Ccm { data, sign } => build_ccm_lax(data, n, ambient, *sign)?,
        };
        lax.data_digest = self.digest.clone();
        Ok(lax)
    }

    /// Perturbation `L_n - L_0` alone, on `[0, M)`.
    pub fn perturbation(&self, n: usize, ambient: usize) -> Result<Mat<Complex64>> {
        let mut m = self.build(n, ambient)?.entries;
        for j in 0..ambient {
            m[(j, j)] -= Complex64::new(j as f64, 0.0);
        }
        Ok(m)
    }
}

fn digest_modes(equation: Equation, modes: &[Complex64]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(equation.name().as_bytes());
    hasher.update((modes.len() as u64).to_le_bytes());
    for c in modes {
        hasher.update(c.re.to_le_bytes());
        hasher.update(c.im.to_le_bytes());
    }
    hex::encode(&hasher.finalize()[..8])
}

/// Truncated Lax operator `L_n` realised on `[0, M)`.
#[derive(Clone, Debug)]
pub struct LaxMatrix {
    entries: Mat<Complex64>,
    equation: Equation,
    n: usize,
    ambient: usize,
    data_digest: String,
}

impl LaxMatrix {
    pub fn entries(&self) -> MatRef<'_, Complex64> {
        self.entries.as_ref()
    }

    pub fn equation(&self) -> Equation {
        self.equation
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn data_digest(&self) -> &str {
        &self.data_digest
    }

    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(self.entries.as_ref())
    }

    /// Wraps an arbitrary matrix, e.g. for eigensolver tests. No structure is
    /// checked beyond squareness.
    pub fn from_entries(entries: Mat<Complex64>, equation: Equation, n: usize) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let ambient = entries.nrows();
        Ok(Self {
            entries,
            equation,
            n,
            ambient,
            data_digest: String::from("external"),
        })
    }

    /// Row-major dump, one matrix row per line as `re,im` pairs.
    pub fn dump_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for j in 0..self.ambient {
            let row: Vec<String> = (0..self.ambient)
                .map(|l| {
                    let z = self.entries[(j, l)];
                    format!("{:.16e},{:.16e}", z.re, z.im)
                })
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn check_sizes(n: usize, ambient: usize) -> Result<()> {
    if ambient == 0 {
        return Err(Error::EmptyAmbient);
    }
    if n > ambient {
        return Err(Error::TruncationExceedsAmbient { n, ambient });
    }
    Ok(())
}

/// `L_n = -i d/dx - Pi_n u Pi_n` for a real field `u`.
pub fn build_bo_lax(u0: &RealSpectrum, n: usize, ambient: usize) -> Result<LaxMatrix> {
    check_sizes(n, ambient)?;
    // u(l-j) == conj(u(j-l)) bit for bit, so the result is exactly Hermitian
    let entries = Mat::from_fn(ambient, ambient, |j, l| {
        let mut z = if j == l {
            Complex64::new(j as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        if j < n && l < n {
            z -= u0.coeff(j as i64 - l as i64);
        }
        z
    });
    Ok(LaxMatrix {
        entries,
        equation: Equation::Bo,
        n,
        ambient,
        data_digest: String::new(),
    })
}

/// Gram block `G = A A^H` with `A[j][m] = u(j-m)` on `[0, n)`, made exactly
/// Hermitian from its lower triangle.
pub fn ccm_gram_block(u0: &HardyVector, n: usize) -> Mat<Complex64> {
    let a = Mat::from_fn(n, n, |j, m| {
        if j >= m {
            u0.coeff((j - m) as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut g = Mat::<Complex64>::zeros(n, n);
    faer::linalg::matmul::matmul(
        g.as_mut(),
        Accum::Replace,
        a.as_ref(),
        a.adjoint(),
        Complex64::new(1.0, 0.0),
        Par::Seq,
    );
    for j in 0..n {
        g[(j, j)].im = 0.0;
        for l in 0..j {
            g[(l, j)] = g[(j, l)].conj();
        }
    }
    g
}

/// `L_n = -i d/dx -+ Pi_n u Pi_n conj(u) Pi_n` for Hardy data `u`; minus for
/// the focusing sign, plus for the defocusing one.
pub fn build_ccm_lax(u0: &HardyVector, n: usize, ambient: usize, sign: Sign) -> Result<LaxMatrix> {
    check_sizes(n, ambient)?;
    let g = ccm_gram_block(u0, n);
    let s = match sign {
        Sign::Focusing => -1.0,
        Sign::Defocusing => 1.0,
    };
    let entries = Mat::from_fn(ambient, ambient, |j, l| {
        let mut z = if j == l {
            Complex64::new(j as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        if j < n && l < n {
            z += g[(j, l)] * s;
        }
        z
    });
    Ok(LaxMatrix {
        entries,
        equation: Equation::ccm(sign),
        n,
        ambient,
        data_digest: String::new(),
    })
}

/// `max |A[j][l] - conj(A[l][j])|`.
pub fn hermitian_defect(m: MatRef<'_, Complex64>) -> f64 {
    let size = m.nrows().min(m.ncols());
    let mut worst = 0.0f64;
    for j in 0..size {
        for l in 0..=j {
            worst = worst.max((m[(j, l)] - m[(l, j)].conj()).norm());
        }
    }
    worst
}

/// Galerkin matrix of multiplication by `u` on `[0, M)`: `U[j][l] = u(j-l)`.
pub fn multiplication_matrix(u: impl Fn(i64) -> Complex64, ambient: usize) -> Mat<Complex64> {
    Mat::from_fn(ambient, ambient, |j, l| u(j as i64 - l as i64))
}

/// Resolvent `(L_0 + kappa)^{-1}` of the free operator on `[0, M)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeResolvent {
    kappa: f64,
    ambient: usize,
}

impl FreeResolvent {
    pub fn new(kappa: f64, ambient: usize) -> Result<Self> {
        if !(kappa >= 1.0) {
            return Err(Error::InvalidKappa(kappa));
        }
        Ok(Self { kappa, ambient })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn diagonal(&self, k: usize) -> f64 {
        1.0 / (k as f64 + self.kappa)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(v.iter()
            .enumerate()
            .map(|(k, &z)| z / (k as f64 + self.kappa))
            .collect())
    }

    /// Right-multiplies `m` by the resolvent, scaling column `k` by `1/(k+kappa)`.
    pub fn apply_right(&self, m: &Mat<Complex64>) -> Mat<Complex64> {
        Mat::from_fn(m.nrows(), m.ncols(), |j, k| m[(j, k)] * self.diagonal(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{analyze_hardy_profile, analyze_profile, InitialProfile};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_profile(seed: u64) -> InitialProfile {
        InitialProfile::RandomSobolev {
            s: 0.5,
            seed,
            bandwidth: 16,
            l2_norm: Some(1.0),
        }
    }

    fn is_free(m: &LaxMatrix) -> bool {
        (0..m.ambient()).all(|j| {
            (0..m.ambient()).all(|l| {
                let expect = if j == l { c(j as f64, 0.0) } else { c(0.0, 0.0) };
                m.entries()[(j, l)] == expect
            })
        })
    }

    #[test]
    fn zero_data_gives_free_operator() {
        let u = RealSpectrum::zeros(4).unwrap();
        for n in 0..=5 {
            assert!(is_free(&build_bo_lax(&u, n, 5).unwrap()));
        }
        let u = analyze_profile(&random_profile(1), 8).unwrap();
        assert!(is_free(&build_bo_lax(&u, 0, 6).unwrap()));
        let h = HardyVector::zeros(3);
        assert!(is_free(&build_ccm_lax(&h, 3, 4, Sign::Focusing).unwrap()));
    }

    #[test]
    fn bo_two_by_two_block() {
        let (a, cc) = (c(0.3, -0.4), 0.25);
        let u = RealSpectrum::from_nonnegative(&[c(cc, 0.0), a], 2).unwrap();
        let m = build_bo_lax(&u, 2, 3).unwrap();
        // convolution oracle: (Pi_n u Pi_n e_l)(j) = u(j - l)
        let expect = [
            [c(-cc, 0.0), -a.conj(), c(0.0, 0.0)],
            [-a, c(1.0 - cc, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        ];
        for (j, row) in expect.iter().enumerate() {
            for (l, want) in row.iter().enumerate() {
                assert_eq!(m.entries()[(j, l)], *want, "entry ({j},{l})");
            }
        }
    }

    #[test]
    fn bo_block_is_toeplitz_and_tail_is_free() {
        let u = analyze_profile(&random_profile(3), 16).unwrap();
        let (n, ambient) = (6, 10);
        let m = build_bo_lax(&u, n, ambient).unwrap();
        let block = |j: usize, l: usize| c(if j == l { j as f64 } else { 0.0 }, 0.0) - m.entries()[(j, l)];
        for j in 0..n - 1 {
            for l in 0..n - 1 {
                // diagonal entries carry j - u(0), so recovering u(0) rounds
                assert!((block(j + 1, l + 1) - block(j, l)).norm() <= 1e-14);
            }
        }
        for j in 0..ambient {
            for l in 0..ambient {
                if j.max(l) >= n {
                    let expect = if j == l { c(j as f64, 0.0) } else { c(0.0, 0.0) };
                    assert_eq!(m.entries()[(j, l)], expect);
                }
            }
        }
        assert_eq!(m.hermitian_defect(), 0.0);
    }

    #[test]
    fn ccm_one_by_one_block() {
        let b = c(0.3, 0.4);
        let h = HardyVector::new(vec![b, c(0.1, 0.0)]);
        let f = build_ccm_lax(&h, 1, 3, Sign::Focusing).unwrap();
        assert!((f.entries()[(0, 0)] - c(-b.norm_sqr(), 0.0)).norm() < 1e-16);
        let d = build_ccm_lax(&h, 1, 3, Sign::Defocusing).unwrap();
        assert!((d.entries()[(0, 0)] - c(b.norm_sqr(), 0.0)).norm() < 1e-16);
        assert_eq!(f.entries()[(1, 1)], c(1.0, 0.0));
        assert_eq!(f.entries()[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn ccm_matches_explicit_gram_sum() {
        let h = analyze_hardy_profile(&random_profile(9), 16).unwrap();
        let (n, ambient) = (4, 8);
        let m = build_ccm_lax(&h, n, ambient, Sign::Defocusing).unwrap();
        for j in 0..ambient {
            for l in 0..ambient {
                let mut expect = if j == l { c(j as f64, 0.0) } else { c(0.0, 0.0) };
                if j < n && l < n {
                    for mm in 0..n {
                        expect += h.coeff(j as i64 - mm as i64) * h.coeff(l as i64 - mm as i64).conj();
                    }
                }
                assert!((m.entries()[(j, l)] - expect).norm() < 1e-13);
            }
        }
        assert_eq!(m.hermitian_defect(), 0.0);
    }

    #[test]
    fn size_errors() {
        let u = RealSpectrum::zeros(2).unwrap();
        assert_eq!(
            build_bo_lax(&u, 5, 4).unwrap_err(),
            Error::TruncationExceedsAmbient { n: 5, ambient: 4 }
        );
        assert_eq!(build_bo_lax(&u, 0, 0).unwrap_err(), Error::EmptyAmbient);
        let h = HardyVector::zeros(2);
        assert!(build_ccm_lax(&h, 3, 2, Sign::Focusing).is_err());
    }

    #[test]
    fn free_resolvent() {
        let r = FreeResolvent::new(1.0, 3).unwrap();
        assert_eq!(
            r.apply(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap()[0],
            c(1.0, 0.0)
        );
        let r = FreeResolvent::new(3.0, 3).unwrap();
        let out = r.apply(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(out[2], c(0.2, 0.0));
        assert!(FreeResolvent::new(0.9, 3).is_err());
        assert!(r.apply(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn defect_detects_corruption() {
        let u = analyze_profile(&random_profile(5), 8).unwrap();
        let m = build_bo_lax(&u, 5, 6).unwrap();
        let mut e = m.entries().to_owned();
        e[(1, 3)] += c(1e-3, 0.0);
        let d = hermitian_defect(e.as_ref());
        assert!((0.5e-3..=2e-3).contains(&d));
    }

    #[test]
    fn dump_has_one_line_per_row() {
        let u = RealSpectrum::zeros(2).unwrap();
        let m = build_bo_lax(&u, 1, 3).unwrap();
        let mut buf = Vec::new();
        m.dump_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().next().unwrap().split(',').count(), 6);
    }
}
