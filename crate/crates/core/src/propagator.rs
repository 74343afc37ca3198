// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Hermitian eigendecompositions of Lax matrices and the unitary groups they
//! generate.
//!
//! A truncated Lax matrix couples only its leading `n x n` block; the tail is
//! the free operator. The decomposition therefore diagonalises the coupled
//! block with a dense solver and keeps the tail as exact unit eigenvectors.
//! Applying `e^{it(I+2L)}` costs one pair of block GEMMs plus a diagonal
//! phase, and every time point reuses the same decomposition.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use faer::reborrow::ReborrowMut;
use faer::{Accum, Mat, MatMut, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lax::{Equation, LaxMatrix, LaxPotential};

/// Metadata of the operator a decomposition came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigSource {
    pub equation: Equation,
    pub n: usize,
    pub ambient: usize,
    pub data_digest: String,
}

/// `L = Q diag(lambda) Q^H`, stored block-wise.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    source: EigSource,
    ambient: usize,
    // leading coupled block [0, block)
    block_values: Vec<f64>,
    block_vectors: Mat<Complex64>,
    // decoupled diagonal entries for [block, ambient)
    tail_values: Vec<f64>,
}

/// Size of the leading block that carries every off-diagonal entry.
fn coupled_extent(m: MatRef<'_, Complex64>) -> usize {
    let size = m.nrows();
    let mut extent = 0;
    for j in 0..size {
        for l in 0..j {
            if m[(j, l)] != Complex64::new(0.0, 0.0) {
                extent = extent.max(j + 1);
            }
        }
    }
    extent
}

/// Rotates each column so its largest-magnitude entry (first one on ties) is
/// real and positive.
fn canonicalize_columns(q: &mut Mat<Complex64>) {
    for col in 0..q.ncols() {
        let mut best = 0;
        let mut best_abs = -1.0;
        for row in 0..q.nrows() {
            let a = q[(row, col)].norm();
            if a > best_abs {
                best_abs = a;
                best = row;
            }
        }
        if best_abs <= 0.0 {
            continue;
        }
        let rot = q[(best, col)].conj() / best_abs;
        for row in 0..q.nrows() {
            q[(row, col)] *= rot;
        }
        q[(best, col)] = Complex64::new(q[(best, col)].norm(), 0.0);
    }
}

/// Diagonalises a Lax matrix.
pub fn eig_hermitian(m: &LaxMatrix) -> Result<HermitianEig> {
    let entries = m.entries();
    let defect = m.hermitian_defect();
    if defect != 0.0 {
        return Err(Error::NotHermitian(defect));
    }
    let ambient = m.ambient();
    let block = coupled_extent(entries);
    let source = EigSource {
        equation: m.equation(),
        n: m.n(),
        ambient,
        data_digest: m.data_digest().to_string(),
    };
    let tail_values = (block..ambient).map(|j| entries[(j, j)].re).collect();

    let (block_values, block_vectors) = if block == 0 {
        (Vec::new(), Mat::zeros(0, 0))
    } else {
        let sub = entries.submatrix(0, 0, block, block);
        let evd = sub.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Eigensolver {
            equation: m.equation(),
            n: m.n(),
            ambient,
            reason: format!("{e:?}"),
        })?;
        let values: Vec<f64> = evd.S().column_vector().iter().map(|z| z.re).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Eigensolver {
                equation: m.equation(),
                n: m.n(),
                ambient,
                reason: String::from("non-finite eigenvalue"),
            });
        }
        let mut q = evd.U().to_owned();
        canonicalize_columns(&mut q);
        (values, q)
    };

    Ok(HermitianEig {
        source,
        ambient,
        block_values,
        block_vectors,
        tail_values,
    })
}

impl HermitianEig {
    pub fn source(&self) -> &EigSource {
        &self.source
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Size of the block handled by the dense solver.
    pub fn coupled_block(&self) -> usize {
        self.block_values.len()
    }

    fn ordering(&self) -> Vec<(f64, usize)> {
        let mut all: Vec<(f64, usize)> = self
            .block_values
            .iter()
            .chain(&self.tail_values)
            .copied()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        all
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.ordering().into_iter().map(|(v, _)| v).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.block_values
            .iter()
            .chain(&self.tail_values)
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Full `M x M` eigenvector matrix, columns matching [`eigenvalues`].
    ///
    /// [`eigenvalues`]: HermitianEig::eigenvalues
    pub fn eigenvectors(&self) -> Mat<Complex64> {
        let block = self.coupled_block();
        let order = self.ordering();
        Mat::from_fn(self.ambient, self.ambient, |row, col| {
            let src = order[col].1;
            if src < block {
                if row < block {
                    self.block_vectors[(row, src)]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            } else if row == src {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `Q f(Lambda) Q^H` as a dense matrix.
    pub fn spectral_matrix(&self, f: impl Fn(f64) -> Complex64) -> Mat<Complex64> {
        let block = self.coupled_block();
        let mut out = Mat::<Complex64>::zeros(self.ambient, self.ambient);
        if block > 0 {
            let q = self.block_vectors.as_ref();
            let scaled = Mat::from_fn(block, block, |r, c| q[(r, c)] * f(self.block_values[c]));
            faer::linalg::matmul::matmul(
                out.as_mut().submatrix_mut(0, 0, block, block),
                Accum::Replace,
                scaled.as_ref(),
                q.adjoint(),
                Complex64::new(1.0, 0.0),
                faer::get_global_parallelism(),
            );
        }
        for (i, &v) in self.tail_values.iter().enumerate() {
            out[(block + i, block + i)] = f(v);
        }
        out
    }

    /// `Q diag(lambda) Q^H`.
    pub fn reconstruct(&self) -> Mat<Complex64> {
        self.spectral_matrix(|v| Complex64::new(v, 0.0))
    }

    /// Resolvent `(L + kappa)^{-1}`; requires `kappa` above `-min(lambda)`.
    pub fn resolvent(&self, kappa: f64) -> Result<Mat<Complex64>> {
        let lowest = self.min_eigenvalue();
        if !(lowest + kappa > 0.0) {
            return Err(Error::Precondition(format!(
                "L + {kappa} is not invertible (lowest eigenvalue {lowest})"
            )));
        }
        Ok(self.spectral_matrix(|v| Complex64::new(1.0 / (v + kappa), 0.0)))
    }

    /// Multiplies every column `c` of `v` by `Q diag(phase(c, lambda)) Q^H`.
    pub fn apply_spectral_columns(
        &self,
        mut v: MatMut<'_, Complex64>,
        phase: impl Fn(usize, f64) -> Complex64,
    ) -> Result<()> {
        if v.nrows() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.nrows(),
            });
        }
        let cols = v.ncols();
        let block = self.coupled_block();
        if block > 0 {
            let q = self.block_vectors.as_ref();
            let par = faer::get_global_parallelism();
            let mut w = Mat::<Complex64>::zeros(block, cols);
            faer::linalg::matmul::matmul(
                w.as_mut(),
                Accum::Replace,
                q.adjoint(),
                v.as_ref().submatrix(0, 0, block, cols),
                Complex64::new(1.0, 0.0),
                par,
            );
            for c in 0..cols {
                for (r, &lambda) in self.block_values.iter().enumerate() {
                    w[(r, c)] *= phase(c, lambda);
                }
            }
            faer::linalg::matmul::matmul(
                v.rb_mut().submatrix_mut(0, 0, block, cols),
                Accum::Replace,
                q,
                w.as_ref(),
                Complex64::new(1.0, 0.0),
                par,
            );
        }
        for c in 0..cols {
            for (i, &lambda) in self.tail_values.iter().enumerate() {
                v[(block + i, c)] *= phase(c, lambda);
            }
        }
        Ok(())
    }

    /// `e^{i alpha t_c (I + 2L)}` applied to column `c` of `v`, in place.
    pub fn apply_group_columns(&self, times: &[f64], alpha: f64, v: MatMut<'_, Complex64>) -> Result<()> {
        if v.ncols() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: v.ncols(),
            });
        }
        with_fixed_zero_times(self.ambient, times, v, |v| {
            self.apply_spectral_columns(v, |c, lambda| group_phase(times[c], alpha, lambda))
        })
    }

    /// `e^{i t_c L}` applied to column `c` of `v`, in place.
    pub fn apply_exp_columns(&self, times: &[f64], v: MatMut<'_, Complex64>) -> Result<()> {
        if v.ncols() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: v.ncols(),
            });
        }
        with_fixed_zero_times(self.ambient, times, v, |v| {
            self.apply_spectral_columns(v, |c, lambda| Complex64::cis(times[c] * lambda))
        })
    }
}

/// Runs `apply` and restores the columns with `t = 0` bit for bit.
fn with_fixed_zero_times(
    ambient: usize,
    times: &[f64],
    mut v: MatMut<'_, Complex64>,
    apply: impl FnOnce(MatMut<'_, Complex64>) -> Result<()>,
) -> Result<()> {
    if v.nrows() != ambient {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: v.nrows(),
        });
    }
    let zero: Vec<usize> = (0..times.len()).filter(|&c| times[c] == 0.0).collect();
    if zero.len() == times.len() {
        return Ok(());
    }
    let saved: Vec<Vec<Complex64>> = zero
        .iter()
        .map(|&c| (0..v.nrows()).map(|r| v[(r, c)]).collect())
        .collect();
    apply(v.rb_mut())?;
    for (&c, col) in zero.iter().zip(saved) {
        for (r, z) in col.into_iter().enumerate() {
            v[(r, c)] = z;
        }
    }
    Ok(())
}

/// `e^{i alpha t (1 + 2 lambda)}`.
pub fn group_phase(t: f64, alpha: f64, lambda: f64) -> Complex64 {
    Complex64::cis(alpha * t * (1.0 + 2.0 * lambda))
}

/// `e^{i alpha t (I + 2L)} v` for a single vector. `alpha` is `+1` for
/// Benjamin-Ono and `-1` for Calogero-Moser.
pub fn apply_group(e: &HermitianEig, t: f64, alpha: f64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.len() != e.ambient() {
        return Err(Error::DimensionMismatch {
            expected: e.ambient(),
            found: v.len(),
        });
    }
    let mut m = Mat::from_fn(v.len(), 1, |r, _| v[r]);
    e.apply_group_columns(&[t], alpha, m.as_mut())?;
    Ok((0..v.len()).map(|r| m[(r, 0)]).collect())
}

/// Cache key: one decomposition per operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub equation: Equation,
    pub n: usize,
    pub ambient: usize,
    pub data_digest: String,
}

impl CacheKey {
    pub fn for_potential(potential: &LaxPotential, n: usize, ambient: usize) -> Self {
        Self {
            equation: potential.equation(),
            n,
            ambient,
            data_digest: potential.digest().to_string(),
        }
    }
}

type Slot = Arc<OnceLock<Result<Arc<HermitianEig>>>>;

/// Thread-safe get-or-build store of decompositions with at-most-once
/// construction per key.
#[derive(Debug, Default)]
pub struct PropagatorCache {
    slots: Mutex<HashMap<CacheKey, Slot>>,
    decompositions: AtomicUsize,
    hits: AtomicUsize,
}

impl PropagatorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_build(
        &self,
        key: CacheKey,
        factory: impl FnOnce() -> Result<LaxMatrix>,
    ) -> Result<Arc<HermitianEig>> {
        let slot = {
            let mut slots = self.slots.lock().unwrap_or_else(|p| p.into_inner());
            Arc::clone(slots.entry(key).or_default())
        };
        let mut built = false;
        let result = slot.get_or_init(|| {
            built = true;
            self.decompositions.fetch_add(1, Ordering::Relaxed);
            factory().and_then(|m| eig_hermitian(&m)).map(Arc::new)
        });
        if !built {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        result.clone()
    }

    /// Decomposition of `L_n` for `potential` at ambient size `M`.
    pub fn get_or_build_for(&self, potential: &LaxPotential, n: usize, ambient: usize) -> Result<Arc<HermitianEig>> {
        self.get_or_build(CacheKey::for_potential(potential, n, ambient), || {
            potential.build(n, ambient)
        })
    }

    /// Number of eigendecompositions performed so far.
    pub fn decompositions(&self) -> usize {
        self.decompositions.load(Ordering::Relaxed)
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.slots.lock().unwrap_or_else(|p| p.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Largest singular value.
pub fn operator_norm(m: MatRef<'_, Complex64>) -> Result<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    let sv = m.singular_values().map_err(|e| Error::Svd(format!("{e:?}")))?;
    Ok(sv.into_iter().fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaMethod {
    Formula,
    Search,
}

/// Resolvent shift past which the Lax perturbation is at most half the free
/// operator.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct KappaZero {
    pub equation: Equation,
    pub value: f64,
    pub method: KappaMethod,
}

/// Largest exponent of the geometric search grid `1, 2, 4, .., 2^20`.
pub const KAPPA_GRID_MAX_EXPONENT: i32 = 20;

/// Truncation levels covered by the Calogero-Moser search: powers of two up
/// to `M`, plus `M/2` and `M`.
pub fn kappa_search_levels(ambient: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = std::iter::successors(Some(1usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= ambient)
        .collect();
    ns.push(ambient / 2);
    ns.push(ambient);
    ns.retain(|&n| n >= 1);
    ns.sort_unstable();
    ns.dedup();
    ns
}

pub fn find_kappa_zero(potential: &LaxPotential, ambient: usize) -> Result<KappaZero> {
    if ambient < 4 {
        return Err(Error::Precondition(format!(
            "kappa_0 search needs M >= 4, got {ambient}"
        )));
    }
    let equation = potential.equation();
    if equation.is_bo() {
        let mass = potential.l2_norm().powi(2);
        return Ok(KappaZero {
            equation,
            value: (12.0 * mass).max(1.0),
            method: KappaMethod::Formula,
        });
    }

    let blocks: Vec<Mat<Complex64>> = kappa_search_levels(ambient)
        .into_iter()
        .map(|n| {
            potential
                .perturbation(n, ambient)
                .map(|p| p.as_ref().submatrix(0, 0, n, n).to_owned())
        })
        .collect::<Result<_>>()?;
    let mut last = f64::INFINITY;
    for exp in 0..=KAPPA_GRID_MAX_EXPONENT {
        let kappa = 2f64.powi(exp);
        let mut worst = 0.0f64;
        for g in &blocks {
            let scaled = Mat::from_fn(g.nrows(), g.ncols(), |j, k| g[(j, k)] / (k as f64 + kappa));
            worst = worst.max(operator_norm(scaled.as_ref())?);
            if worst > 0.5 {
                break;
            }
        }
        last = worst;
        if worst <= 0.5 {
            return Ok(KappaZero {
                equation,
                value: kappa,
                method: KappaMethod::Search,
            });
        }
    }
    Err(Error::KappaSearchExhausted { last_norm: last })
}
