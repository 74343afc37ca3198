// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference implementations used only to check the production path.
//!
//! Nothing here shares code with the eigendecomposition route: operators are
//! assembled column by column from their action on basis vectors, and the
//! exponential is a scaled Taylor series followed by repeated squaring.

use faer::Mat;
use num_complex::Complex64;

use crate::lax::Equation;

const TAYLOR_TERMS: usize = 60;

fn one_norm(a: &Mat<Complex64>) -> f64 {
    (0..a.ncols())
        .map(|l| (0..a.nrows()).map(|j| a[(j, l)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn matmul_naive(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<Complex64> {
    Mat::from_fn(a.nrows(), b.ncols(), |j, l| {
        (0..a.ncols()).fold(Complex64::new(0.0, 0.0), |acc, m| acc + a[(j, m)] * b[(m, l)])
    })
}

/// `e^A` by a 60-term Taylor series on `A / 2^s` and `s` squarings.
pub fn expm_series(a: &Mat<Complex64>) -> Mat<Complex64> {
    let size = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings);
    let b = Mat::from_fn(size, size, |j, l| a[(j, l)] * scale);

    let mut sum = Mat::<Complex64>::identity(size, size);
    let mut term = Mat::<Complex64>::identity(size, size);
    for k in 1..=TAYLOR_TERMS {
        term = matmul_naive(&term, &b);
        let inv = 1.0 / k as f64;
        for j in 0..size {
            for l in 0..size {
                term[(j, l)] *= inv;
                sum[(j, l)] += term[(j, l)];
            }
        }
    }
    for _ in 0..squarings {
        sum = matmul_naive(&sum, &sum);
    }
    sum
}

/// `L_n` on `[0, M)` assembled from its action on each basis vector.
pub fn lax_by_columns(u: &dyn Fn(i64) -> Complex64, equation: Equation, n: usize, ambient: usize) -> Mat<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Mat::<Complex64>::zeros(ambient, ambient);
    for l in 0..ambient {
        // -i d/dx e_l = l e_l
        out[(l, l)] += Complex64::new(l as f64, 0.0);
        if l >= n {
            continue;
        }
        match equation {
            Equation::Bo => {
                // -(Pi_n u Pi_n e_l)(j) = -u(j - l)
                for j in 0..n {
                    out[(j, l)] -= u(j as i64 - l as i64);
                }
            }
            Equation::CcmFocusing | Equation::CcmDefocusing => {
                // h = Pi_n (conj(u) e_l): h(m) = conj(u(l - m))
                let h: Vec<Complex64> = (0..n).map(|m| u(l as i64 - m as i64).conj()).collect();
                // Pi_n (u h)
                let sign = if equation == Equation::CcmFocusing { -1.0 } else { 1.0 };
                for j in 0..n {
                    let mut acc = zero;
                    for (m, &hm) in h.iter().enumerate() {
                        acc += u(j as i64 - m as i64) * hm;
                    }
                    out[(j, l)] += acc * sign;
                }
            }
        }
    }
    out
}

/// The whole scheme at one time, with a fresh operator and series
/// exponential at every step. Returns `u_K(t, k)` for `0 <= k < K`.
pub fn brute_force_scheme(
    u: &dyn Fn(i64) -> Complex64,
    equation: Equation,
    schedule: &[usize],
    t: f64,
) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let ambient = schedule.iter().copied().max().unwrap_or(0).max(1);
    let alpha = equation.alpha();
    let mut state: Vec<Complex64> = (0..ambient)
        .map(|k| if k < schedule[0] { u(k as i64) } else { zero })
        .collect();
    let mut out = vec![state[0]];
    for &n in &schedule[1..] {
        let mut shifted: Vec<Complex64> = state[1..].to_vec();
        shifted.push(zero);
        let lax = lax_by_columns(u, equation, n, ambient);
        let a = Mat::from_fn(ambient, ambient, |j, l| {
            let id = if j == l { 1.0 } else { 0.0 };
            (lax[(j, l)] * 2.0 + Complex64::new(id, 0.0)) * Complex64::new(0.0, alpha * t)
        });
        let prop = expm_series(&a);
        state = (0..ambient)
            .map(|j| (0..ambient).fold(zero, |acc, l| acc + prop[(j, l)] * shifted[l]))
            .collect();
        out.push(state[0]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_exponential_of_diagonal() {
        let a = Mat::from_fn(3, 3, |j, l| {
            if j == l {
                Complex64::new(0.0, 1.7 * j as f64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let e = expm_series(&a);
        for j in 0..3 {
            assert!((e[(j, j)] - Complex64::cis(1.7 * j as f64)).norm() < 1e-13);
        }
    }
}
