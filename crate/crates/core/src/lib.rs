// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact-in-time spectral schemes for the Benjamin-Ono and continuum
//! Calogero-Moser equations on the torus, built on explicit formulas of the
//! form `u(t, k) = <(e^{+-it(I+2L)} S*)^k Pi u0, 1>`.
//!
//! Layout:
//!
//! * [`spectral`]: Fourier coefficients, projections, norms, profiles.
//! * [`lax`]: truncated Lax operators as Hermitian matrices.
//! * [`propagator`]: eigendecompositions, unitary groups, the cache, `kappa_0`.
//! * [`scheme`]: schedules and the iteration itself.
//! * [`diagnostics`]: operator-bound suites and convergence studies.

// `!(x >= a)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod lax;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod propagator;
pub mod scheme;
pub mod spectral;

pub use error::{Error, Result};
pub use lax::{Equation, LaxMatrix, LaxPotential, Sign};
pub use num_complex::Complex64;
pub use propagator::{HermitianEig, KappaZero, PropagatorCache};
pub use scheme::{make_schedule, run_scheme, Schedule, ScheduleKind, SchemeConfig, SchemeOutput};
pub use spectral::{HardyVector, InitialProfile, NormSpec, RealSpectrum};
