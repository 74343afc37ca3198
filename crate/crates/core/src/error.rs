// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::lax::Equation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("resolvent shift kappa must be >= 1, got {0}")]
    InvalidKappa(f64),

    #[error("spectrum is not Hermitian-symmetric at frequency {frequency}")]
    NotHermitianSymmetric { frequency: i64 },

    #[error("zero mode has imaginary part {0:e}; a real field needs a real mean")]
    ComplexZeroMode(f64),

    #[error("mode {k0} lies outside the bandwidth {bandwidth}")]
    ModeOutOfBand { k0: i64, bandwidth: usize },

    #[error("Hardy data cannot carry the negative frequency {0}")]
    NegativeHardyMode(i64),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("bandwidth must be positive")]
    ZeroBandwidth,

    #[error("truncation parameter n = {n} exceeds the ambient size M = {ambient}")]
    TruncationExceedsAmbient { n: usize, ambient: usize },

    #[error("ambient size must be positive")]
    EmptyAmbient,

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver failed for {equation} with n = {n}, M = {ambient}: {reason}")]
    Eigensolver {
        equation: Equation,
        n: usize,
        ambient: usize,
        reason: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("schedule needs K >= 1")]
    EmptySchedule,

    #[error("custom schedule has {found} entries, expected K = {expected}")]
    ScheduleLength { expected: usize, found: usize },

    #[error("custom schedule entry n({index}) = {value} is negative")]
    NegativeScheduleEntry { index: usize, value: i64 },

    #[error("focusing data has mass {mass:.6} (squared L2 norm); the focusing flow needs it below 1")]
    FocusingThreshold { mass: f64 },

    #[error("time {0} was not part of this run")]
    UnknownTime(f64),

    #[error("{0} is only defined for Benjamin-Ono output")]
    RequiresRealField(&'static str),

    #[error("{0} is only defined for Calogero-Moser output")]
    RequiresHardyField(&'static str),

    #[error("no kappa_0 <= 2^20 tames the perturbation (last norm {last_norm:.4}); try data with smaller L2 norm")]
    KappaSearchExhausted { last_norm: f64 },

    #[error("singular value decomposition failed: {0}")]
    Svd(String),

    #[error("scheme failed at iteration k = {k} (n(k) = {n}): {source}")]
    SchemeStep { k: usize, n: usize, source: Box<Error> },

    #[error("ambient size {ambient} is below the largest truncation parameter {needed}")]
    AmbientTooSmall { ambient: usize, needed: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
