// Copyright 2026 bathtag Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by all modules.

use thiserror::Error;

/// Failure modes of bath, probe, and oracle computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bosonic occupation requested at beta = 0 where it diverges.
    #[error("bosonic occupation diverges at zero inverse temperature")]
    DivergentOccupation,

    /// Thermal ratio requested at beta = 0 where it diverges.
    #[error("thermal ratio diverges at zero inverse temperature")]
    DivergentThermalRatio,

    /// A parameter is outside its physical or documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Both hypotheses coincide at zero temperature; no optimum exists.
    #[error("no discrimination at zero temperature")]
    ZeroTemperatureDegenerate,

    /// Covariance matrix is below the vacuum limit.
    #[error("unphysical covariance: det sigma = {0} < 1")]
    UnphysicalCovariance(f64),

    /// Closed-form Chernoff expression used outside its validity regime.
    #[error("closed form precondition violated: {0}")]
    ClosedFormPrecondition(String),

    /// Fock-space truncation too small for the requested state or evolution.
    #[error("increase truncation: {0}")]
    IncreaseTruncation(String),

    /// Integrator produced a population below the tolerated negativity.
    #[error("step size too large: {0}")]
    StepSizeTooLarge(String),

    /// An objective function returned a non-finite value during a search.
    #[error("non-finite objective value at {0}")]
    NonFiniteObjective(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
