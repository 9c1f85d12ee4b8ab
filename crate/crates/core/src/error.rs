// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("gamma function is singular at {x} (within the exclusion band of the pole at {pole})")]
    GammaPole { x: f64, pole: i64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         best estimate {estimate:e} with error bound {error:e}"
    )]
    Convergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error(
        "finite-temperature decoherence integral is restricted to s > 1 \
         (got s = {s}, T = {temperature}): the coth kernel is infrared divergent"
    )]
    InfraredDivergence { s: f64, temperature: f64 },

    #[error("closed-form correlators are zero-temperature only (got T = {temperature})")]
    FiniteTemperature { temperature: f64 },

    #[error("Hermitian closed forms take tau = 0 (got tau = {tau}); map the bath with nonhermitian::effective_bath first")]
    NonHermitianBath { tau: f64 },

    #[error("invalid time grid: {0}")]
    Grid(&'static str),

    #[error("power-law fit failed: {0}")]
    Fit(#[from] FitError),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least {needed} points in the window, found {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("window [{lo}, {hi}] is not inside the grid [{grid_lo}, {grid_hi}]")]
    WindowOutsideGrid {
        lo: f64,
        hi: f64,
        grid_lo: f64,
        grid_hi: f64,
    },

    #[error("value at t = {t} is not positive after plateau subtraction and absolute value")]
    NonPositive { t: f64 },

    #[error("values change sign inside the window (oscillation crosses zero; extract the envelope first)")]
    SignChange,
}
