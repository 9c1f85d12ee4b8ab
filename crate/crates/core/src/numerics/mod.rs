// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Special functions and quadrature shared by the evaluation and oracle paths.

mod elementary;
mod gamma;
mod quadrature;

pub use elementary::{
    cos_pi, pow_one_plus_sq, sin_pi, sinc, stable_log1p_sq, tan_pi, ulp_distance,
};
pub(crate) use gamma::gamma_unchecked;
pub use gamma::{gamma_fn, POLE_EXCLUSION};
pub use quadrature::{
    integrate_semi_infinite, integrate_semi_infinite_scaled, Integral, IntegrandScales,
    QuadratureConfig, SPLIT_FACTOR,
};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
