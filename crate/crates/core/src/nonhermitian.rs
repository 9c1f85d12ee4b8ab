// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! PT-symmetric bath reduced to a Hermitian one.
//!
//! A similarity transform followed by a per-mode Bogoliubov rotation maps the
//! bath with non-Hermiticity `τ` onto the standard model with
//! `Ã = f^{−3/2} A` and `B̃ = f^{1/2} B`, where `f = 1 + 4τ²`. Every
//! correlator of the non-Hermitian model is the Hermitian correlator at
//! `(Ã, B̃)`.
//!
//! The Bogoliubov coefficients behind the map, for the mode Hamiltonian
//! `ε a†a + (Δ/2)(a² + a†²)` with `ε = ω(1+2τ²)` and `Δ = 2ωτ²`, are
//! `v² = (ε/ω̃ + 1)/2`, `u² = (ε/ω̃ − 1)/2`, `u ≤ 0`, with `ω̃ = √(ε² − Δ²)`;
//! they give `ω̃ = √f ω` and `λ̃ = (v + u) λ = f^{−1/4} λ`.
//! [`crate::oracle::bogoliubov_mode`] recovers them numerically.

use crate::analytic;
use crate::error::Result;
use crate::spectral::{BathSpec, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormalizedParams {
    pub a_tilde: f64,
    pub b_tilde: f64,
    /// `1 + 4τ²`.
    pub factor: f64,
}

fn from_factor(a: f64, b: f64, factor: f64) -> RenormalizedParams {
    let root = factor.sqrt();
    RenormalizedParams {
        a_tilde: a / (factor * root),
        b_tilde: b * root,
        factor,
    }
}

pub fn renormalize(bath: &BathSpec) -> RenormalizedParams {
    let tau = bath.tau();
    from_factor(bath.a(), bath.b(), 1.0 + 4.0 * tau * tau)
}

/// Hermitian bath `(s, Ã, B̃, τ = 0)` with the same correlators.
pub fn effective_bath(bath: &BathSpec) -> Result<BathSpec> {
    let r = renormalize(bath);
    BathSpec::new(bath.s(), r.a_tilde, r.b_tilde)
}

/// Renormalized decoherence factor `γ̃(t)` at `T = 0`, `ε = 0`.
pub fn gamma_nh(bath: &BathSpec, t: f64) -> Result<f64> {
    analytic::gamma_closed(&effective_bath(bath)?, t)
}

/// `P_x(t) = e^{−γ̃(t)}` at `T = 0`, `ε = 0`.
pub fn p_x_nh(bath: &BathSpec, t: f64) -> Result<f64> {
    analytic::p_x(&ModelSpec::unbiased(effective_bath(bath)?), t)
}

fn p_x_at_factor(bath: &BathSpec, factor: f64, t: f64) -> Result<f64> {
    let r = from_factor(bath.a(), bath.b(), factor);
    let eff = BathSpec::new(bath.s(), r.a_tilde, r.b_tilde)?;
    analytic::p_x(&ModelSpec::unbiased(eff), t)
}

/// Finite-difference `∂P_x/∂τ`, with the Ohmic asymptotic law alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauDerivative {
    pub value: f64,
    pub step: f64,
    /// Ohmic asymptotic prediction for the window `B̃t` falls in; `None`
    /// away from `s = 1`.
    pub asymptotic: Option<f64>,
}

/// Central difference in `τ` with step `max(1e−6, 1e−6 τ)`.
///
/// `P_x` depends on `τ` only through `1 + 4τ²`, so the stencil is evaluated
/// in that variable; at `τ = 0` both sides coincide and the result is 0.
pub fn dp_dtau(bath: &BathSpec, t: f64) -> Result<TauDerivative> {
    let tau = bath.tau();
    let h = (1e-6 * tau).max(1e-6);
    let (lo, hi) = (tau - h, tau + h);
    let p_hi = p_x_at_factor(bath, 1.0 + 4.0 * hi * hi, t)?;
    let p_lo = p_x_at_factor(bath, 1.0 + 4.0 * lo * lo, t)?;
    let value = (p_hi - p_lo) / (2.0 * h);
    let asymptotic = if bath.s() == 1.0 {
        let bt = renormalize(bath).b_tilde * t;
        Some(if bt < 1.0 {
            ohmic_dp_dtau_short(bath, t)
        } else {
            ohmic_dp_dtau_long(bath, t)
        })
    } else {
        None
    };
    Ok(TauDerivative {
        value,
        step: h,
        asymptotic,
    })
}

/// Ohmic short-time law `2/(1+4τ²) · Ã (B̃t)² τ`.
pub fn ohmic_dp_dtau_short(bath: &BathSpec, t: f64) -> f64 {
    let r = renormalize(bath);
    let bt = r.b_tilde * t;
    2.0 / r.factor * r.a_tilde * bt * bt * bath.tau()
}

/// Ohmic long-time law `12/(1+4τ²) · (B̃t)^{−Ã} Ã ln(B̃t) τ`.
pub fn ohmic_dp_dtau_long(bath: &BathSpec, t: f64) -> f64 {
    let r = renormalize(bath);
    let bt = r.b_tilde * t;
    12.0 / r.factor * bt.powf(-r.a_tilde) * r.a_tilde * bt.ln() * bath.tau()
}
