// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Qubit decoherence in the pure-dephasing spin-boson model.
//!
//! The bath is a continuum of oscillators with the power-law spectral function
//! `J(ω) = π A B^{1-s} ω^s e^{-ω/B}`. Because the qubit Hamiltonian commutes
//! with the coupling, the reduced dynamics is exactly solvable at zero
//! temperature and every correlator reduces to two integrals over `J`:
//! the decoherence factor `γ(t)` and the phase integral `I(t)`.
//!
//! * [`spectral`] holds the parameter records and `J(ω)`.
//! * [`analytic`] evaluates `γ`, `I`, `φ = cos I`, `P_x` and `C_x` in closed form.
//! * [`asymptotics`] predicts short/long-time laws, crossover scales, and fits
//!   power laws to sampled series.
//! * [`nonhermitian`] maps a PT-symmetric bath onto a Hermitian one with
//!   renormalized `(Ã, B̃)`.
//! * [`oracle`] computes the same quantities independently, by adaptive
//!   quadrature and by explicit sums over a discretized bath.
//! * [`checks`] bundles the cross-validation suite run by `dephasing verify`.
//!
//! Units: `ħ = k_B = 1`; `B` is the only energy scale and times are raw `t`.

pub mod analytic;
pub mod asymptotics;
pub mod checks;
pub mod cli;
mod error;
pub mod nonhermitian;
pub mod numerics;
pub mod oracle;
pub mod spectral;

pub use error::{Error, FitError, Result};
pub use spectral::{BathClass, BathSpec, ModelSpec};
