// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent numerical ground truth for the closed forms.
//!
//! Three routes that share no code with [`crate::analytic`] beyond `J(ω)`:
//! adaptive quadrature of the defining integrals (finite temperature
//! included), explicit sums over a discretized bath, and the reduced density
//! matrix built from the quadrature decoherence factor.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{CorrelatorPoint, CorrelatorSeries, Source, TimeGrid};
use crate::error::{Error, Result};
use crate::numerics::{
    integrate_semi_infinite_scaled, sinc, Integral, IntegrandScales, QuadratureConfig,
};
use crate::spectral::{spectral_density, BathSpec, ModelSpec};

fn require_hermitian(bath: &BathSpec) -> Result<()> {
    if bath.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NonHermitianBath { tau: bath.tau() })
    }
}

fn require_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "t",
            value: t,
            reason: "time must be finite and >= 0",
        })
    }
}

fn require_temperature(temperature: f64) -> Result<()> {
    if temperature.is_finite() && temperature >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "T",
            value: temperature,
            reason: "temperature must be finite and >= 0",
        })
    }
}

/// `coth(ω/2T)`, equal to 1 at `T = 0`.
fn thermal_factor(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        1.0
    } else {
        1.0 / (0.5 * omega / temperature).tanh()
    }
}

/// `J(ω)/π` written as `A B (ω/B)^s e^{−ω/B}`.
fn density_over_pi(bath: &BathSpec, omega: f64) -> f64 {
    let u = omega / bath.b();
    bath.a() * bath.b() * (bath.s() * u.ln() - u).exp()
}

/// `γ(t) = ∫ J(ω)/(πω²) (1 − cos ωt) coth(ω/2T) dω` by quadrature.
///
/// At `T > 0` only `s > 1` is accepted.
pub fn gamma_quadrature(model: &ModelSpec, t: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    let bath = model.bath();
    require_hermitian(bath)?;
    require_time(t)?;
    let temperature = model.temperature();
    if temperature > 0.0 && bath.s() <= 1.0 {
        return Err(Error::InfraredDivergence {
            s: bath.s(),
            temperature,
        });
    }
    if t == 0.0 || bath.a() == 0.0 {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let kernel = |w: f64| {
        // (1 − cos ωt)/ω² = 2 (sin(ωt/2)/ω)², finite at ω → 0.
        let q = 0.5 * t * sinc(0.5 * w * t);
        density_over_pi(bath, w) * 2.0 * q * q * thermal_factor(w, temperature)
    };
    let scales = IntegrandScales {
        cutoff: bath.b(),
        frequency: t,
    };
    integrate_semi_infinite_scaled(kernel, scales, cfg)
}

/// `I(t) = ∫ J(ω)/(πω²) sin ωt dω` by quadrature.
pub fn phase_quadrature(bath: &BathSpec, t: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    require_hermitian(bath)?;
    require_time(t)?;
    if t == 0.0 || bath.a() == 0.0 {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let kernel = |w: f64| density_over_pi(bath, w) * t * sinc(w * t) / w;
    let scales = IntegrandScales {
        cutoff: bath.b(),
        frequency: t,
    };
    integrate_semi_infinite_scaled(kernel, scales, cfg)
}

/// Equilibrium correlator at any temperature,
/// `e^{−γ}[cos εt cos I + sin εt sin I tanh(ε/2T)]`, both integrals by
/// quadrature. `tanh(ε/2T)` becomes `sgn ε` at `T = 0`, with `sgn 0 = 0`.
pub fn c_x_finite_t(model: &ModelSpec, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let gamma = gamma_quadrature(model, t, cfg)?.value;
    let phase = phase_quadrature(model.bath(), t, cfg)?.value;
    let eps = model.epsilon();
    let temperature = model.temperature();
    let polarization = if eps == 0.0 {
        0.0
    } else if temperature == 0.0 {
        eps.signum()
    } else {
        (0.5 * eps / temperature).tanh()
    };
    let (se, ce) = (eps * t).sin_cos();
    Ok((-gamma).exp() * (ce * phase.cos() + se * phase.sin() * polarization))
}

/// Reduced 2×2 qubit density matrix in the `σ_z` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(pub [[Complex64; 2]; 2]);

impl DensityMatrix {
    /// Spin polarized along `+x`.
    pub fn plus_x() -> Self {
        let h = Complex64::new(0.5, 0.0);
        Self([[h, h], [h, h]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// `Tr[ρ σ_x]`.
    pub fn sigma_x(&self) -> f64 {
        (self.0[0][1] + self.0[1][0]).re
    }

    /// Largest deviation from `ρ = ρ†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.0;
        let off = (m[0][1] - m[1][0].conj()).norm();
        off.max(m[0][0].im.abs()).max(m[1][1].im.abs())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let (p, q) = (m[0][0].re, m[1][1].re);
        let c = 0.5 * (m[0][1] + m[1][0].conj());
        let mean = 0.5 * (p + q);
        let radius = (0.25 * (p - q) * (p - q) + c.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }
}

/// Evolves `rho0` under pure dephasing: coherences acquire
/// `e^{−γ(t)} e^{∓iεt}`, populations are conserved.
pub fn evolve_density_matrix(
    model: &ModelSpec,
    rho0: &DensityMatrix,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<DensityMatrix> {
    let gamma = gamma_quadrature(model, t, cfg)?.value;
    let decay = (-gamma).exp();
    let rotation = Complex64::from_polar(decay, -model.epsilon() * t);
    let m = &rho0.0;
    Ok(DensityMatrix([
        [m[0][0], rotation * m[0][1]],
        [rotation.conj() * m[1][0], m[1][1]],
    ]))
}

/// `P_x(t) = Tr[ρ_S(t) σ_x]` for the spin prepared along `+x`.
pub fn p_x_density_matrix(model: &ModelSpec, t: f64) -> Result<f64> {
    let rho = evolve_density_matrix(
        model,
        &DensityMatrix::plus_x(),
        t,
        &QuadratureConfig::default(),
    )?;
    Ok(rho.sigma_x())
}

/// Quadrature-oracle series on `grid` (zero temperature quantities plus the
/// finite-temperature `C_x`).
pub fn quadrature_series(
    model: &ModelSpec,
    grid: &TimeGrid,
    cfg: &QuadratureConfig,
) -> Result<CorrelatorSeries> {
    let points = grid
        .times()
        .par_iter()
        .map(|&t| {
            let gamma = gamma_quadrature(model, t, cfg)?.value;
            let phase_integral = phase_quadrature(model.bath(), t, cfg)?.value;
            let envelope = (-gamma).exp();
            Ok(CorrelatorPoint {
                t,
                gamma,
                phase_integral,
                phi: phase_integral.cos(),
                p_x: envelope * (model.epsilon() * t).cos(),
                c_x: c_x_finite_t(model, t, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CorrelatorSeries::new(*model, grid.clone(), points, Source::QuadratureOracle)
}

/// Frequency layout of a discretized bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    /// `ω_k = k Δω`, `k = 1..K`, `Δω = ω_max / K`. Sums revive exactly
    /// after `2π/Δω`.
    Linear { omega_max: f64 },
    /// Midpoints of `K` equal bins in `ln ω` on `[ω_min, ω_max]`.
    Log { omega_min: f64, omega_max: f64 },
}

impl Sampling {
    /// Log sampling over `[1e−16 B, 50 B]`.
    pub fn default_for(bath: &BathSpec) -> Self {
        Sampling::Log {
            omega_min: 1e-16 * bath.b(),
            omega_max: 50.0 * bath.b(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: f64,
    pub lambda: f64,
}

/// Finite set of oscillators with `J(ω) ≈ π Σ λ_k² δ(ω − ω_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    modes: Vec<Mode>,
    sampling: Sampling,
    /// Mode spacing near the cutoff, where the spectral weight sits.
    spacing: f64,
}

pub const DEFAULT_MODE_COUNT: usize = 10_000;

impl DiscreteBath {
    /// Bins `J` of a Hermitian bath into `count` modes with
    /// `λ_k² = J(ω_k) w_k / π`.
    pub fn new(bath: &BathSpec, count: usize, sampling: Sampling) -> Result<Self> {
        require_hermitian(bath)?;
        if count == 0 {
            return Err(Error::Domain {
                name: "K",
                value: 0.0,
                reason: "a discrete bath needs at least one mode",
            });
        }
        let n = count as f64;
        let (nodes, spacing): (Vec<(f64, f64)>, f64) = match sampling {
            Sampling::Linear { omega_max } => {
                positive("omega_max", omega_max)?;
                let dw = omega_max / n;
                ((1..=count).map(|k| (k as f64 * dw, dw)).collect(), dw)
            }
            Sampling::Log {
                omega_min,
                omega_max,
            } => {
                positive("omega_min", omega_min)?;
                positive("omega_max", omega_max)?;
                if omega_min >= omega_max {
                    return Err(Error::Domain {
                        name: "omega_min",
                        value: omega_min,
                        reason: "log sampling needs omega_min < omega_max",
                    });
                }
                let (lo, hi) = (omega_min.ln(), omega_max.ln());
                let du = (hi - lo) / n;
                let nodes = (0..count)
                    .map(|k| {
                        let w = (lo + (k as f64 + 0.5) * du).exp();
                        (w, w * du)
                    })
                    .collect();
                (nodes, bath.b() * du)
            }
        };
        let modes = nodes
            .into_iter()
            .map(|(omega, width)| {
                let j = spectral_density(bath, omega)?;
                Ok(Mode {
                    omega,
                    lambda: (j * width / std::f64::consts::PI).sqrt(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modes,
            sampling,
            spacing,
        })
    }

    /// Default layout: `K = 10⁴` log-spaced modes.
    pub fn with_defaults(bath: &BathSpec) -> Result<Self> {
        Self::new(bath, DEFAULT_MODE_COUNT, Sampling::default_for(bath))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn sampling(&self) -> Sampling {
        self.sampling
    }

    /// `Σ λ_k²`, the discrete counterpart of `∫ J/π dω`.
    pub fn total_weight(&self) -> f64 {
        pairwise_sum(
            &self
                .modes
                .iter()
                .map(|m| m.lambda * m.lambda)
                .collect::<Vec<_>>(),
        )
    }

    /// Time beyond which finite-size revivals may contaminate sums.
    pub fn recurrence_window(&self) -> f64 {
        std::f64::consts::PI / self.spacing
    }

    /// Each mode of the non-Hermitian bath rotated by its own Bogoliubov
    /// transformation.
    pub fn bogoliubov(&self, tau: f64) -> Result<Self> {
        let modes = self
            .modes
            .iter()
            .map(|m| {
                let b = bogoliubov_mode(m.omega, tau)?;
                Ok(Mode {
                    omega: b.omega_tilde,
                    lambda: b.coupling_scale * m.lambda,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let stretch = modes
            .first()
            .zip(self.modes.first())
            .map_or(1.0, |(new, old)| new.omega / old.omega);
        let sampling = match self.sampling {
            Sampling::Linear { omega_max } => Sampling::Linear {
                omega_max: omega_max * stretch,
            },
            Sampling::Log {
                omega_min,
                omega_max,
            } => Sampling::Log {
                omega_min: omega_min * stretch,
                omega_max: omega_max * stretch,
            },
        };
        Ok(Self {
            modes,
            sampling,
            spacing: self.spacing * stretch,
        })
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

/// Result of the finite-bath sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSum {
    pub gamma: f64,
    pub phase: f64,
    /// `t` lies past [`DiscreteBath::recurrence_window`].
    pub beyond_recurrence: bool,
}

const CHUNK: usize = 512;

/// `γ = Σ (λ²/ω²)(1 − cos ωt) coth(ω/2T)` and `I = Σ (λ²/ω²) sin ωt`.
///
/// Chunks are summed in parallel and combined by a fixed pairwise tree, so
/// the result does not depend on thread scheduling.
pub fn gamma_mode_sum(db: &DiscreteBath, t: f64, temperature: f64) -> Result<ModeSum> {
    require_time(t)?;
    require_temperature(temperature)?;
    let partials: Vec<(f64, f64)> = db
        .modes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut g = Vec::with_capacity(chunk.len());
            let mut p = Vec::with_capacity(chunk.len());
            for m in chunk {
                let weight = (m.lambda / m.omega) * (m.lambda / m.omega);
                let half = (0.5 * m.omega * t).sin();
                g.push(weight * 2.0 * half * half * thermal_factor(m.omega, temperature));
                p.push(weight * (m.omega * t).sin());
            }
            (pairwise_sum(&g), pairwise_sum(&p))
        })
        .collect();
    let (g, p): (Vec<f64>, Vec<f64>) = partials.into_iter().unzip();
    Ok(ModeSum {
        gamma: pairwise_sum(&g),
        phase: pairwise_sum(&p),
        beyond_recurrence: t > db.recurrence_window(),
    })
}

/// Mode-sum series of a Hermitian model on `grid`.
pub fn mode_sum_series(
    model: &ModelSpec,
    db: &DiscreteBath,
    grid: &TimeGrid,
) -> Result<CorrelatorSeries> {
    let eps = model.epsilon();
    let polarization = if eps == 0.0 {
        0.0
    } else if model.temperature() == 0.0 {
        eps.signum()
    } else {
        (0.5 * eps / model.temperature()).tanh()
    };
    let points = grid
        .times()
        .iter()
        .map(|&t| {
            let sum = gamma_mode_sum(db, t, model.temperature())?;
            let envelope = (-sum.gamma).exp();
            let (se, ce) = (eps * t).sin_cos();
            Ok(CorrelatorPoint {
                t,
                gamma: sum.gamma,
                phase_integral: sum.phase,
                phi: sum.phase.cos(),
                p_x: envelope * ce,
                c_x: envelope * (ce * sum.phase.cos() + se * sum.phase.sin() * polarization),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CorrelatorSeries::new(*model, grid.clone(), points, Source::DiscreteBathOracle)
}

/// Sum by recursive halving; rounding error grows like `log n`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// One oscillator of the non-Hermitian bath after diagonalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMode {
    pub omega_tilde: f64,
    /// `a = v b + u b†`.
    pub u: f64,
    pub v: f64,
    /// `λ̃/λ = v + u`.
    pub coupling_scale: f64,
}

/// Diagonalizes `ε a†a + (Δ/2)(a² + a†²)` with `ε = ω(1+2τ²)`, `Δ = 2ωτ²`.
///
/// The Heisenberg map `(a, a†) ↦ ([a,H], [a†,H])` is the 2×2 matrix
/// `[[ε, Δ], [−Δ, −ε]]`; its positive eigenvalue is `ω̃` and the eigenvector,
/// scaled to unit symplectic norm, gives the Bogoliubov coefficients.
pub fn bogoliubov_mode(omega: f64, tau: f64) -> Result<BogoliubovMode> {
    positive("omega", omega)?;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::Domain {
            name: "tau",
            value: tau,
            reason: "non-Hermiticity must be finite and >= 0",
        });
    }
    let eps = omega * (1.0 + 2.0 * tau * tau);
    let delta = 2.0 * omega * tau * tau;
    // Characteristic polynomial λ² − (ε² − Δ²) = 0; ε² − Δ² = ω²(1 + 4τ²).
    let det = (eps - delta) * (eps + delta);
    let omega_tilde = det.sqrt();
    // b = x a + y a† with [b, H] = ω̃ b: (ε − ω̃) x − Δ y = 0.
    let (x, y) = if delta == 0.0 {
        (1.0, 0.0)
    } else {
        let x = delta;
        let y = eps - omega_tilde;
        let norm = (x * x - y * y).sqrt();
        (x / norm, y / norm)
    };
    // Inverting b = x a + y a† with x² − y² = 1 gives a = x b − y b†.
    let (v, u) = (x, -y);
    Ok(BogoliubovMode {
        omega_tilde,
        u,
        v,
        coupling_scale: v + u,
    })
}
