// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Zero-temperature closed forms for `γ(t)`, `I(t)`, `φ(t)`, `P_x(t)`, `C_x(t)`.
//!
//! With `x = Bt`, `L = ½ ln(1+x²)` and `θ = atan x`:
//!
//! * `s = 1`: `γ = A L`, `I = A θ`.
//! * `s ≠ 1`: `γ = A Γ(s−1) [1 − e^{−(s−1)L} cos((s−1)θ)]`,
//!   `I = A Γ(s−1) e^{−(s−1)L} sin((s−1)θ)`.
//!
//! For `0 < |s−1| < LIMIT_SWITCH` the pole of `Γ(s−1)` cancels against the
//! bracket; there the first-order expansion in `s−1` about the Ohmic form is
//! used instead.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{cos_pi, gamma_fn, pow_one_plus_sq, sin_pi, stable_log1p_sq, EULER_GAMMA};
use crate::spectral::{BathSpec, ModelSpec};

/// Half-width of the band around `s = 1` evaluated by the expansion.
pub const LIMIT_SWITCH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Linear,
    Log,
}

/// Strictly increasing sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    spacing: Spacing,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Grid("a grid needs at least one time"));
        }
        if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::Grid("times must be finite and >= 0"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Grid("times must be strictly increasing"));
        }
        if spacing == Spacing::Log && times[0] <= 0.0 {
            return Err(Error::Grid("log spacing requires t > 0"));
        }
        Ok(Self { times, spacing })
    }

    /// `points` equally spaced times on `[t_min, t_max]`, both ends included.
    pub fn linear(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        check_range(t_min, t_max, points)?;
        let n = points - 1;
        let times = (0..points)
            .map(|k| {
                if k == n {
                    t_max
                } else {
                    t_min + (t_max - t_min) * (k as f64 / n as f64)
                }
            })
            .collect();
        Self::new(times, Spacing::Linear)
    }

    /// `points` times equally spaced in `log10 t`. Exponents are formed as
    /// `lo + (hi − lo)·k/(n−1)` so decade points land exactly.
    pub fn log(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        check_range(t_min, t_max, points)?;
        if t_min <= 0.0 {
            return Err(Error::Grid("log spacing requires t_min > 0"));
        }
        let (lo, hi) = (t_min.log10(), t_max.log10());
        let n = (points - 1) as f64;
        let times = (0..points)
            .map(|k| {
                if k == 0 {
                    t_min
                } else if k == points - 1 {
                    t_max
                } else {
                    10f64.powf(lo + (hi - lo) * k as f64 / n)
                }
            })
            .collect();
        Self::new(times, Spacing::Log)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn check_range(t_min: f64, t_max: f64, points: usize) -> Result<()> {
    if points < 2 {
        return Err(Error::Grid("need at least 2 points"));
    }
    if !(t_min.is_finite() && t_max.is_finite() && t_min >= 0.0) {
        return Err(Error::Grid("bounds must be finite and t_min >= 0"));
    }
    if t_min >= t_max {
        return Err(Error::Grid("t_min must be < t_max"));
    }
    Ok(())
}

/// Where a series came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    ClosedForm,
    QuadratureOracle,
    DiscreteBathOracle,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::ClosedForm => "closed",
            Source::QuadratureOracle => "quadrature",
            Source::DiscreteBathOracle => "modesum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorPoint {
    pub t: f64,
    pub gamma: f64,
    pub phase_integral: f64,
    pub phi: f64,
    pub p_x: f64,
    pub c_x: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorSeries {
    model: ModelSpec,
    grid: TimeGrid,
    points: Vec<CorrelatorPoint>,
    source: Source,
}

impl CorrelatorSeries {
    /// Pairs `points` with `grid`; their times must agree one to one.
    pub fn new(
        model: ModelSpec,
        grid: TimeGrid,
        points: Vec<CorrelatorPoint>,
        source: Source,
    ) -> Result<Self> {
        if points.len() != grid.len() || points.iter().zip(grid.times()).any(|(p, t)| p.t != *t) {
            return Err(Error::Grid("points are not aligned with the grid"));
        }
        Ok(Self {
            model,
            grid,
            points,
            source,
        })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn points(&self) -> &[CorrelatorPoint] {
        &self.points
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

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

/// Regime used to evaluate the closed forms at a given `s`.
enum Branch {
    Ohmic,
    NearOhmic(f64),
    Generic { eps: f64, gamma: f64 },
}

fn branch(s: f64) -> Result<Branch> {
    let eps = s - 1.0;
    if eps == 0.0 {
        Ok(Branch::Ohmic)
    } else if eps.abs() < LIMIT_SWITCH {
        Ok(Branch::NearOhmic(eps))
    } else {
        Ok(Branch::Generic {
            eps,
            gamma: gamma_fn(eps)?,
        })
    }
}

/// `γ(t)/A`, clamped at zero.
fn reduced_gamma(s: f64, x: f64) -> Result<f64> {
    let l = 0.5 * stable_log1p_sq(x);
    let g = match branch(s)? {
        Branch::Ohmic => l,
        Branch::NearOhmic(eps) => {
            let theta = x.atan();
            l - eps * (0.5 * (l * l - theta * theta) + EULER_GAMMA * l)
        }
        Branch::Generic { eps, gamma } => {
            let theta = x.atan();
            let decay = (-eps * l).exp();
            let half = (0.5 * eps * theta).sin();
            // 1 − e^{−εL} cos(εθ), written without cancellation.
            let bracket = -(-eps * l).exp_m1() + 2.0 * decay * half * half;
            gamma * bracket
        }
    };
    Ok(g.max(0.0))
}

/// `I(t)/A`.
fn reduced_phase(s: f64, x: f64) -> Result<f64> {
    let theta = x.atan();
    Ok(match branch(s)? {
        Branch::Ohmic => theta,
        Branch::NearOhmic(eps) => {
            let l = 0.5 * stable_log1p_sq(x);
            theta * (1.0 - eps * (EULER_GAMMA + l))
        }
        Branch::Generic { eps, gamma } => {
            let l = 0.5 * stable_log1p_sq(x);
            gamma * (-eps * l).exp() * (eps * theta).sin()
        }
    })
}

/// Decoherence factor `γ(t) ≥ 0` of a Hermitian bath at zero temperature.
pub fn gamma_closed(bath: &BathSpec, t: f64) -> Result<f64> {
    require_hermitian(bath)?;
    require_time(t)?;
    Ok(bath.a() * reduced_gamma(bath.s(), bath.b() * t)?)
}

/// Phase integral `I(t) = ∫ J(ω)/(πω²) sin(ωt) dω`.
pub fn phase_integral_closed(bath: &BathSpec, t: f64) -> Result<f64> {
    require_hermitian(bath)?;
    require_time(t)?;
    Ok(bath.a() * reduced_phase(bath.s(), bath.b() * t)?)
}

/// `e^{−γ(t)}`. At `s = 1` this is `(1+x²)^{−A/2}`, evaluated as one power.
fn coherence(bath: &BathSpec, t: f64) -> Result<f64> {
    let x = bath.b() * t;
    if bath.s() == 1.0 {
        Ok(pow_one_plus_sq(x, -0.5 * bath.a()))
    } else {
        Ok((-bath.a() * reduced_gamma(bath.s(), x)?).exp())
    }
}

/// `(cos I, sin I)`.
fn phase_trig(bath: &BathSpec, t: f64) -> Result<(f64, f64)> {
    let x = bath.b() * t;
    let a = bath.a();
    if bath.s() == 1.0 && x > 1.0 {
        // I = A(π/2 − atan(1/x)); keep the large quarter turn exact.
        let r = a * (1.0 / x).atan();
        let (cq, sq) = (cos_pi(0.5 * a), sin_pi(0.5 * a));
        let (cr, sr) = (r.cos(), r.sin());
        return Ok((cq * cr + sq * sr, sq * cr - cq * sr));
    }
    let phase = a * reduced_phase(bath.s(), x)?;
    Ok((phase.cos(), phase.sin()))
}

/// `φ(t) = cos I(t)`.
pub fn phi_fn(bath: &BathSpec, t: f64) -> Result<f64> {
    require_hermitian(bath)?;
    require_time(t)?;
    Ok(phase_trig(bath, t)?.0)
}

/// Non-equilibrium correlator `P_x(t) = e^{−γ(t)} cos(εt)` for the spin
/// prepared along `+x`.
pub fn p_x(model: &ModelSpec, t: f64) -> Result<f64> {
    Ok(evaluate_point(model, t)?.p_x)
}

/// Equilibrium correlator `C_x(t)`.
pub fn c_x(model: &ModelSpec, t: f64) -> Result<f64> {
    Ok(evaluate_point(model, t)?.c_x)
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// All closed-form quantities at one time.
pub fn evaluate_point(model: &ModelSpec, t: f64) -> Result<CorrelatorPoint> {
    model.require_zero_temperature()?;
    let bath = model.bath();
    let gamma = gamma_closed(bath, t)?;
    let phase_integral = phase_integral_closed(bath, t)?;
    let envelope = coherence(bath, t)?;
    let (cos_i, sin_i) = phase_trig(bath, t)?;
    let eps = model.epsilon();
    let (p_x, c_x) = if eps == 0.0 {
        (envelope, envelope * cos_i)
    } else {
        let (se, ce) = (eps * t).sin_cos();
        (
            envelope * ce,
            envelope * (ce * cos_i + se * sin_i * signum0(eps)),
        )
    };
    Ok(CorrelatorPoint {
        t,
        gamma,
        phase_integral,
        phi: cos_i,
        p_x,
        c_x,
    })
}

/// Closed-form series over `grid`, evaluated in parallel and kept in order.
pub fn evaluate_series(model: &ModelSpec, grid: &TimeGrid) -> Result<CorrelatorSeries> {
    let points = grid
        .times()
        .par_iter()
        .map(|&t| evaluate_point(model, t))
        .collect::<Result<Vec<_>>>()?;
    CorrelatorSeries::new(*model, grid.clone(), points, Source::ClosedForm)
}

/// Long-time value of `φ` implied by the closed forms.
pub fn phi_limit(bath: &BathSpec) -> f64 {
    let s = bath.s();
    if s == 1.0 {
        cos_pi(0.5 * bath.a())
    } else if s > 1.0 {
        1.0
    } else {
        f64::NAN
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ulp_distance;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn bath(s: f64, a: f64) -> BathSpec {
        BathSpec::new(s, a, 1.0).unwrap()
    }

    fn model(s: f64, a: f64, eps: f64) -> ModelSpec {
        ModelSpec::new(bath(s, a), eps, 0.0).unwrap()
    }

    #[test]
    fn ohmic_reference_values() {
        let b = bath(1.0, 1.0);
        assert_relative_eq!(
            gamma_closed(&b, 1.0).unwrap(),
            0.5 * 2f64.ln(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            phase_integral_closed(&b, 1.0).unwrap(),
            std::f64::consts::FRAC_PI_4,
            max_relative = 1e-15
        );
        let m = model(1.0, 1.0, 0.0);
        assert_relative_eq!(p_x(&m, 1.0).unwrap(), 0.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(c_x(&m, 1.0).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn sub_ohmic_reference_value() {
        // 1e-12-accurate reference from an arbitrary-precision evaluation.
        assert_relative_eq!(
            gamma_closed(&bath(0.5, 1.0), 1.0).unwrap(),
            0.349_826_073_878_433_3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn everything_trivial_at_origin() {
        for s in [0.3, 1.0, 1.0 + 1e-8, 2.5] {
            let m = model(s, 1.7, 0.4);
            let p = evaluate_point(&m, 0.0).unwrap();
            assert_eq!(p.gamma, 0.0);
            assert_eq!(p.phase_integral, 0.0);
            assert_eq!((p.p_x, p.c_x, p.phi), (1.0, 1.0, 1.0));
        }
    }

    #[test]
    fn super_ohmic_plateau_and_phase_decay() {
        let m = model(2.5, 1.0, 0.0);
        assert_relative_eq!(
            p_x(&m, 1e12).unwrap(),
            0.412_208_114_266_963_7,
            max_relative = 1e-12
        );
        assert!(phase_integral_closed(&bath(2.5, 1.0), 1e12).unwrap().abs() < 1e-15);
        assert_relative_eq!(phi_fn(&bath(2.5, 1.0), 1e12).unwrap(), 1.0);
    }

    #[test]
    fn ohmic_phi_limit() {
        let b = bath(1.0, 2.0);
        assert!((phi_fn(&b, 1e12).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(phi_limit(&b), -1.0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        let b = bath(1.0, 1.0);
        assert!(gamma_closed(&b, -1.0).is_err());
        assert!(phase_integral_closed(&b, f64::NAN).is_err());
        let nh = BathSpec::with_tau(1.0, 1.0, 1.0, 0.5).unwrap();
        assert!(matches!(
            gamma_closed(&nh, 1.0),
            Err(Error::NonHermitianBath { .. })
        ));
        let hot = ModelSpec::new(b, 0.0, 0.1).unwrap();
        assert!(matches!(
            p_x(&hot, 1.0),
            Err(Error::FiniteTemperature { .. })
        ));
    }

    #[test]
    fn limit_switch_is_continuous() {
        for x in [1e-2, 0.3, 1.0, 7.0, 1e2] {
            let ohmic = reduced_gamma(1.0, x).unwrap();
            for s in [1.0 - 1e-7, 1.0 + 1e-7, 1.0 - 2e-6, 1.0 + 2e-6] {
                let g = reduced_gamma(s, x).unwrap();
                assert!(((g - ohmic) / ohmic).abs() < 1e-5, "s = {s}, x = {x}");
            }
            // Both sides of the band edge agree to the expansion's accuracy.
            let inside = reduced_gamma(1.0 + 0.999_999e-6, x).unwrap();
            let outside = reduced_gamma(1.0 + 1.000_001e-6, x).unwrap();
            assert!(((inside - outside) / ohmic).abs() < 1e-9, "x = {x}");
            let inside = reduced_phase(1.0 - 0.999_999e-6, x).unwrap();
            let outside = reduced_phase(1.0 - 1.000_001e-6, x).unwrap();
            assert!(((inside - outside) / x.atan()).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn ohmic_identity_between_couplings_one_and_two() {
        let c = model(1.0, 1.0, 0.0);
        let p = model(1.0, 2.0, 0.0);
        let grid = TimeGrid::log(1e-3, 1e4, 400).unwrap();
        for &t in grid.times() {
            let d = ulp_distance(c_x(&c, t).unwrap(), p_x(&p, t).unwrap());
            assert!(d <= 4, "t = {t}: {d} ulp");
        }
    }

    #[test]
    fn grids() {
        let g = TimeGrid::log(1e-2, 1e3, 51).unwrap();
        assert_eq!(g.times()[0], 1e-2);
        assert_eq!(g.times()[20], 1.0);
        assert_eq!(g.times()[50], 1e3);
        let l = TimeGrid::linear(0.0, 2.0, 201).unwrap();
        assert_eq!(l.times()[100], 1.0);
        assert_eq!(l.times()[200], 2.0);
        assert!(TimeGrid::log(0.0, 1.0, 10).is_err());
        assert!(TimeGrid::linear(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::linear(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::new(vec![1.0, 1.0], Spacing::Linear).is_err());
    }

    #[test]
    fn series_is_aligned() {
        let grid = TimeGrid::linear(0.0, 5.0, 11).unwrap();
        let series = evaluate_series(&model(0.5, 1.0, 0.0), &grid).unwrap();
        assert_eq!(series.points().len(), 11);
        assert_eq!(series.source(), Source::ClosedForm);
        for (p, t) in series.points().iter().zip(grid.times()) {
            assert_eq!(p.t, *t);
        }
    }

    proptest! {
        #[test]
        fn factorization_at_zero_bias(s in 0.05f64..5.0, a in 0.0f64..4.0, t in 0.0f64..1e4) {
            let p = evaluate_point(&model(s, a, 0.0), t).unwrap();
            prop_assert_eq!(p.c_x, p.p_x * p.phi);
            prop_assert!(p.gamma >= 0.0);
            prop_assert!(p.p_x.abs() <= 1.0 && p.c_x.abs() <= 1.0 && p.phi.abs() <= 1.0);
        }

        #[test]
        fn even_in_bias(s in 0.05f64..5.0, a in 0.0f64..4.0, eps in -5.0f64..5.0, t in 0.0f64..1e3) {
            let plus = c_x(&model(s, a, eps), t).unwrap();
            let minus = c_x(&model(s, a, -eps), t).unwrap();
            prop_assert_eq!(plus, minus);
        }

        #[test]
        fn linear_in_coupling(s in 0.05f64..5.0, a in 0.0f64..4.0, t in 0.0f64..1e4) {
            let one = gamma_closed(&bath(s, a), t).unwrap();
            let two = gamma_closed(&bath(s, 2.0 * a), t).unwrap();
            prop_assert_eq!(two, 2.0 * one);
        }
    }
}
