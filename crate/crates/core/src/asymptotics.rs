// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Short- and long-time laws of `P_x` and `C_x` at `T = 0`, `ε = 0`.
//!
//! With `x = Bt`, `P_0 = e^{−AΓ(s−1)}` and
//!
//! * `α_1 = −AΓ(s−1) sin(πs/2)`, `α_2 = AΓ(s) cos(πs/2)`,
//! * `ω_1 = AΓ(s−1) cos(πs/2)`, `ω_2 = AΓ(s)`, `ω_3 = AΓ(s−1)`,
//!
//! the long-time forms are `P_x ≈ P_0 e^{−α x^θ}` and
//! `C_x ≈ P_0 e^{−α x^θ} cos(ω x^η)`, with `(α, θ)` and `(ω, η)` chosen by
//! the parity of `s` when it is an integer. `α_2` reduces to
//! `AΓ(s)(−1)^{s/2}` at even `s`; it is kept with its sign. Near, but not at,
//! an integer the generic law holds beyond a crossover scale `Bt_cr`.

use crate::analytic::{CorrelatorSeries, LIMIT_SWITCH};
use crate::error::{Error, FitError, Result};
use crate::numerics::{cos_pi, gamma_fn, sin_pi, tan_pi};
use crate::spectral::{BathSpec, ModelSpec};

/// `A` or `s` counts as an integer only within this distance.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

const MIN_FIT_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegerProximity {
    pub value: f64,
    pub nearest_integer: i64,
    pub distance: f64,
    pub parity: Parity,
}

impl IntegerProximity {
    pub fn of(value: f64) -> Self {
        let nearest = value.round();
        let nearest_integer = nearest as i64;
        Self {
            value,
            nearest_integer,
            distance: (value - nearest).abs(),
            parity: if nearest_integer.rem_euclid(2) == 0 {
                Parity::Even
            } else {
                Parity::Odd
            },
        }
    }

    pub fn is_integer(&self) -> bool {
        self.distance <= INTEGER_TOLERANCE
    }

    pub fn is_odd_integer(&self) -> bool {
        self.is_integer() && self.parity == Parity::Odd
    }

    pub fn is_even_integer(&self) -> bool {
        self.is_integer() && self.parity == Parity::Even
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    OhmicGeneric,
    OhmicOddA,
    SubOhmic,
    SuperOhmicGeneric,
    SuperOhmicEvenS,
    SuperOhmicOddS,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayForm {
    /// `y ≈ amplitude · x^exponent`.
    PowerLaw,
    /// `y ≈ prefactor · exp(−amplitude · x^exponent)`.
    Exponential { prefactor: f64 },
}

/// Oscillating factor `cos(coefficient · x^η)` of the long-time `C_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillation {
    None,
    /// `η = 1 − s`.
    OneMinusS {
        coefficient: f64,
    },
    /// `η = −s`.
    MinusS {
        coefficient: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Long-time limit: `P_0` for `s > 1`, otherwise 0.
    pub plateau: f64,
    pub form: DecayForm,
    pub exponent: f64,
    /// Signed prefactor of `x^exponent`.
    pub amplitude: f64,
    pub oscillation: Oscillation,
    /// `Bt_cr` of the nearest special branch; infinite exactly at it.
    pub crossover: Option<f64>,
}

impl RegimeReport {
    /// Predicted value at `x = Bt`.
    pub fn predict(&self, bt: f64) -> f64 {
        let s_exp = |eta: f64| bt.powf(eta);
        let base = match self.form {
            DecayForm::PowerLaw => self.amplitude * bt.powf(self.exponent),
            DecayForm::Exponential { prefactor } => {
                prefactor * (-self.amplitude * bt.powf(self.exponent)).exp()
            }
        };
        let osc = match self.oscillation {
            Oscillation::None => 1.0,
            Oscillation::OneMinusS { coefficient } => {
                (coefficient * s_exp(1.0 - self.bath_exponent())).cos()
            }
            Oscillation::MinusS { coefficient } => {
                (coefficient * s_exp(-self.bath_exponent())).cos()
            }
        };
        base * osc
    }

    /// Magnitude of the decay rate; the sign of `amplitude` only tells from
    /// which side the plateau is approached.
    pub fn decay_rate(&self) -> f64 {
        self.amplitude.abs()
    }

    fn bath_exponent(&self) -> f64 {
        match (self.form, self.regime) {
            (_, Regime::SuperOhmicEvenS) => -self.exponent,
            (DecayForm::Exponential { .. }, _) => 1.0 - self.exponent,
            (DecayForm::PowerLaw, _) => 1.0,
        }
    }
}

/// Coefficients of the long-time expansion for `s ≠ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    pub p0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
}

pub fn coefficients(bath: &BathSpec) -> Result<AsymptoticCoefficients> {
    let (s, a) = (bath.s(), bath.a());
    let g_sm1 = a * gamma_fn(s - 1.0)?;
    let g_s = a * gamma_fn(s)?;
    let (sin_h, cos_h) = (sin_pi(0.5 * s), cos_pi(0.5 * s));
    Ok(AsymptoticCoefficients {
        p0: (-g_sm1).exp(),
        alpha1: -g_sm1 * sin_h,
        alpha2: g_s * cos_h,
        omega1: g_sm1 * cos_h,
        omega2: g_s,
        omega3: g_sm1,
    })
}

/// `P_x ≈ 1 − c_p (Bt)²`, `C_x ≈ 1 − c_c (Bt)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeCoeffs {
    pub c_p: f64,
    pub c_c: f64,
}

fn require_unbiased_ground_state(model: &ModelSpec) -> Result<()> {
    model.require_zero_temperature()?;
    if model.epsilon() != 0.0 {
        return Err(Error::Domain {
            name: "epsilon",
            value: model.epsilon(),
            reason: "asymptotic laws are derived for zero bias",
        });
    }
    if !model.bath().is_hermitian() {
        return Err(Error::NonHermitianBath {
            tau: model.bath().tau(),
        });
    }
    Ok(())
}

pub fn short_time_coeffs(model: &ModelSpec) -> Result<ShortTimeCoeffs> {
    require_unbiased_ground_state(model)?;
    let bath = model.bath();
    let ag = bath.a() * gamma_fn(bath.s())?;
    Ok(ShortTimeCoeffs {
        c_p: 0.5 * bath.s() * ag,
        c_c: 0.5 * ag * (ag + bath.s()),
    })
}

fn near_ohmic(s: f64) -> bool {
    (s - 1.0).abs() < LIMIT_SWITCH
}

/// Long-time law of `P_x`.
pub fn long_time_p(model: &ModelSpec) -> Result<RegimeReport> {
    require_unbiased_ground_state(model)?;
    let bath = model.bath();
    let (s, a) = (bath.s(), bath.a());
    if near_ohmic(s) {
        return Ok(RegimeReport {
            regime: Regime::OhmicGeneric,
            plateau: 0.0,
            form: DecayForm::PowerLaw,
            exponent: -a,
            amplitude: 1.0,
            oscillation: Oscillation::None,
            crossover: None,
        });
    }
    let c = coefficients(bath)?;
    let sp = IntegerProximity::of(s);
    if s < 1.0 {
        return Ok(RegimeReport {
            regime: Regime::SubOhmic,
            plateau: 0.0,
            form: DecayForm::Exponential { prefactor: c.p0 },
            exponent: 1.0 - s,
            amplitude: c.alpha1,
            oscillation: Oscillation::None,
            crossover: None,
        });
    }
    let crossover =
        (sp.parity == Parity::Even).then(|| crossover_time(model, CrossoverKind::EvenSP));
    let (regime, exponent, amplitude) = if sp.is_even_integer() {
        (Regime::SuperOhmicEvenS, -s, c.alpha2)
    } else {
        (Regime::SuperOhmicGeneric, 1.0 - s, c.alpha1)
    };
    Ok(RegimeReport {
        regime,
        plateau: c.p0,
        form: DecayForm::Exponential { prefactor: c.p0 },
        exponent,
        amplitude,
        oscillation: Oscillation::None,
        crossover,
    })
}

/// Long-time law of `C_x`.
pub fn long_time_c(model: &ModelSpec) -> Result<RegimeReport> {
    require_unbiased_ground_state(model)?;
    let bath = model.bath();
    let (s, a) = (bath.s(), bath.a());
    if near_ohmic(s) {
        let ap = IntegerProximity::of(a);
        let crossover =
            (ap.parity == Parity::Odd).then(|| crossover_time(model, CrossoverKind::OhmicOddA));
        return Ok(if ap.is_odd_integer() {
            let sign = if (ap.nearest_integer - 1).rem_euclid(4) == 0 {
                1.0
            } else {
                -1.0
            };
            RegimeReport {
                regime: Regime::OhmicOddA,
                plateau: 0.0,
                form: DecayForm::PowerLaw,
                exponent: -a - 1.0,
                amplitude: sign * a,
                oscillation: Oscillation::None,
                crossover,
            }
        } else {
            RegimeReport {
                regime: Regime::OhmicGeneric,
                plateau: 0.0,
                form: DecayForm::PowerLaw,
                exponent: -a,
                amplitude: cos_pi(0.5 * a),
                oscillation: Oscillation::None,
                crossover,
            }
        });
    }
    let c = coefficients(bath)?;
    if s < 1.0 {
        return Ok(RegimeReport {
            regime: Regime::SubOhmic,
            plateau: 0.0,
            form: DecayForm::Exponential { prefactor: c.p0 },
            exponent: 1.0 - s,
            amplitude: c.alpha1,
            oscillation: Oscillation::OneMinusS {
                coefficient: c.omega1,
            },
            crossover: None,
        });
    }
    let sp = IntegerProximity::of(s);
    let crossover = Some(match sp.parity {
        Parity::Even => crossover_time(model, CrossoverKind::EvenSC),
        Parity::Odd => crossover_time(model, CrossoverKind::OddSC),
    });
    let (regime, exponent, amplitude, oscillation) = if sp.is_even_integer() {
        (
            Regime::SuperOhmicEvenS,
            -s,
            c.alpha2,
            Oscillation::OneMinusS {
                coefficient: c.omega3,
            },
        )
    } else if sp.is_odd_integer() {
        (
            Regime::SuperOhmicOddS,
            1.0 - s,
            c.alpha1,
            Oscillation::MinusS {
                coefficient: c.omega2,
            },
        )
    } else {
        (
            Regime::SuperOhmicGeneric,
            1.0 - s,
            c.alpha1,
            Oscillation::OneMinusS {
                coefficient: c.omega1,
            },
        )
    };
    Ok(RegimeReport {
        regime,
        plateau: c.p0,
        form: DecayForm::Exponential { prefactor: c.p0 },
        exponent,
        amplitude,
        oscillation,
        crossover,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossoverKind {
    /// `A |tan(πA/2)|`, Ohmic bath near odd `A`.
    OhmicOddA,
    /// `|cot(πs/2)|/(s−1)`, `P_x` near even `s`.
    EvenSP,
    /// `(s−1)|tan(πs/2)|`, `φ` near odd `s`.
    OddSPhi,
    /// `|cot(πs/2)|/(s−1)`, `C_x` near even `s`.
    EvenSC,
    /// `(s−1)|tan(πs/2)|`, `C_x` near odd `s`.
    OddSC,
}

/// Crossover scale `Bt_cr`; `+∞` exactly at the special integer.
///
/// The `s` families are defined for `s > 1`; at `s = 1` they are `0/0`.
pub fn crossover_time(model: &ModelSpec, which: CrossoverKind) -> f64 {
    let bath = model.bath();
    match which {
        CrossoverKind::OhmicOddA => {
            let a = bath.a();
            if IntegerProximity::of(a).is_odd_integer() {
                f64::INFINITY
            } else {
                a * tan_pi(0.5 * a).abs()
            }
        }
        CrossoverKind::EvenSP | CrossoverKind::EvenSC => {
            let s = bath.s();
            if IntegerProximity::of(s).is_even_integer() {
                f64::INFINITY
            } else {
                (cos_pi(0.5 * s) / sin_pi(0.5 * s)).abs() / (s - 1.0)
            }
        }
        CrossoverKind::OddSPhi | CrossoverKind::OddSC => {
            let s = bath.s();
            if IntegerProximity::of(s).is_odd_integer() {
                f64::INFINITY
            } else {
                (s - 1.0) * tan_pi(0.5 * s).abs()
            }
        }
    }
}

/// Correlator a fit is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    P,
    C,
}

fn samples(series: &CorrelatorSeries, observable: Observable) -> Vec<(f64, f64)> {
    let b = series.model().bath().b();
    series
        .points()
        .iter()
        .map(|p| {
            let y = match observable {
                Observable::P => p.p_x,
                Observable::C => p.c_x,
            };
            (b * p.t, y)
        })
        .collect()
}

fn window_samples(
    series: &CorrelatorSeries,
    observable: Observable,
    window: (f64, f64),
) -> Result<Vec<(f64, f64)>> {
    let times = series.grid().times();
    let (grid_lo, grid_hi) = (times[0], times[times.len() - 1]);
    let (lo, hi) = window;
    if !(lo >= grid_lo && hi <= grid_hi && lo < hi) {
        return Err(FitError::WindowOutsideGrid {
            lo,
            hi,
            grid_lo,
            grid_hi,
        }
        .into());
    }
    let b = series.model().bath().b();
    let picked: Vec<(f64, f64)> = samples(series, observable)
        .into_iter()
        .filter(|&(x, _)| x >= b * lo && x <= b * hi)
        .collect();
    if picked.len() < MIN_FIT_POINTS {
        return Err(FitError::TooFewPoints {
            needed: MIN_FIT_POINTS,
            found: picked.len(),
        }
        .into());
    }
    Ok(picked)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    /// Signed prefactor: `y − plateau ≈ amplitude · (Bt)^exponent`.
    pub amplitude: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Least squares of `ln|y − plateau|` against `ln(Bt)` over `window` in `t`.
///
/// With `subtract_plateau` the plateau is `P_0` for `s > 1` and 0 otherwise.
pub fn fit_power_law(
    series: &CorrelatorSeries,
    observable: Observable,
    window: (f64, f64),
    subtract_plateau: bool,
) -> Result<PowerLawFit> {
    let picked = window_samples(series, observable, window)?;
    let bath = series.model().bath();
    let plateau = if subtract_plateau && bath.s() > 1.0 && !near_ohmic(bath.s()) {
        coefficients(bath)?.p0
    } else {
        0.0
    };
    let mut sign = 0.0;
    let mut xs = Vec::with_capacity(picked.len());
    let mut ys = Vec::with_capacity(picked.len());
    for &(x, y) in &picked {
        let d = y - plateau;
        if !(d.is_finite() && d != 0.0) {
            return Err(FitError::NonPositive { t: x / bath.b() }.into());
        }
        if sign == 0.0 {
            sign = d.signum();
        } else if d.signum() != sign {
            return Err(FitError::SignChange.into());
        }
        xs.push(x.ln());
        ys.push(d.abs().ln());
    }
    let (slope, intercept, r_squared) = linear_regression(&xs, &ys);
    Ok(PowerLawFit {
        exponent: slope,
        amplitude: sign * intercept.exp(),
        r_squared,
        points: picked.len(),
    })
}

fn linear_regression(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, intercept, r_squared)
}

/// Quadratic coefficient `c` of `1 − y ≈ c (Bt)² + d (Bt)⁴` over `window`.
pub fn fit_short_time(
    series: &CorrelatorSeries,
    observable: Observable,
    window: (f64, f64),
) -> Result<f64> {
    let picked = window_samples(series, observable, window)?;
    // Normal equations for 1 − y = c u + d u², u = (Bt)², no intercept.
    let (mut s2, mut s3, mut s4, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &picked {
        let u = x * x;
        let r = 1.0 - y;
        s2 += u * u;
        s3 += u * u * u;
        s4 += u * u * u * u;
        r1 += u * r;
        r2 += u * u * r;
    }
    let det = s2 * s4 - s3 * s3;
    Ok((r1 * s4 - r2 * s3) / det)
}

/// Local maxima of `|y|` as `(t, |y|)`; defines the envelope of an
/// oscillating series.
pub fn envelope(series: &CorrelatorSeries, observable: Observable) -> Vec<(f64, f64)> {
    let b = series.model().bath().b();
    let v: Vec<(f64, f64)> = samples(series, observable)
        .into_iter()
        .map(|(x, y)| (x / b, y.abs()))
        .collect();
    v.windows(3)
        .filter(|w| w[1].1 >= w[0].1 && w[1].1 > w[2].1)
        .map(|w| w[1])
        .collect()
}

/// `Bt` at which the local slope of `ln|y|` against `ln(Bt)` last crosses
/// the midpoint of `early_slope` and `late_slope`, interpolated in `ln(Bt)`.
///
/// When the early regime is never fully developed the slope may not reach
/// the midpoint; the point of closest approach to `early_slope` is returned
/// instead.
pub fn locate_slope_change(
    series: &CorrelatorSeries,
    observable: Observable,
    early_slope: f64,
    late_slope: f64,
) -> Option<f64> {
    let target = 0.5 * (early_slope + late_slope);
    let logs: Vec<(f64, f64)> = samples(series, observable)
        .into_iter()
        .filter(|&(x, y)| x > 0.0 && y != 0.0)
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    let slopes: Vec<(f64, f64)> = logs
        .windows(2)
        .map(|w| {
            (
                0.5 * (w[0].0 + w[1].0),
                (w[1].1 - w[0].1) / (w[1].0 - w[0].0),
            )
        })
        .collect();
    let crossing = slopes
        .windows(2)
        .rev()
        .find(|w| (w[0].1 - target) * (w[1].1 - target) <= 0.0 && w[0].1 != w[1].1)
        .map(|w| {
            let f = (target - w[0].1) / (w[1].1 - w[0].1);
            (w[0].0 + f * (w[1].0 - w[0].0)).exp()
        });
    crossing.or_else(|| {
        slopes
            .iter()
            .filter(|p| p.1.is_finite())
            .min_by(|p, q| {
                (p.1 - early_slope)
                    .abs()
                    .total_cmp(&(q.1 - early_slope).abs())
            })
            .map(|p| p.0.exp())
    })
}
