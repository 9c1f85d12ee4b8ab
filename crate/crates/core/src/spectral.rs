// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! Bath and model parameter records and the power-law spectral function.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Power-law bath with exponential cutoff, plus the non-Hermiticity `tau`.
///
/// Fields are private so that every instance satisfies `s > 0`, `B > 0`,
/// `A ≥ 0` and `tau ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    s: f64,
    a: f64,
    b: f64,
    tau: f64,
}

/// Ohmicity of the bath, decided by exact comparison of `s` with 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BathClass {
    SubOhmic,
    Ohmic,
    SuperOhmic,
}

impl BathSpec {
    /// Hermitian bath (`tau = 0`).
    pub fn new(s: f64, a: f64, b: f64) -> Result<Self> {
        Self::with_tau(s, a, b, 0.0)
    }

    pub fn with_tau(s: f64, a: f64, b: f64, tau: f64) -> Result<Self> {
        check(
            s.is_finite() && s > 0.0,
            "s",
            s,
            "bath exponent must be finite and > 0",
        )?;
        check(
            a.is_finite() && a >= 0.0,
            "A",
            a,
            "coupling must be finite and >= 0",
        )?;
        check(
            b.is_finite() && b > 0.0,
            "B",
            b,
            "cutoff must be finite and > 0",
        )?;
        check(
            tau.is_finite() && tau >= 0.0,
            "tau",
            tau,
            "non-Hermiticity must be finite and >= 0",
        )?;
        Ok(Self { s, a, b, tau })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn is_hermitian(&self) -> bool {
        self.tau == 0.0
    }

    /// Same bath with a different coupling.
    pub fn with_coupling(&self, a: f64) -> Result<Self> {
        Self::with_tau(self.s, a, self.b, self.tau)
    }

    /// Same bath with the non-Hermiticity removed.
    pub fn hermitian_part(&self) -> Self {
        Self { tau: 0.0, ..*self }
    }

    pub fn class(&self) -> BathClass {
        classify_bath(self)
    }
}

pub fn classify_bath(bath: &BathSpec) -> BathClass {
    if bath.s < 1.0 {
        BathClass::SubOhmic
    } else if bath.s == 1.0 {
        BathClass::Ohmic
    } else {
        BathClass::SuperOhmic
    }
}

/// `J(ω) = π A B^{1-s} ω^s e^{-ω/B}` of the bare (`tau = 0`) bath.
pub fn spectral_density(bath: &BathSpec, omega: f64) -> Result<f64> {
    check(
        omega >= 0.0 && !omega.is_nan(),
        "omega",
        omega,
        "frequency must be >= 0",
    )?;
    if omega == 0.0 {
        return Ok(0.0);
    }
    if omega.is_infinite() {
        return Ok(0.0);
    }
    let reduced = omega / bath.b;
    // π A B (ω/B)^s e^{-ω/B} avoids overflow of B^{1-s} ω^s separately.
    Ok(PI * bath.a * bath.b * (bath.s * reduced.ln() - reduced).exp())
}

/// Bath, bias and temperature. Temperature is only consumed by the oracles;
/// closed-form paths reject `T > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    bath: BathSpec,
    epsilon: f64,
    temperature: f64,
}

impl ModelSpec {
    pub fn new(bath: BathSpec, epsilon: f64, temperature: f64) -> Result<Self> {
        check(
            epsilon.is_finite(),
            "epsilon",
            epsilon,
            "bias must be finite",
        )?;
        check(
            temperature.is_finite() && temperature >= 0.0,
            "T",
            temperature,
            "temperature must be finite and >= 0",
        )?;
        Ok(Self {
            bath,
            epsilon,
            temperature,
        })
    }

    /// Unbiased model at zero temperature.
    pub fn unbiased(bath: BathSpec) -> Self {
        Self {
            bath,
            epsilon: 0.0,
            temperature: 0.0,
        }
    }

    pub fn bath(&self) -> &BathSpec {
        &self.bath
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn with_bath(&self, bath: BathSpec) -> Self {
        Self { bath, ..*self }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.bath, epsilon, self.temperature)
    }

    pub(crate) fn require_zero_temperature(&self) -> Result<()> {
        if self.temperature == 0.0 {
            Ok(())
        } else {
            Err(Error::FiniteTemperature {
                temperature: self.temperature,
            })
        }
    }
}

fn check(ok: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            reason,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn rejects_invalid_parameters() {
        assert!(BathSpec::new(0.0, 1.0, 1.0).is_err());
        assert!(BathSpec::new(-0.5, 1.0, 1.0).is_err());
        assert!(BathSpec::new(1.0, -1.0, 1.0).is_err());
        assert!(BathSpec::new(1.0, 1.0, 0.0).is_err());
        assert!(BathSpec::with_tau(1.0, 1.0, 1.0, -0.1).is_err());
        assert!(BathSpec::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(BathSpec::new(1.0, 0.0, 1.0).is_ok());
        let bath = BathSpec::new(1.0, 1.0, 1.0).unwrap();
        assert!(ModelSpec::new(bath, 0.0, -1.0).is_err());
        assert!(ModelSpec::new(bath, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn classification() {
        let class = |s| BathSpec::new(s, 1.0, 1.0).unwrap().class();
        assert_eq!(class(0.5), BathClass::SubOhmic);
        assert_eq!(class(1.0), BathClass::Ohmic);
        assert_eq!(class(2.5), BathClass::SuperOhmic);
        assert_eq!(class(1.0 + f64::EPSILON), BathClass::SuperOhmic);
        assert_eq!(class(1.0 - f64::EPSILON / 2.0), BathClass::SubOhmic);
    }

    #[test]
    fn spectral_density_values() {
        let ohmic = BathSpec::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(spectral_density(&ohmic, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            spectral_density(&ohmic, 1.0).unwrap(),
            1.155_727_349_790_921_7,
            max_relative = 1e-15
        );
        let sub = BathSpec::new(0.5, 2.0, 2.0).unwrap();
        assert_relative_eq!(
            spectral_density(&sub, 2.0).unwrap(),
            4.622_909_399_163_687,
            max_relative = 1e-15
        );
        assert!(spectral_density(&ohmic, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn linear_in_coupling(s in 0.05f64..5.0, a in 0.0f64..5.0, b in 0.1f64..10.0, x in 1e-6f64..100.0) {
            let w = x * b;
            let one = BathSpec::new(s, a, b).unwrap();
            let two = BathSpec::new(s, 2.0 * a, b).unwrap();
            let j1 = spectral_density(&one, w).unwrap();
            let j2 = spectral_density(&two, w).unwrap();
            prop_assert!((j2 - 2.0 * j1).abs() <= 4.0 * f64::EPSILON * j2.abs());
            if a > 0.0 {
                prop_assert!(j1 > 0.0);
            }
        }

        #[test]
        fn continuous_at_origin_and_vanishing_at_infinity(s in 0.05f64..5.0, b in 0.1f64..10.0) {
            let bath = BathSpec::new(s, 1.0, b).unwrap();
            prop_assert!(spectral_density(&bath, 1e-12 * b).unwrap() < 1e-12_f64.powf(s) * 4.0 * b);
            prop_assert!(spectral_density(&bath, 2000.0 * b).unwrap() < 1e-300);
        }
    }
}
