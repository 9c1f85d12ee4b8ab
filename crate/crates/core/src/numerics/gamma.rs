// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use super::elementary::sin_pi;
use crate::error::{Error, Result};

/// Inputs closer than this to a non-positive integer are rejected.
pub const POLE_EXCLUSION: f64 = 1e-6;

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 (the GSL coefficient set).
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// Γ(x) on the real line, rejecting the poles at 0, −1, −2, …
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return Err(Error::Domain {
            name: "x",
            value: x,
            reason: "gamma function argument must be a number",
        });
    }
    if x < 0.5 {
        let nearest = x.round();
        if nearest <= 0.0 && (x - nearest).abs() < POLE_EXCLUSION {
            return Err(Error::GammaPole {
                x,
                pole: nearest as i64,
            });
        }
    }
    Ok(gamma_unchecked(x))
}

/// Γ(x) without the pole check; infinite or NaN at the poles.
pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if (1.0..=23.0).contains(&x) && x.fract() == 0.0 {
        // (x−1)! is exact in binary64 up to 22!.
        return (2..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    if x < 0.5 {
        PI / (sin_pi(x) * lanczos(1.0 - x))
    } else {
        lanczos(x)
    }
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let series = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| {
            acc + c / (z + (i + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    // t^{z+1/2} split in two so large arguments do not overflow before e^{-t}.
    let half = t.powf(0.5 * (z + 0.5));
    SQRT_TWO_PI * half * (half * (-t).exp()) * series
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert_eq!(gamma_fn(2.0).unwrap(), 1.0);
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert_eq!(gamma_fn(23.0).unwrap(), 1_124_000_727_777_607_680_000.0);
        assert_relative_eq!(
            gamma_fn(24.0).unwrap(),
            25_852_016_738_884_976_640_000.0,
            max_relative = 1e-14
        );
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn matches_high_precision_references() {
        // Reference values from an arbitrary-precision library, evaluated at the
        // exact binary value of each argument.
        let cases = [
            (1.5, 0.886_226_925_452_758_013_65),
            (0.5, 1.772_453_850_905_516_027_3),
            (0.3, 2.991_568_987_687_590_744_6),
            (2.7, 1.544_685_845_850_593_983_6),
            (-0.5, -3.544_907_701_811_032_054_6),
            (-9.5, 2.772_127_911_575_102_132_1e-6),
            (29.5, 1.634_812_519_827_426_644_4e30),
            (-3.000_001, 166_666.457_290_807_589_6),
            (1e-6, 999_999.422_785_324_198_8),
        ];
        for (x, expected) in cases {
            let got = gamma_fn(x).unwrap();
            assert!(
                ((got - expected) / expected).abs() <= 1e-13,
                "Γ({x}) = {got}, expected {expected}"
            );
        }
    }

    #[test]
    fn reflection_branch() {
        // Γ(−½) = −2√π
        assert_relative_eq!(
            gamma_fn(-0.5).unwrap(),
            -2.0 * PI.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn poles_are_rejected_with_nearest_pole() {
        for (x, pole) in [
            (0.0, 0),
            (-1.0, -1),
            (-3.0 + 5e-7, -3),
            (4e-7, 0),
            (-10.0, -10),
        ] {
            match gamma_fn(x) {
                Err(Error::GammaPole { pole: p, .. }) => assert_eq!(p, pole),
                other => panic!("expected pole error at {x}, got {other:?}"),
            }
        }
        assert!(gamma_fn(-3.0 + 2e-6).is_ok());
        assert!(gamma_fn(f64::NAN).is_err());
    }

    #[test]
    fn recurrence_on_random_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut checked = 0;
        while checked < 1000 {
            let x: f64 = rng.gen_range(-9.5..29.0);
            if (x - x.round()).abs() < 1e-3 && x.round() <= 1.0 {
                continue;
            }
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(
                ((lhs - rhs) / lhs).abs() <= 1e-12,
                "recurrence fails at x = {x}: {lhs} vs {rhs}"
            );
            checked += 1;
        }
    }
}
