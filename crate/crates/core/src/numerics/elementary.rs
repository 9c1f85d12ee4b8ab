// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

/// Reduces `x` to `r ∈ [0, 1]` with `x ≡ ±r (mod 2)`; the sign is returned
/// separately. The subtraction is exact for |x| < 2^52.
fn reduce_half_turns(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (0.5 * x).round();
    if r < 0.0 {
        (-1.0, -r)
    } else {
        (1.0, r)
    }
}

/// `sin(πx)`, exact at integers and half-integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (sign, r) = reduce_half_turns(x);
    let r = if r > 0.5 { 1.0 - r } else { r };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else {
        (PI * (0.5 - r)).cos()
    };
    sign * v
}

/// `cos(πx)`, exact at integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (_, r) = reduce_half_turns(x);
    let (sign, r) = if r > 0.5 { (-1.0, 1.0 - r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        (PI * r).cos()
    } else {
        (PI * (0.5 - r)).sin()
    };
    sign * v
}

/// `tan(πx)`; infinite at odd multiples of ½.
pub fn tan_pi(x: f64) -> f64 {
    let c = cos_pi(x);
    let s = sin_pi(x);
    if c == 0.0 {
        return f64::INFINITY.copysign(s);
    }
    s / c
}

/// `ln(1 + x²)` without cancellation for tiny `x` or overflow for huge `x`.
pub fn stable_log1p_sq(x: f64) -> f64 {
    let ax = x.abs();
    if ax > 1e150 {
        let inv = 1.0 / ax;
        2.0 * ax.ln() + (inv * inv).ln_1p()
    } else {
        (ax * ax).ln_1p()
    }
}

/// `(1 + x²)^p` with a single rounding of `1 + x²`.
///
/// Going through `exp(p·ln(1+x²))` would amplify the rounding of the
/// logarithm by its magnitude; `powf` keeps the result within a few ulp.
pub fn pow_one_plus_sq(x: f64, p: f64) -> f64 {
    let ax = x.abs();
    if ax > 1e150 {
        let inv = 1.0 / ax;
        ax.powf(2.0 * p) * (1.0 + inv * inv).powf(p)
    } else {
        (1.0 + ax * ax).powf(p)
    }
}

/// `sin(x)/x`, continuous at zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Number of representable doubles between `a` and `b`; `u64::MAX` if
/// either is NaN.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    if a.is_nan() || b.is_nan() {
        return u64::MAX;
    }
    // Map the sign-magnitude encoding onto a monotone integer line.
    fn ordered(x: f64) -> i128 {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i128::from(i64::MIN) - i128::from(bits)
        } else {
            i128::from(bits)
        }
    }
    (ordered(a) - ordered(b))
        .unsigned_abs()
        .min(u128::from(u64::MAX)) as u64
}
