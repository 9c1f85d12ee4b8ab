// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over the `dephasing` crate.
//!
//! Models and discretized baths are opaque heap handles created by `*_new`
//! and released by `*_free`. Every fallible call returns a [`DphStatus`] and
//! writes results through out-pointers; on failure a message for the calling
//! thread is available from [`dph_last_error_message`]. Panics never cross
//! the boundary; they surface as [`DphStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dephasing::analytic;
use dephasing::asymptotics::{self, CrossoverKind};
use dephasing::nonhermitian;
use dephasing::numerics::QuadratureConfig;
use dephasing::oracle::{self, DiscreteBath};
use dephasing::{BathSpec, Error, ModelSpec};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DphStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    GammaPole = 3,
    Convergence = 4,
    InfraredDivergence = 5,
    FiniteTemperature = 6,
    NonHermitianBath = 7,
    Grid = 8,
    Fit = 9,
    Config = 10,
    Io = 11,
    Panic = 12,
}

/// Crossover family selector for [`dph_crossover_time`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DphCrossover {
    OhmicOddA = 0,
    EvenSP = 1,
    OddSPhi = 2,
    EvenSC = 3,
    OddSC = 4,
}

/// Opaque model: bath parameters, bias and temperature.
pub struct DphModel {
    model: ModelSpec,
}

/// Opaque discretized bath for the mode-sum oracle.
pub struct DphDiscreteBath {
    bath: DiscreteBath,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DphStatus {
    match err {
        Error::Domain { .. } => DphStatus::Domain,
        Error::GammaPole { .. } => DphStatus::GammaPole,
        Error::Convergence { .. } => DphStatus::Convergence,
        Error::InfraredDivergence { .. } => DphStatus::InfraredDivergence,
        Error::FiniteTemperature { .. } => DphStatus::FiniteTemperature,
        Error::NonHermitianBath { .. } => DphStatus::NonHermitianBath,
        Error::Grid(_) => DphStatus::Grid,
        Error::Fit(_) => DphStatus::Fit,
        Error::Config(_) => DphStatus::Config,
        Error::Io(_) => DphStatus::Io,
    }
}

enum Failure {
    Lib(Error),
    Status(DphStatus, &'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DphStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DphStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(code, msg))) => {
            set_last_error(msg.to_string());
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {msg}"));
            DphStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure::Status(DphStatus::NullPointer, "null pointer argument")
}

/// # Safety
/// `p` is null or points to a live value of `T`.
unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

/// # Safety
/// `p` is null or valid for a write of `T`.
unsafe fn write<T>(p: *mut T, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null());
    }
    p.write(value);
    Ok(())
}

/// Hermitian model with identical correlators.
fn effective(model: &ModelSpec) -> Result<ModelSpec, Error> {
    if model.bath().is_hermitian() {
        Ok(*model)
    } else {
        Ok(model.with_bath(nonhermitian::effective_bath(model.bath())?))
    }
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length
/// including the terminator, or 0 when there is no message.
///
/// # Safety
/// `buf` is null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn dph_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dph_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a model. `tau > 0` selects the PT-symmetric bath.
///
/// # Safety
/// `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dph_model_new(
    s: f64,
    a: f64,
    b: f64,
    tau: f64,
    epsilon: f64,
    temperature: f64,
    out: *mut *mut DphModel,
) -> DphStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let model = ModelSpec::new(BathSpec::with_tau(s, a, b, tau)?, epsilon, temperature)?;
        write(out, Box::into_raw(Box::new(DphModel { model })))
    })
}

/// Releases a model; null is ignored.
///
/// # Safety
/// `model` is null or came from [`dph_model_new`] and is not used again.
#[no_mangle]
pub unsafe extern "C" fn dph_model_free(model: *mut DphModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` is null or live; `out` is null or valid for a write.
unsafe fn scalar(
    model: *const DphModel,
    t: f64,
    out: *mut f64,
    f: fn(&ModelSpec, f64) -> Result<f64, Error>,
) -> DphStatus {
    guard(|| {
        let m = effective(&deref(model)?.model)?;
        write(out, f(&m, t)?)
    })
}

/// Decoherence factor `γ(t)`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_gamma(model: *const DphModel, t: f64, out: *mut f64) -> DphStatus {
    scalar(model, t, out, |m, t| analytic::gamma_closed(m.bath(), t))
}

/// Phase integral `I(t)`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_phase_integral(
    model: *const DphModel,
    t: f64,
    out: *mut f64,
) -> DphStatus {
    scalar(model, t, out, |m, t| {
        analytic::phase_integral_closed(m.bath(), t)
    })
}

/// `φ(t) = cos I(t)`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_phi(model: *const DphModel, t: f64, out: *mut f64) -> DphStatus {
    scalar(model, t, out, |m, t| analytic::phi_fn(m.bath(), t))
}

/// Non-equilibrium correlator `P_x(t)`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_p_x(model: *const DphModel, t: f64, out: *mut f64) -> DphStatus {
    scalar(model, t, out, analytic::p_x)
}

/// Equilibrium correlator `C_x(t)`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_c_x(model: *const DphModel, t: f64, out: *mut f64) -> DphStatus {
    scalar(model, t, out, analytic::c_x)
}

/// `P_x` and `C_x` on `n` times; either output may be null.
///
/// # Safety
/// `times` is valid for `n` reads; non-null outputs for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn dph_eval_series(
    model: *const DphModel,
    times: *const f64,
    n: usize,
    out_p_x: *mut f64,
    out_c_x: *mut f64,
) -> DphStatus {
    guard(|| {
        let m = effective(&deref(model)?.model)?;
        if times.is_null() && n > 0 {
            return Err(null());
        }
        let ts: &[f64] = if n == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(times, n)
        };
        let mut p = Vec::with_capacity(n);
        let mut c = Vec::with_capacity(n);
        for &t in ts {
            p.push(analytic::p_x(&m, t)?);
            c.push(analytic::c_x(&m, t)?);
        }
        if !out_p_x.is_null() {
            ptr::copy_nonoverlapping(p.as_ptr(), out_p_x, n);
        }
        if !out_c_x.is_null() {
            ptr::copy_nonoverlapping(c.as_ptr(), out_c_x, n);
        }
        Ok(())
    })
}

/// Renormalized `(Ã, B̃)` of the model's bath.
///
/// # Safety
/// `model` is a live handle; outputs are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dph_renormalize(
    model: *const DphModel,
    out_a_tilde: *mut f64,
    out_b_tilde: *mut f64,
) -> DphStatus {
    guard(|| {
        let r = nonhermitian::renormalize(deref(model)?.model.bath());
        write(out_a_tilde, r.a_tilde)?;
        write(out_b_tilde, r.b_tilde)
    })
}

/// Finite-difference `∂P_x/∂τ` at `T = 0`, `ε = 0`.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_dp_dtau(model: *const DphModel, t: f64, out: *mut f64) -> DphStatus {
    guard(|| {
        write(
            out,
            nonhermitian::dp_dtau(deref(model)?.model.bath(), t)?.value,
        )
    })
}

/// Short-time coefficients: `P_x ≈ 1 − c_p (Bt)²`, `C_x ≈ 1 − c_c (Bt)²`.
///
/// # Safety
/// `model` is a live handle; outputs are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dph_short_time_coeffs(
    model: *const DphModel,
    out_c_p: *mut f64,
    out_c_c: *mut f64,
) -> DphStatus {
    guard(|| {
        let c = asymptotics::short_time_coeffs(&deref(model)?.model)?;
        write(out_c_p, c.c_p)?;
        write(out_c_c, c.c_c)
    })
}

/// Crossover scale `Bt_cr`; `+∞` exactly at the special integer.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dph_crossover_time(
    model: *const DphModel,
    which: DphCrossover,
    out: *mut f64,
) -> DphStatus {
    guard(|| {
        let kind = match which {
            DphCrossover::OhmicOddA => CrossoverKind::OhmicOddA,
            DphCrossover::EvenSP => CrossoverKind::EvenSP,
            DphCrossover::OddSPhi => CrossoverKind::OddSPhi,
            DphCrossover::EvenSC => CrossoverKind::EvenSC,
            DphCrossover::OddSC => CrossoverKind::OddSC,
        };
        write(out, asymptotics::crossover_time(&deref(model)?.model, kind))
    })
}

/// `γ(t)` by adaptive quadrature with default tolerances, honouring the
/// model temperature.
///
/// # Safety
/// `model` is a live handle; outputs are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dph_gamma_quadrature(
    model: *const DphModel,
    t: f64,
    out_value: *mut f64,
    out_abs_error: *mut f64,
) -> DphStatus {
    guard(|| {
        let r = oracle::gamma_quadrature(&deref(model)?.model, t, &QuadratureConfig::default())?;
        write(out_value, r.value)?;
        write(out_abs_error, r.abs_error)
    })
}

/// Discretizes the model's bath into `count` log-spaced modes; `count = 0`
/// selects the default.
///
/// # Safety
/// `model` is a live handle and `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dph_discrete_bath_new(
    model: *const DphModel,
    count: usize,
    out: *mut *mut DphDiscreteBath,
) -> DphStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let bath = deref(model)?.model.bath();
        let db = if count == 0 {
            DiscreteBath::with_defaults(bath)?
        } else {
            DiscreteBath::new(bath, count, oracle::Sampling::default_for(bath))?
        };
        write(out, Box::into_raw(Box::new(DphDiscreteBath { bath: db })))
    })
}

/// Releases a discretized bath; null is ignored.
///
/// # Safety
/// `bath` is null or came from [`dph_discrete_bath_new`] and is not used
/// again.
#[no_mangle]
pub unsafe extern "C" fn dph_discrete_bath_free(bath: *mut DphDiscreteBath) {
    if !bath.is_null() {
        drop(Box::from_raw(bath));
    }
}

/// Mode sums for `γ(t)` and `I(t)`; either output may be null.
///
/// # Safety
/// `bath` is a live handle; non-null outputs are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dph_discrete_bath_sums(
    bath: *const DphDiscreteBath,
    t: f64,
    temperature: f64,
    out_gamma: *mut f64,
    out_phase: *mut f64,
) -> DphStatus {
    guard(|| {
        let sum = oracle::gamma_mode_sum(&deref(bath)?.bath, t, temperature)?;
        if !out_gamma.is_null() {
            out_gamma.write(sum.gamma);
        }
        if !out_phase.is_null() {
            out_phase.write(sum.phase);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn new_model(s: f64, a: f64, tau: f64) -> *mut DphModel {
        let mut m = ptr::null_mut();
        assert_eq!(
            unsafe { dph_model_new(s, a, 1.0, tau, 0.0, 0.0, &mut m) },
            DphStatus::Ok
        );
        m
    }

    fn last_error() -> String {
        let mut buf = vec![0 as c_char; 256];
        let n = unsafe { dph_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert!(n > 0);
        unsafe { std::ffi::CStr::from_ptr(buf.as_ptr()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn scalar_values() {
        let m = new_model(1.0, 1.0, 0.0);
        let mut v = 0.0;
        unsafe {
            assert_eq!(dph_p_x(m, 1.0, &mut v), DphStatus::Ok);
            assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
            assert_eq!(dph_c_x(m, 1.0, &mut v), DphStatus::Ok);
            assert!((v - 0.5).abs() < 1e-15);
            dph_model_free(m);
        }
    }

    #[test]
    fn domain_error_sets_message() {
        let mut m = ptr::null_mut();
        let st = unsafe { dph_model_new(-1.0, 1.0, 1.0, 0.0, 0.0, 0.0, &mut m) };
        assert_eq!(st, DphStatus::Domain);
        assert!(m.is_null());
        assert!(last_error().contains("s = -1"));
    }

    #[test]
    fn null_pointers_are_reported() {
        let mut v = 0.0;
        assert_eq!(
            unsafe { dph_p_x(ptr::null(), 1.0, &mut v) },
            DphStatus::NullPointer
        );
        let m = new_model(1.0, 1.0, 0.0);
        assert_eq!(
            unsafe { dph_p_x(m, 1.0, ptr::null_mut()) },
            DphStatus::NullPointer
        );
        unsafe { dph_model_free(m) };
    }

    #[test]
    fn truncated_message_is_terminated() {
        let mut m = ptr::null_mut();
        unsafe { dph_model_new(1.0, -1.0, 1.0, 0.0, 0.0, 0.0, &mut m) };
        let mut buf = [1 as c_char; 4];
        let n = unsafe { dph_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert!(n > 4);
        assert_eq!(buf[3], 0);
    }

    #[test]
    fn panics_do_not_unwind_across() {
        let st = guard(|| panic!("boom"));
        assert_eq!(st, DphStatus::Panic);
        assert!(last_error().contains("boom"));
    }
}
