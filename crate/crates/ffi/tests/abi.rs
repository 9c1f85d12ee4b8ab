// Copyright 2026 The dephasing Authors
// SPDX-License-Identifier: Apache-2.0

use std::ptr;

use dephasing_ffi::*;

fn model(s: f64, a: f64, tau: f64, eps: f64, temperature: f64) -> *mut DphModel {
    let mut m = ptr::null_mut();
    let st = unsafe { dph_model_new(s, a, 1.0, tau, eps, temperature, &mut m) };
    assert_eq!(st, DphStatus::Ok);
    m
}

#[test]
fn series_matches_scalar_calls() {
    let m = model(2.5, 0.7, 0.0, 0.3, 0.0);
    let times = [0.0, 0.5, 2.0, 40.0];
    let mut p = [0.0; 4];
    let mut c = [0.0; 4];
    unsafe {
        assert_eq!(
            dph_eval_series(m, times.as_ptr(), 4, p.as_mut_ptr(), c.as_mut_ptr()),
            DphStatus::Ok
        );
        for (i, &t) in times.iter().enumerate() {
            let (mut ps, mut cs) = (0.0, 0.0);
            dph_p_x(m, t, &mut ps);
            dph_c_x(m, t, &mut cs);
            assert_eq!((p[i], c[i]), (ps, cs));
        }
        assert_eq!(
            dph_eval_series(m, ptr::null(), 0, ptr::null_mut(), ptr::null_mut()),
            DphStatus::Ok
        );
        assert_eq!(
            dph_eval_series(m, ptr::null(), 2, p.as_mut_ptr(), ptr::null_mut()),
            DphStatus::NullPointer
        );
        dph_model_free(m);
    }
}

#[test]
fn renormalization_and_derivative() {
    let m = model(1.0, 1.0, 0.5, 0.0, 0.0);
    let (mut a, mut b, mut d) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dph_renormalize(m, &mut a, &mut b), DphStatus::Ok);
        assert!((a - 2f64.powf(-1.5)).abs() < 1e-15);
        assert!((b - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(dph_dp_dtau(m, 1.0, &mut d), DphStatus::Ok);
        assert!(d > 0.0);
        dph_model_free(m);
    }
}

#[test]
fn oracles_through_handles() {
    let m = model(1.5, 1.0, 0.0, 0.0, 0.0);
    let mut db = ptr::null_mut();
    let (mut g, mut phase, mut q, mut err, mut closed) = (0.0, 0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dph_discrete_bath_new(m, 0, &mut db), DphStatus::Ok);
        assert_eq!(
            dph_discrete_bath_sums(db, 1.0, 0.0, &mut g, &mut phase),
            DphStatus::Ok
        );
        assert_eq!(
            dph_gamma_quadrature(m, 1.0, &mut q, &mut err),
            DphStatus::Ok
        );
        assert_eq!(dph_gamma(m, 1.0, &mut closed), DphStatus::Ok);
        assert!((q - closed).abs() < 1e-10);
        assert!((g - closed).abs() < 2e-3);
        assert!(err >= 0.0);
        dph_discrete_bath_free(db);
        dph_model_free(m);
    }
}

#[test]
fn error_codes_follow_library_errors() {
    let hot = model(0.5, 1.0, 0.0, 0.0, 0.2);
    let nh = model(1.0, 1.0, 0.3, 0.0, 0.0);
    let (mut v, mut e) = (0.0, 0.0);
    let mut db = ptr::null_mut();
    unsafe {
        assert_eq!(
            dph_gamma_quadrature(hot, 1.0, &mut v, &mut e),
            DphStatus::InfraredDivergence
        );
        assert_eq!(
            dph_discrete_bath_new(nh, 100, &mut db),
            DphStatus::NonHermitianBath
        );
        assert!(db.is_null());
        assert_eq!(
            dph_short_time_coeffs(hot, &mut v, &mut e),
            DphStatus::FiniteTemperature
        );
        dph_model_free(hot);
        dph_model_free(nh);
        dph_model_free(ptr::null_mut());
    }
}

#[test]
fn short_time_and_crossover() {
    let m = model(1.0, 1.0, 0.0, 0.0, 0.0);
    let (mut cp, mut cc, mut cr) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dph_short_time_coeffs(m, &mut cp, &mut cc), DphStatus::Ok);
        assert_eq!((cp, cc), (0.5, 1.0));
        assert_eq!(
            dph_crossover_time(m, DphCrossover::OhmicOddA, &mut cr),
            DphStatus::Ok
        );
        assert_eq!(cr, f64::INFINITY);
        dph_model_free(m);
    }
    let m = model(2.5, 1.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(
            dph_crossover_time(m, DphCrossover::EvenSP, &mut cr),
            DphStatus::Ok
        );
        assert!((cr - 1.0 / 1.5).abs() < 1e-14);
        dph_model_free(m);
    }
}
