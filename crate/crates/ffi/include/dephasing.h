/* Copyright 2026 The dephasing Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef DEPHASING_H
#define DEPHASING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum DphStatus {
  DPH_STATUS_OK = 0,
  DPH_STATUS_NULL_POINTER = 1,
  DPH_STATUS_DOMAIN = 2,
  DPH_STATUS_GAMMA_POLE = 3,
  DPH_STATUS_CONVERGENCE = 4,
  DPH_STATUS_INFRARED_DIVERGENCE = 5,
  DPH_STATUS_FINITE_TEMPERATURE = 6,
  DPH_STATUS_NON_HERMITIAN_BATH = 7,
  DPH_STATUS_GRID = 8,
  DPH_STATUS_FIT = 9,
  DPH_STATUS_CONFIG = 10,
  DPH_STATUS_IO = 11,
  DPH_STATUS_PANIC = 12,
} DphStatus;

// Crossover family selector for [`dph_crossover_time`].
typedef enum DphCrossover {
  DPH_CROSSOVER_OHMIC_ODD_A = 0,
  DPH_CROSSOVER_EVEN_SP = 1,
  DPH_CROSSOVER_ODD_S_PHI = 2,
  DPH_CROSSOVER_EVEN_SC = 3,
  DPH_CROSSOVER_ODD_SC = 4,
} DphCrossover;

// Opaque discretized bath for the mode-sum oracle.
typedef struct DphDiscreteBath DphDiscreteBath;

// Opaque model: bath parameters, bias and temperature.
typedef struct DphModel DphModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (NUL
// terminated, truncated to `len`). Returns the full message length
// including the terminator, or 0 when there is no message.
//
// # Safety
// `buf` is null or valid for `len` bytes.
size_t dph_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *dph_version(void);

// Creates a model. `tau > 0` selects the PT-symmetric bath.
//
// # Safety
// `out` is valid for a pointer write.
enum DphStatus dph_model_new(double s,
                             double a,
                             double b,
                             double tau,
                             double epsilon,
                             double temperature,
                             struct DphModel **out);

// Releases a model; null is ignored.
//
// # Safety
// `model` is null or came from [`dph_model_new`] and is not used again.
void dph_model_free(struct DphModel *model);

// Decoherence factor `γ(t)`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_gamma(const struct DphModel *model, double t, double *out);

// Phase integral `I(t)`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_phase_integral(const struct DphModel *model, double t, double *out);

// `φ(t) = cos I(t)`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_phi(const struct DphModel *model, double t, double *out);

// Non-equilibrium correlator `P_x(t)`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_p_x(const struct DphModel *model, double t, double *out);

// Equilibrium correlator `C_x(t)`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_c_x(const struct DphModel *model, double t, double *out);

// `P_x` and `C_x` on `n` times; either output may be null.
//
// # Safety
// `times` is valid for `n` reads; non-null outputs for `n` writes.
enum DphStatus dph_eval_series(const struct DphModel *model,
                               const double *times,
                               size_t n,
                               double *out_p_x,
                               double *out_c_x);

// Renormalized `(Ã, B̃)` of the model's bath.
//
// # Safety
// `model` is a live handle; outputs are valid for writes.
enum DphStatus dph_renormalize(const struct DphModel *model,
                               double *out_a_tilde,
                               double *out_b_tilde);

// Finite-difference `∂P_x/∂τ` at `T = 0`, `ε = 0`.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_dp_dtau(const struct DphModel *model, double t, double *out);

// Short-time coefficients: `P_x ≈ 1 − c_p (Bt)²`, `C_x ≈ 1 − c_c (Bt)²`.
//
// # Safety
// `model` is a live handle; outputs are valid for writes.
enum DphStatus dph_short_time_coeffs(const struct DphModel *model,
                                     double *out_c_p,
                                     double *out_c_c);

// Crossover scale `Bt_cr`; `+∞` exactly at the special integer.
//
// # Safety
// `model` is a live handle and `out` is valid for a write.
enum DphStatus dph_crossover_time(const struct DphModel *model,
                                  enum DphCrossover which,
                                  double *out);

// `γ(t)` by adaptive quadrature with default tolerances, honouring the
// model temperature.
//
// # Safety
// `model` is a live handle; outputs are valid for writes.
enum DphStatus dph_gamma_quadrature(const struct DphModel *model,
                                    double t,
                                    double *out_value,
                                    double *out_abs_error);

// Discretizes the model's bath into `count` log-spaced modes; `count = 0`
// selects the default.
//
// # Safety
// `model` is a live handle and `out` is valid for a pointer write.
enum DphStatus dph_discrete_bath_new(const struct DphModel *model,
                                     size_t count,
                                     struct DphDiscreteBath **out);

// Releases a discretized bath; null is ignored.
//
// # Safety
// `bath` is null or came from [`dph_discrete_bath_new`] and is not used
// again.
void dph_discrete_bath_free(struct DphDiscreteBath *bath);

// Mode sums for `γ(t)` and `I(t)`; either output may be null.
//
// # Safety
// `bath` is a live handle; non-null outputs are valid for writes.
enum DphStatus dph_discrete_bath_sums(const struct DphDiscreteBath *bath,
                                      double t,
                                      double temperature,
                                      double *out_gamma,
                                      double *out_phase);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEPHASING_H */
