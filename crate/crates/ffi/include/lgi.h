/* C API for the lgi Leggett-Garg simulator. */

#ifndef LGI_H
#define LGI_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LGI_ENGINE_SEPARATE 0

#define LGI_ENGINE_SIMULTANEOUS 1

#define LGI_ENGINE_INRM 2

typedef enum LgiStatus {
  LGI_STATUS_OK = 0,
  LGI_STATUS_NULL_POINTER = 1,
  LGI_STATUS_INVALID_ARGUMENT = 2,
  LGI_STATUS_DIMENSION_MISMATCH = 3,
  LGI_STATUS_INVALID_STATE = 4,
  LGI_STATUS_UNSUPPORTED = 5,
  LGI_STATUS_PANIC = 99,
} LgiStatus;

// Opaque protocol configuration: θ, initial state and observable.
typedef struct LgiConfig LgiConfig;

// Opaque result of a θ sweep.
typedef struct LgiSweep LgiSweep;

typedef struct LgiCorrelators {
  double c12;
  double c23;
  double c13;
  double k;
} LgiCorrelators;

// Bloch vectors of one input after free evolution (`before`) and after the
// ancilla-coupled run (`after`).
typedef struct LgiPerturbation {
  double before[3];
  double after[3];
  double displacement[3];
} LgiPerturbation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *lgi_status_message(enum LgiStatus status);

// Message for the most recent failure on this thread; empty after a success.
// Valid until the next lgi call on the same thread.
const char *lgi_last_error(void);

// Creates a configuration with initial state I/2 and observable σz.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum LgiStatus lgi_config_new(double theta, struct LgiConfig **out);

// # Safety
// `config` must be NULL or a handle from [`lgi_config_new`] not yet freed.
void lgi_config_free(struct LgiConfig *config);

// # Safety
// `config` must be a live handle.
enum LgiStatus lgi_config_set_theta(struct LgiConfig *config, double theta);

// Sets the initial state from a 2x2 matrix in row-major order, given as
// separate real and imaginary arrays of 4 entries each.
//
// # Safety
// `config` must be a live handle; `re` and `im` must each point to 4 doubles.
enum LgiStatus lgi_config_set_initial_state(struct LgiConfig *config,
                                            const double *re,
                                            const double *im);

// Sets the observable to 2|ψ⟩⟨ψ| − I for |ψ⟩ = a|0⟩ + b|1⟩ (normalized).
//
// # Safety
// `config` must be a live handle.
enum LgiStatus lgi_config_set_observable(struct LgiConfig *config,
                                         double a_re,
                                         double a_im,
                                         double b_re,
                                         double b_im);

// Single correlator C_km for the separate-run or INRM engine. The
// single-run engine only yields all three at once; use [`lgi_k_statistic`].
//
// # Safety
// `config` must be a live handle and `out` writable.
enum LgiStatus lgi_correlator(const struct LgiConfig *config,
                              uint32_t engine,
                              uint32_t k,
                              uint32_t m,
                              double *out);

// # Safety
// `config` must be a live handle and `out` writable.
enum LgiStatus lgi_k_statistic(const struct LgiConfig *config,
                               uint32_t engine,
                               struct LgiCorrelators *out);

// Sweeps θ over `grid` using `config` (or the default I/2, σz configuration
// when `config` is NULL).
//
// # Safety
// `grid` must point to `len` doubles; `config` must be NULL or a live handle;
// `out` must be writable.
enum LgiStatus lgi_sweep_new(const struct LgiConfig *config,
                             const double *grid,
                             size_t len,
                             uint32_t engine,
                             struct LgiSweep **out);

// Number of rows in a sweep; 0 for NULL.
//
// # Safety
// `sweep` must be NULL or a live handle.
size_t lgi_sweep_len(const struct LgiSweep *sweep);

// # Safety
// `sweep` must be a live handle; `theta` and `out` must be writable.
enum LgiStatus lgi_sweep_get(const struct LgiSweep *sweep,
                             size_t index,
                             double *theta,
                             struct LgiCorrelators *out);

// # Safety
// `sweep` must be NULL or a handle from [`lgi_sweep_new`] not yet freed.
void lgi_sweep_free(struct LgiSweep *sweep);

// Writes reports for |0⟩, |1⟩ and I/2 (in that order) into `out[0..3]`.
//
// # Safety
// `out` must point to 3 writable `LgiPerturbation` values.
enum LgiStatus lgi_invasiveness(double theta, struct LgiPerturbation *out);

// Exact correlators of the classical telegraph model. `invasive_kick` = 0
// gives the non-invasive bound-respecting model.
//
// # Safety
// `out` must be writable.
enum LgiStatus lgi_macrorealist_k(double p_flip,
                                  double initial_prob_up,
                                  double invasive_kick,
                                  struct LgiCorrelators *out);

// Thermal polarization ε = (1 − α)/(1 + α), α = exp(−μB/kT).
//
// # Safety
// `out` must be writable.
enum LgiStatus lgi_thermal_epsilon(double magnetic_moment,
                                   double field,
                                   double temperature,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LGI_H */
