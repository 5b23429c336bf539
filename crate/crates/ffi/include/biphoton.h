#ifndef BIPHOTON_H
#define BIPHOTON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Coefficient basis accepted by `bq_state_new`.
 */
#define BQ_BASIS_NATURAL 0

#define BQ_BASIS_MIXED 1

/**
 * Mixed state selector: trace out frequency (polarization state) or
 * polarization (frequency state).
 */
#define BQ_POLARIZATION 0

#define BQ_FREQUENCY 1

/**
 * Result code of every fallible call.
 */
typedef enum BqStatus {
  BQ_STATUS_OK = 0,
  BQ_STATUS_NULL_POINTER = 1,
  BQ_STATUS_NORMALIZATION = 2,
  BQ_STATUS_DIMENSION = 3,
  BQ_STATUS_CONVERGENCE = 4,
  BQ_STATUS_DOMAIN = 5,
  BQ_STATUS_INVALID_ARGUMENT = 6,
  BQ_STATUS_PANIC = 7,
} BqStatus;

/**
 * Opaque ququart state.
 */
typedef struct BqState BqState;

typedef struct BqReport {
  double k;
  double c;
  double s_full;
  double s_reduced;
  double mutual_info;
  /**
   * Nonzero when `s_rel` and `c_cl` are defined.
   */
  int32_t has_s_rel;
  double s_rel;
  double c_cl;
  double stokes[3];
  double p;
} BqReport;

typedef struct BqClosedForms {
  double lambda_plus;
  double lambda_minus;
  double k_pol;
  double c_pol;
  double p;
  double spectrum[4];
} BqClosedForms;

typedef struct BqTwoQubit {
  double c_2qb;
  double k_2qb;
  double p_2qb;
} BqTwoQubit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a state from 4 complex coefficients (8 doubles). `basis` is
 * `BQ_BASIS_NATURAL` for `(C1, C2, C3, C4)` or `BQ_BASIS_MIXED` for
 * `(C1, B+, C4, B-)`. With `auto_normalize` zero the squared norm must be
 * within 1e-6 of one.
 *
 * # Safety
 * `coeffs` must point to 8 doubles and `out` to a writable pointer.
 */
enum BqStatus bq_state_new(const double *coeffs,
                           uint32_t basis,
                           int32_t auto_normalize,
                           struct BqState **out);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `state` must come from `bq_state_new` and not be used afterwards.
 */
void bq_state_free(struct BqState *state);

/**
 * Normalized natural-basis coefficients `(C1..C4)`, 8 doubles.
 *
 * # Safety
 * `out` must have room for 8 doubles.
 */
enum BqStatus bq_state_coefficients(const struct BqState *state, double *out);

/**
 * The 16 two-photon amplitudes indexed `4 m1 + m2`, `m = 2 pol + freq`
 * (`H = 0`, high frequency `= 0`): 32 doubles.
 *
 * # Safety
 * `out` must have room for 32 doubles.
 */
enum BqStatus bq_state_amplitudes(const struct BqState *state, double *out);

/**
 * 4x4 mixed-state matrix in the natural product basis: 32 doubles.
 *
 * # Safety
 * `out` must have room for 32 doubles.
 */
enum BqStatus bq_state_density(const struct BqState *state, uint32_t which, double *out);

/**
 * # Safety
 * `out` must point to a writable `BqReport`.
 */
enum BqStatus bq_state_report(const struct BqState *state, uint32_t which, struct BqReport *out);

/**
 * # Safety
 * `out` must point to a writable `BqClosedForms`.
 */
enum BqStatus bq_state_closed_forms(const struct BqState *state, struct BqClosedForms *out);

/**
 * # Safety
 * `out` must point to a writable `BqTwoQubit`.
 */
enum BqStatus bq_state_two_qubit(const struct BqState *state, struct BqTwoQubit *out);

/**
 * Wootters concurrence of an arbitrary two-qubit density matrix given as
 * 32 doubles (row-major, interleaved). The matrix is validated first.
 *
 * # Safety
 * `rho` must point to 32 doubles and `out` to a writable double.
 */
enum BqStatus bq_wootters_concurrence(const double *rho, double *out);

/**
 * Copies the calling thread's last error message, NUL terminated and
 * truncated to `len` bytes. Returns the full message length plus one, so
 * a zero `len` queries the needed size.
 *
 * # Safety
 * `buf` must have room for `len` bytes, or be null with `len == 0`.
 */
size_t bq_last_error(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bq_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIPHOTON_H */
