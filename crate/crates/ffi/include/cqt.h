#ifndef CQT_H
#define CQT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Number of modes in the chain, and the length of every coefficient row.
 */
#define CQT_N_MODES 6

typedef enum CqtStatus {
  CQT_STATUS_OK = 0,
  CQT_STATUS_NULL_POINTER = 1,
  CQT_STATUS_INVALID_ARGUMENT = 2,
  CQT_STATUS_DEGENERATE_QUBIT = 3,
  CQT_STATUS_INFEASIBLE_CUTOFF = 4,
  CQT_STATUS_ACCURACY_LIMIT = 5,
  CQT_STATUS_OUT_OF_RANGE = 6,
  CQT_STATUS_PANIC = 99,
} CqtStatus;

/**
 * Result rows of a detuning sweep, in grid order. Opaque.
 */
typedef struct CqtSweep CqtSweep;

/**
 * Sampled population curves. Opaque.
 */
typedef struct CqtTrajectory CqtTrajectory;

typedef struct CqtParams {
  double omega;
  double delta;
  double g;
  double c;
} CqtParams;

typedef struct CqtRabi {
  double a;
  double b;
  double f;
} CqtRabi;

typedef struct CqtComplex {
  double re;
  double im;
} CqtComplex;

typedef struct CqtTransferResult {
  double t_star;
  double quality;
  double phase;
  double max_f_pop;
} CqtTransferResult;

/**
 * `(mu |alpha> + nu |-alpha>) / sqrt(N)`.
 */
typedef struct CqtQubit {
  struct CqtComplex alpha;
  struct CqtComplex mu;
  struct CqtComplex nu;
} CqtQubit;

typedef struct CqtTrajectoryPoint {
  double t;
  double f_pop;
  double u2;
  double u4;
  double u6;
} CqtTrajectoryPoint;

typedef struct CqtDesignPoint {
  double delta;
  struct CqtTransferResult result;
  bool feasible;
} CqtDesignPoint;

typedef struct CqtOracleReport {
  size_t cutoff;
  double time;
  double per_mode_dev;
  double photon_number_dev;
  double fidelity_dev;
  double sector_dev;
  double fock_fidelity;
  double closed_form_fidelity;
} CqtOracleReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; unrecognised codes get a generic
 * string.
 */
const char *cqt_status_string(int32_t status);

/**
 * Message for the last failed call on this thread, or NULL after a
 * success. Valid until the next call into the library on the same thread.
 */
const char *cqt_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cqt_version(void);

/**
 * # Safety
 * `params` and `out` must be valid pointers or NULL.
 */
enum CqtStatus cqt_rabi_frequencies(const struct CqtParams *params, struct CqtRabi *out);

/**
 * Closed-form row `u_1..u_6` of the `b1` operator at time `t`.
 *
 * # Safety
 * `out` must point to at least [`CQT_N_MODES`] writable elements.
 */
enum CqtStatus cqt_transfer_coefficients(const struct CqtParams *params,
                                         double t,
                                         struct CqtComplex *out);

/**
 * Same row from the numeric eigendecomposition.
 *
 * # Safety
 * `out` must point to at least [`CQT_N_MODES`] writable elements.
 */
enum CqtStatus cqt_propagator_row_b1(const struct CqtParams *params,
                                     double t,
                                     struct CqtComplex *out);

/**
 * # Safety
 * `params` and `out` must be valid pointers or NULL.
 */
enum CqtStatus cqt_find_transfer_time(const struct CqtParams *params,
                                      double window_lo,
                                      double window_hi,
                                      double rel_tol,
                                      struct CqtTransferResult *out);

/**
 * # Safety
 * Pointer arguments must be valid or NULL.
 */
enum CqtStatus cqt_qubit_fidelity(const struct CqtQubit *qubit,
                                  const struct CqtParams *params,
                                  double t,
                                  bool phase_corrected,
                                  double *out);

/**
 * Mean total cavity photon number at time `t`.
 *
 * # Safety
 * Pointer arguments must be valid or NULL.
 */
enum CqtStatus cqt_avg_photon_number(const struct CqtQubit *qubit,
                                     const struct CqtParams *params,
                                     double t,
                                     double *out);

/**
 * Population curves on `n_points` uniform samples of `[0, t_max]`.
 *
 * # Safety
 * `out` must be a valid pointer; the handle written there must be released
 * with [`cqt_trajectory_free`].
 */
enum CqtStatus cqt_trajectory_new(const struct CqtParams *params,
                                  double t_max,
                                  size_t n_points,
                                  struct CqtTrajectory **out);

/**
 * Number of samples; 0 for NULL.
 *
 * # Safety
 * `traj` must be NULL or a live handle.
 */
size_t cqt_trajectory_len(const struct CqtTrajectory *traj);

/**
 * # Safety
 * `traj` must be NULL or a live handle; `out` valid or NULL.
 */
enum CqtStatus cqt_trajectory_get(const struct CqtTrajectory *traj,
                                  size_t index,
                                  struct CqtTrajectoryPoint *out);

/**
 * Releases a trajectory. NULL is a no-op.
 *
 * # Safety
 * `traj` must be NULL or a handle from [`cqt_trajectory_new`] not yet freed.
 */
void cqt_trajectory_free(struct CqtTrajectory *traj);

/**
 * Transfer search at every detuning in `deltas` (with `omega = 1`),
 * flagging rows whose cavity population stays at or below `pop_cap`.
 *
 * # Safety
 * `deltas` must point to `n_deltas` readable values; `out` as for
 * [`cqt_trajectory_new`], released with [`cqt_sweep_free`].
 */
enum CqtStatus cqt_sweep_new(double g,
                             double c,
                             const double *deltas,
                             size_t n_deltas,
                             double pop_cap,
                             double window_lo,
                             double window_hi,
                             double rel_tol,
                             struct CqtSweep **out);

/**
 * Number of rows; 0 for NULL.
 *
 * # Safety
 * `sweep` must be NULL or a live handle.
 */
size_t cqt_sweep_len(const struct CqtSweep *sweep);

/**
 * # Safety
 * `sweep` must be NULL or a live handle; `out` valid or NULL.
 */
enum CqtStatus cqt_sweep_get(const struct CqtSweep *sweep,
                             size_t index,
                             struct CqtDesignPoint *out);

/**
 * Releases a sweep. NULL is a no-op.
 *
 * # Safety
 * `sweep` must be NULL or a handle from [`cqt_sweep_new`] not yet freed.
 */
void cqt_sweep_free(struct CqtSweep *sweep);

/**
 * Closed forms against the truncated Fock simulation at time `t`.
 * `cutoff = 0` picks the smallest adequate cutoff.
 *
 * # Safety
 * `params` and `out` must be valid pointers or NULL.
 */
enum CqtStatus cqt_oracle_run(const struct CqtParams *params,
                              struct CqtComplex alpha,
                              double t,
                              size_t cutoff,
                              struct CqtOracleReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CQT_H */
