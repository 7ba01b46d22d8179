#ifndef SUPREMAL_H
#define SUPREMAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum SupremalStatus {
  SUPREMAL_STATUS_OK = 0,
  SUPREMAL_STATUS_NULL_POINTER = 1,
  SUPREMAL_STATUS_INVALID_ARGUMENT = 2,
  SUPREMAL_STATUS_DOMAIN_ERROR = 3,
  SUPREMAL_STATUS_PARSE_ERROR = 4,
  SUPREMAL_STATUS_IO_ERROR = 5,
  SUPREMAL_STATUS_BUFFER_TOO_SMALL = 6,
  SUPREMAL_STATUS_PANIC = 7,
} SupremalStatus;

/**
 * How sums outside the domain are treated by the triple checks.
 */
typedef enum SupremalSumPolicy {
  SUPREMAL_SUM_POLICY_SKIP_UNDEFINED = 0,
  SUPREMAL_SUM_POLICY_REQUIRE_IN_DOMAIN = 1,
} SupremalSumPolicy;

/**
 * Opaque piecewise constant function.
 */
typedef struct SupremalStepFunction SupremalStepFunction;

/**
 * Opaque supremand (analytic or tabulated).
 */
typedef struct SupremalSupremand SupremalSupremand;

/**
 * Value of the energy and the first pair of jump indices attaining it.
 */
typedef struct SupremalEnergy {
  double value;
  bool has_pair;
  size_t s;
  size_t t;
} SupremalEnergy;

/**
 * Outcome of a condition check. `witness_args` holds `witness_len` values.
 */
typedef struct SupremalCheckReport {
  bool passed;
  size_t tuples_checked;
  size_t tuples_skipped;
  bool has_witness;
  size_t witness_len;
  double witness_args[4];
  double witness_lhs;
  double witness_rhs;
} SupremalCheckReport;

typedef struct SupremalCrossCheck {
  size_t instances;
  size_t agreements;
  size_t disagreements;
  size_t both_failed;
} SupremalCrossCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *supremal_last_error(void);

/**
 * # Safety
 * `breaks` holds `n_breaks` doubles, `values` holds `n_values`; `out` is writable.
 */
enum SupremalStatus supremal_step_new(double a,
                                      double b,
                                      const double *breaks,
                                      size_t n_breaks,
                                      const double *values,
                                      size_t n_values,
                                      struct SupremalStepFunction **out_fn);

/**
 * Parses the `interval`/`piece`/`break` text record.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum SupremalStatus supremal_step_parse(const char *text, struct SupremalStepFunction **out_fn);

/**
 * # Safety
 * `u` was returned by this library and is not used afterwards. NULL is a no-op.
 */
void supremal_step_free(struct SupremalStepFunction *u);

/**
 * # Safety
 * `u` is a live handle or NULL.
 */
size_t supremal_step_jump_count(const struct SupremalStepFunction *u);

/**
 * Copies the jumps into `buf`. `written` receives the jump count, also on
 * `BufferTooSmall`.
 *
 * # Safety
 * `buf` has room for `cap` doubles; `written` is writable.
 */
enum SupremalStatus supremal_step_jumps(const struct SupremalStepFunction *u,
                                        double *buf,
                                        size_t cap,
                                        size_t *written);

/**
 * # Safety
 * `u`, `v` are live handles; `dist` is writable.
 */
enum SupremalStatus supremal_l1_distance(const struct SupremalStepFunction *u,
                                         const struct SupremalStepFunction *v,
                                         double *dist);

/**
 * Builds a supremand from a `<name>[:param]` spec. The declared infimum is
 * used only when `has_declared_inf` is set.
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is writable.
 */
enum SupremalStatus supremal_supremand_from_spec(const char *spec,
                                                 bool has_declared_inf,
                                                 double declared_inf,
                                                 struct SupremalSupremand **out_h);

/**
 * Tabulated supremand; `table` is the `n × n` matrix in row-major order.
 *
 * # Safety
 * `alphabet` holds `n` doubles and `table` holds `n * n`; `out` is writable.
 */
enum SupremalStatus supremal_supremand_from_grid(const double *alphabet,
                                                 size_t n,
                                                 const double *table,
                                                 struct SupremalSupremand **out_h);

/**
 * New handle holding the symmetric-diagonal hull of `h`.
 *
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum SupremalStatus supremal_supremand_hull(const struct SupremalSupremand *h,
                                            struct SupremalSupremand **out_h);

/**
 * # Safety
 * `h` was returned by this library and is not used afterwards. NULL is a no-op.
 */
void supremal_supremand_free(struct SupremalSupremand *h);

/**
 * # Safety
 * `h` is a live handle; `value` is writable.
 */
enum SupremalStatus supremal_supremand_eval(const struct SupremalSupremand *h,
                                            double x,
                                            double y,
                                            double *value);

/**
 * # Safety
 * `u`, `h` are live handles; `energy` is writable.
 */
enum SupremalStatus supremal_evaluate_h(const struct SupremalStepFunction *u,
                                        const struct SupremalSupremand *h,
                                        struct SupremalEnergy *energy);

/**
 * Cartesian submaximality on all triples of `points`. A violation is
 * reported through `report.passed`, not the status.
 *
 * # Safety
 * `h` is a live handle; `points` holds `n` doubles; `report` is writable.
 */
enum SupremalStatus supremal_check_cartesian(const struct SupremalSupremand *h,
                                             const double *points,
                                             size_t n,
                                             enum SupremalSumPolicy policy,
                                             double tol,
                                             struct SupremalCheckReport *report);

/**
 * Separate submaximality on all triples of `points`.
 *
 * # Safety
 * As for [`supremal_check_cartesian`].
 */
enum SupremalStatus supremal_check_separate(const struct SupremalSupremand *h,
                                            const double *points,
                                            size_t n,
                                            enum SupremalSumPolicy policy,
                                            double tol,
                                            struct SupremalCheckReport *report);

/**
 * Predicate versus brute-force oracle on seeded random tables.
 *
 * # Safety
 * `alphabet` holds `n` doubles; `result` is writable.
 */
enum SupremalStatus supremal_crosscheck(uint64_t seed,
                                        size_t instances,
                                        const double *alphabet,
                                        size_t n,
                                        size_t levels,
                                        struct SupremalCrossCheck *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPREMAL_H */
