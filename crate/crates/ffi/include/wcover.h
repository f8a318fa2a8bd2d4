#ifndef WCOVER_H
#define WCOVER_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_UTF8 = 2,
  WC_STATUS_INVALID_INPUT = 3,
  WC_STATUS_RESOURCE_LIMIT = 4,
  WC_STATUS_PANIC = 5,
} WcStatus;

/**
 * A full table of values.
 */
typedef struct WcFunction WcFunction;

/**
 * A weighted set system.
 */
typedef struct WcInstance WcInstance;

/**
 * A value oracle that counts its queries.
 */
typedef struct WcOracle WcOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void wc_string_free(char *s);

/**
 * Parses a table file (`{"m", "values"}`) into a function handle.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum WcStatus wc_function_from_json(const char *json, struct WcFunction **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. Null is ignored.
 */
void wc_function_free(struct WcFunction *f);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_function_ground_size(const struct WcFunction *f, size_t *out);

/**
 * Writes whether every W-coefficient is nonnegative.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_function_is_coverage(const struct WcFunction *f, bool *out);

/**
 * Fraction of negative W-coefficients as a `"p/q"` string.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_function_w_distance(const struct WcFunction *f, char **out);

/**
 * JSON report with the coefficients, verdict and W-distance.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_function_transform_json(const struct WcFunction *f, char **out);

/**
 * Parses an instance file (`{"m", "elements"}`).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum WcStatus wc_instance_from_json(const char *json, struct WcInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not have been freed. Null is ignored.
 */
void wc_instance_free(struct WcInstance *inst);

/**
 * Weight of the elements covered by the set `bits`, as a string.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_instance_eval(const struct WcInstance *inst, uint64_t bits, char **out);

/**
 * Tabulates an instance into a function handle.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_instance_to_function(const struct WcInstance *inst, struct WcFunction **out);

/**
 * Oracle from a spec, instance or table JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum WcStatus wc_oracle_from_json(const char *json, struct WcOracle **out);

/**
 * Oracle for the hard function `f*`. `n` is a rational string, or null for
 * the default `(2^m)! + 1`.
 *
 * # Safety
 * `n` must be null or a nul-terminated string; `out` must be writable.
 */
enum WcStatus wc_oracle_fstar(size_t m, size_t k, const char *n, struct WcOracle **out);

/**
 * # Safety
 * `o` must come from this library and not have been freed. Null is ignored.
 */
void wc_oracle_free(struct WcOracle *o);

/**
 * Queries the oracle once.
 *
 * # Safety
 * `o` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_oracle_eval(const struct WcOracle *o, uint64_t bits, char **out);

/**
 * Number of queries answered so far.
 *
 * # Safety
 * `o` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_oracle_queries(const struct WcOracle *o, uint64_t *out);

/**
 * Recovers an instance with support at most `n`. Writes the instance JSON
 * on success; a non-coverage oracle fails with `InvalidInput` and the
 * reason in [`wc_last_error`].
 *
 * # Safety
 * `o` must be a live handle; `out` must be writable.
 */
enum WcStatus wc_oracle_recover(const struct WcOracle *o, size_t n, char **out);

/**
 * Runs the tester with `ε` given as a rational string; writes `true` for
 * accept.
 *
 * # Safety
 * `o` must be a live handle, `epsilon` a nul-terminated string and `out`
 * writable.
 */
enum WcStatus wc_oracle_test(const struct WcOracle *o,
                             size_t n,
                             const char *epsilon,
                             uint64_t seed,
                             bool *out);

/**
 * Decides whether a log (`{"m", "entries"}`) extends to a coverage
 * function. Writes `{"feasible", "completion", "witness"}`.
 *
 * # Safety
 * `log_json` must be a nul-terminated string; `out` must be writable.
 */
enum WcStatus wc_complete_json(const char *log_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WCOVER_H */
