#ifndef ROTA_BAXTER_H
#define ROTA_BAXTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RbMethod {
  RB_METHOD_PICARD = 0,
  RB_METHOD_CLOSED = 1,
} RbMethod;

typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_NULL_POINTER = 1,
  RB_STATUS_INVALID_UTF8 = 2,
  RB_STATUS_PARSE = 3,
  RB_STATUS_USAGE = 4,
  RB_STATUS_DOMAIN = 5,
  RB_STATUS_RING_MISMATCH = 6,
  RB_STATUS_CAP_MISMATCH = 7,
  RB_STATUS_CONFIG = 8,
  RB_STATUS_PANIC = 9,
} RbStatus;

/**
 * A Rota-Baxter operator with its parameter.
 */
typedef struct RbOperator RbOperator;

/**
 * Truncated power series over ℚ or a matrix ring.
 */
typedef struct RbSeries RbSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *rb_last_error_message(void);

/**
 * Parses comma-separated coefficients; `dim` 1 is the scalar ring.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum RbStatus rb_series_parse(const char *text, uint32_t dim, uint32_t cap, struct RbSeries **out);

/**
 * Parses a JSON array of coefficients.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum RbStatus rb_series_parse_json(const char *json,
                                   uint32_t dim,
                                   uint32_t cap,
                                   struct RbSeries **out);

/**
 * # Safety
 * `series` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_series_to_text(const struct RbSeries *series, char **out);

/**
 * # Safety
 * `series` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_series_to_json(const struct RbSeries *series, char **out);

/**
 * Truncation order of the series, or 0 for a null handle.
 *
 * # Safety
 * `series` must be null or come from this library.
 */
uint32_t rb_series_cap(const struct RbSeries *series);

/**
 * # Safety
 * `a` and `b` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_series_mul(const struct RbSeries *a,
                            const struct RbSeries *b,
                            struct RbSeries **out);

/**
 * # Safety
 * `a` and `b` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_series_add(const struct RbSeries *a,
                            const struct RbSeries *b,
                            struct RbSeries **out);

/**
 * # Safety
 * `series` must be null or come from this library, and not be freed twice.
 */
void rb_series_free(struct RbSeries *series);

/**
 * `kind` is `qint`, `qscale` or `antider`; `q` is a rational such as
 * `"1/2"`, required for the q-operators and ignored (may be null) otherwise.
 *
 * # Safety
 * `kind` must be a nul-terminated string, `q` null or nul-terminated, and
 * `out` a valid pointer.
 */
enum RbStatus rb_operator_new(const char *kind, const char *q, struct RbOperator **out);

/**
 * # Safety
 * `op` must be null or come from this library, and not be freed twice.
 */
void rb_operator_free(struct RbOperator *op);

/**
 * # Safety
 * `op` and `x` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_operator_apply(const struct RbOperator *op,
                                const struct RbSeries *x,
                                struct RbSeries **out);

/**
 * Applies `x ↦ −λx − P(x)`.
 *
 * # Safety
 * `op` and `x` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_operator_apply_tilde(const struct RbOperator *op,
                                      const struct RbSeries *x,
                                      struct RbSeries **out);

/**
 * Solves `homogeneous`, `inhom-left` or `inhom-right`; `a0` must be null
 * for the homogeneous equation and non-null otherwise.
 *
 * # Safety
 * `equation` must be a nul-terminated string; `op`, `a1` and a non-null
 * `a0` must come from this library; `out` must be a valid pointer.
 */
enum RbStatus rb_solve(const char *equation,
                       const struct RbOperator *op,
                       const struct RbSeries *a0,
                       const struct RbSeries *a1,
                       enum RbMethod method,
                       struct RbSeries **out);

/**
 * Runs one identity check. `params_json` is null or a JSON object of
 * string values such as `{"q": "1/2", "order": "12"}`. The report is
 * written as a JSON object with keys `identity_id`, `params`, `status`,
 * `first_mismatch` and `elapsed_ms`.
 *
 * # Safety
 * `identity_id` must be nul-terminated, `params_json` null or
 * nul-terminated, and `report_json` a valid pointer.
 */
enum RbStatus rb_verify(const char *identity_id, const char *params_json, char **report_json);

/**
 * Runs the bundled manifest. Writes the JSON array of reports and whether
 * every status matched its expectation.
 *
 * # Safety
 * `reports_json` and `all_expected` must be valid pointers.
 */
enum RbStatus rb_run_default_suite(char **reports_json, bool *all_expected);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void rb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROTA_BAXTER_H */
