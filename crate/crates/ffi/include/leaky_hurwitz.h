#ifndef LEAKY_HURWITZ_H
#define LEAKY_HURWITZ_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LhMethod {
  LH_METHOD_FOCK = 0,
  LH_METHOD_TROPICAL = 1,
  LH_METHOD_AUTO = 2,
} LhMethod;

typedef enum LhStatus {
  LH_STATUS_OK = 0,
  LH_STATUS_VERIFICATION_FAILED = 1,
  LH_STATUS_INVALID_INPUT = 2,
  LH_STATUS_MISMATCH = 3,
  LH_STATUS_NULL_POINTER = 4,
  LH_STATUS_PANIC = 5,
} LhStatus;

/**
 * A Hurwitz query under construction.
 */
typedef struct LhQuery LhQuery;

/**
 * An exact rational value.
 */
typedef struct LhValue LhValue;

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on this thread.
 */
const char *lh_last_error(void);

/**
 * Library version, static storage.
 */
const char *lh_version(void);

/**
 * Creates a query with profiles `mu`, `nu` and no insertions.
 *
 * # Safety
 * `mu` and `nu` point to `mu_len` and `nu_len` readable values (or are
 * null with length 0); `out` is writable.
 */
enum LhStatus lh_query_new(const uint32_t *mu,
                           size_t mu_len,
                           const uint32_t *nu,
                           size_t nu_len,
                           bool connected,
                           struct LhQuery **out);

/**
 * Appends insertion `(k, r)` on the right.
 *
 * # Safety
 * `query` is a live handle from [`lh_query_new`].
 */
enum LhStatus lh_query_push_insertion(struct LhQuery *query, int64_t k, uint32_t r);

/**
 * # Safety
 * `query` is null or a live handle; it is invalid afterwards.
 */
void lh_query_free(struct LhQuery *query);

/**
 * Evaluates `query`. `LH_METHOD_AUTO` runs both engines and returns
 * `Mismatch` if they differ.
 *
 * # Safety
 * `query` is a live handle; `out` is writable.
 */
enum LhStatus lh_compute(const struct LhQuery *query, enum LhMethod method, struct LhValue **out);

/**
 * Closed-form one-part value `lh` for `(k, r, q)` and `μ = (m)`.
 *
 * # Safety
 * `out` is writable.
 */
enum LhStatus lh_one_part(uint32_t k, uint32_t r, uint32_t q, uint64_t m, struct LhValue **out);

/**
 * Closed-form two-part value `lh` for `(k, r, q)` and `μ = (l, m)`.
 *
 * # Safety
 * `out` is writable.
 */
enum LhStatus lh_two_part(uint32_t k,
                          uint32_t r,
                          uint32_t q,
                          uint64_t l,
                          uint64_t m,
                          struct LhValue **out);

/**
 * `"p/q"` text of `value`.
 *
 * # Safety
 * `value` is a live handle; `out` is writable. Free the string with
 * [`lh_string_free`].
 */
enum LhStatus lh_value_to_string(const struct LhValue *value, char **out);

/**
 * # Safety
 * `value` is null or a live handle; it is invalid afterwards.
 */
void lh_value_free(struct LhValue *value);

/**
 * Runs a verification request given as JSON, e.g.
 * `{"suite":"bergman","k":1,"r":2,"q":1,"order":12}`, and writes the
 * report JSON to `out`. Returns `VerificationFailed` when the report
 * fails; the report is written either way.
 *
 * # Safety
 * `request` is a nul-terminated UTF-8 string; `out` is writable.
 */
enum LhStatus lh_verify_json(const char *request, char **out);

/**
 * # Safety
 * `s` is null or a string returned by this library; it is invalid
 * afterwards.
 */
void lh_string_free(char *s);

#endif  /* LEAKY_HURWITZ_H */
