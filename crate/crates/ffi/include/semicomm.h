#ifndef SEMICOMM_H
#define SEMICOMM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SemicommOutcome {
  SEMICOMM_OUTCOME_HOLDS = 0,
  SEMICOMM_OUTCOME_NOT_APPLICABLE = 1,
  SEMICOMM_OUTCOME_VIOLATED = 2,
} SemicommOutcome;

typedef enum SemicommSignClass {
  SEMICOMM_SIGN_CLASS_POSITIVE = 0,
  SEMICOMM_SIGN_CLASS_NEGATIVE = 1,
  SEMICOMM_SIGN_CLASS_ZERO = 2,
  SEMICOMM_SIGN_CLASS_MIXED = 3,
} SemicommSignClass;

/**
 * Result code of every exported function.
 */
typedef enum SemicommStatus {
  SEMICOMM_STATUS_OK = 0,
  SEMICOMM_STATUS_NULL_POINTER = 1,
  SEMICOMM_STATUS_SHAPE = 2,
  SEMICOMM_STATUS_DOMAIN = 3,
  SEMICOMM_STATUS_PARSE = 4,
  SEMICOMM_STATUS_USAGE = 5,
  SEMICOMM_STATUS_GENERATION = 6,
  SEMICOMM_STATUS_IO = 7,
  SEMICOMM_STATUS_INVALID_UTF8 = 8,
  SEMICOMM_STATUS_PANIC = 9,
} SemicommStatus;

/**
 * Opaque exact rational matrix.
 */
typedef struct SemicommMatrix SemicommMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *semicomm_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *semicomm_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not
 * been freed.
 */
void semicomm_string_free(char *s);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle obtained from this library that has not
 * been freed.
 */
void semicomm_matrix_free(struct SemicommMatrix *m);

/**
 * Parses a matrix from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SemicommStatus semicomm_matrix_from_json(const char *json, struct SemicommMatrix **out);

/**
 * Builds a matrix from `rows * cols` integers in row-major order.
 *
 * # Safety
 * `entries` must point to `rows * cols` readable values; `out` must be writable.
 */
enum SemicommStatus semicomm_matrix_from_ints(size_t rows,
                                              size_t cols,
                                              const int64_t *entries,
                                              struct SemicommMatrix **out);

/**
 * Serializes a matrix to JSON; free the result with `semicomm_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum SemicommStatus semicomm_matrix_to_json(const struct SemicommMatrix *m, char **out);

/**
 * Row and column counts of a matrix.
 *
 * # Safety
 * `m` must be a live handle; `rows` and `cols` must be writable.
 */
enum SemicommStatus semicomm_matrix_shape(const struct SemicommMatrix *m,
                                          size_t *rows,
                                          size_t *cols);

/**
 * Dimension of the unital algebra generated by `count` matrices.
 *
 * # Safety
 * `generators` must point to `count` live handles (it may be null when
 * `count` is zero); `out` must be writable.
 */
enum SemicommStatus semicomm_algebra_dim(const struct SemicommMatrix *const *generators,
                                         size_t count,
                                         size_t *out);

/**
 * Sign class of the commutator `AB − BA`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SemicommStatus semicomm_commutator_sign(const struct SemicommMatrix *a,
                                             const struct SemicommMatrix *b,
                                             enum SemicommSignClass *out);

/**
 * Whether a positive square matrix is ideal-irreducible.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum SemicommStatus semicomm_is_ideal_irreducible(const struct SemicommMatrix *m, bool *out);

/**
 * Dimension bound from the invariant-ideal chain of `A + B`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SemicommStatus semicomm_refined_bound(const struct SemicommMatrix *a,
                                           const struct SemicommMatrix *b,
                                           size_t *out);

/**
 * Builds a named pair: `"gerstenhaber"` and `"catalan"` use `n`;
 * `"idem7"` and `"idem3"` ignore it; `"random:<family>"` uses `n` and `seed`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `a` and `b` must be writable.
 */
enum SemicommStatus semicomm_construct_pair(const char *name,
                                            size_t n,
                                            uint64_t seed,
                                            struct SemicommMatrix **a,
                                            struct SemicommMatrix **b);

/**
 * Checks one theorem predicate on an instance given as JSON. When
 * `report_json` is non-null it receives the full report, to be released
 * with `semicomm_string_free`.
 *
 * # Safety
 * `theorem` and `instance_json` must be NUL-terminated strings; `outcome`
 * must be writable; `report_json` must be null or writable.
 */
enum SemicommStatus semicomm_verify(const char *theorem,
                                    const char *instance_json,
                                    enum SemicommOutcome *outcome,
                                    char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMICOMM_H */
