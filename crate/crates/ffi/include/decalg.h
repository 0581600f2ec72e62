#ifndef DECALG_H
#define DECALG_H

/* Generated by cbindgen from the decalg-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum DecalgStatus {
  DECALG_STATUS_OK = 0,
  /**
   * The computation finished and the object failed its checks.
   */
  DECALG_STATUS_INVALID = 1,
  /**
   * Malformed input: bad JSON, bad arguments, unreadable files.
   */
  DECALG_STATUS_BAD_INPUT = 2,
  /**
   * A search limit was reached before an answer was found.
   */
  DECALG_STATUS_EXHAUSTED = 3,
  DECALG_STATUS_NULL_POINTER = 4,
  DECALG_STATUS_INVALID_UTF8 = 5,
  /**
   * The computation failed for a mathematical reason.
   */
  DECALG_STATUS_FAILED = 6,
  DECALG_STATUS_PANIC = 7,
} DecalgStatus;

/**
 * A decomposition algebra over the rationals or the complex floats.
 */
typedef struct DecalgDecompositionAlgebra DecalgDecompositionAlgebra;

/**
 * A fusion law.
 */
typedef struct DecalgFusionLaw DecalgFusionLaw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static NUL-terminated string.
 */
const char *decalg_version(void);

/**
 * The message for the last failure on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *decalg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void decalg_string_free(char *s);

/**
 * Parses a fusion law from its JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DecalgStatus decalg_fusion_law_from_json(const char *json, struct DecalgFusionLaw **out);

/**
 * # Safety
 * `law` must come from [`decalg_fusion_law_from_json`] or be null.
 */
void decalg_fusion_law_free(struct DecalgFusionLaw *law);

/**
 * Number of elements of the law, or 0 for a null handle.
 *
 * # Safety
 * `law` must be a live handle or null.
 */
size_t decalg_fusion_law_len(const struct DecalgFusionLaw *law);

/**
 * Writes the finest abelian grading of `law` as JSON to `out`.
 *
 * # Safety
 * `law` must be a live handle and `out` a valid pointer.
 */
enum DecalgStatus decalg_fusion_law_grade(const struct DecalgFusionLaw *law, char **out);

/**
 * Parses a decomposition algebra, exact when every scalar is rational.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DecalgStatus decalg_algebra_from_json(const char *json,
                                           struct DecalgDecompositionAlgebra **out);

/**
 * # Safety
 * `algebra` must come from [`decalg_algebra_from_json`] or be null.
 */
void decalg_algebra_free(struct DecalgDecompositionAlgebra *algebra);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be a live handle or null.
 */
size_t decalg_algebra_dim(const struct DecalgDecompositionAlgebra *algebra);

/**
 * 1 when the algebra has exact rational scalars, 0 otherwise.
 *
 * # Safety
 * `algebra` must be a live handle or null.
 */
int decalg_algebra_is_exact(const struct DecalgDecompositionAlgebra *algebra);

/**
 * Verifies the algebra and writes the report to `out`. Returns `Ok` when it
 * is valid and `Invalid` otherwise; the report is written in both cases.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer.
 */
enum DecalgStatus decalg_algebra_verify(const struct DecalgDecompositionAlgebra *algebra,
                                        char **out);

/**
 * Runs a named example and writes its report to `out`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DecalgStatus decalg_reproduce(const char *id, char **out);

/**
 * Runs a command-line invocation (without the program name) and writes its
 * JSON report to `out`. The status mirrors the command's exit code.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings and `out` must be a
 * valid pointer.
 */
enum DecalgStatus decalg_run(int argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECALG_H */
