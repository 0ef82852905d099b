#ifndef NILFIBRE_H
#define NILFIBRE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NfStatus {
  NF_STATUS_OK = 0,
  NF_STATUS_NULL_POINTER = 1,
  NF_STATUS_INVALID_UTF8 = 2,
  NF_STATUS_INVALID_COMPOSITION = 3,
  NF_STATUS_PARSE = 4,
  NF_STATUS_LIMIT_EXCEEDED = 5,
  /**
   * A pair could not be implemented or a choice was illegal.
   */
  NF_STATUS_IMPLEMENTATION = 6,
  /**
   * An enabling, structure or factorization check failed.
   */
  NF_STATUS_VERIFICATION = 7,
  NF_STATUS_ALGEBRA = 8,
  NF_STATUS_PANIC = 9,
} NfStatus;

/**
 * Opaque handle to a validated composition.
 */
typedef struct NfComposition NfComposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a composition such as `"1,2,2,1"` into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum NfStatus nf_composition_new(const char *text, struct NfComposition **out);

/**
 * # Safety
 * `h` must come from [`nf_composition_new`] and not be freed twice.
 */
void nf_composition_free(struct NfComposition *h);

/**
 * Number of neighbouring pairs.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum NfStatus nf_composition_pair_count(const struct NfComposition *h, size_t *out);

/**
 * ASCII rendering of the standard tableau.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum NfStatus nf_tableau_ascii(const struct NfComposition *h, char **out);

/**
 * One line per neighbouring pair: label, degree and invariant.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum NfStatus nf_invariants_text(const struct NfComposition *h, char **out);

/**
 * Component census as JSON. A `limit` of 0 selects the default guard.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum NfStatus nf_census_json(const struct NfComposition *h,
                             uint64_t limit,
                             uint64_t seed,
                             char **out);

/**
 * Runs every check; `*passed` is 1 when all sections pass.
 *
 * # Safety
 * `h` must be a live handle and `passed` writable.
 */
enum NfStatus nf_verify(const struct NfComposition *h, int32_t *passed);

/**
 * Copy of the last error message on this thread, or null if the previous
 * call succeeded.
 */
char *nf_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void nf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILFIBRE_H */
