#ifndef MODCHECK_H
#define MODCHECK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum McFamily {
  MC_FAMILY_DIRECTED_GUMM = 0,
  MC_FAMILY_DAY = 1,
} McFamily;

typedef enum McRelKind {
  MC_REL_KIND_REFL_ADM = 0,
  MC_REL_KIND_TOLERANCE = 1,
  MC_REL_KIND_CONGRUENCE = 2,
} McRelKind;

typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_PARSE = 3,
  MC_STATUS_CAP_EXCEEDED = 4,
  MC_STATUS_NOT_FOUND = 5,
  MC_STATUS_INTERNAL = 6,
} McStatus;

/**
 * Opaque algebra handle.
 */
typedef struct McAlgebra McAlgebra;

/**
 * Result of `mc_check_identity`.
 */
typedef struct McVerdict {
  bool holds;
  /**
   * Assignments examined, including the failing one.
   */
  uint64_t checked;
} McVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads an algebra from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum McStatus mc_algebra_from_json(const char *json, struct McAlgebra **out);

/**
 * Loads a built-in algebra (`sl2`, `z2`, `l2`, `z2xz2`, `m3`, `sl3`, `trivial`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum McStatus mc_algebra_from_corpus(const char *name, struct McAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `alg` must come from this library and not be used afterwards.
 */
void mc_algebra_free(struct McAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum McStatus mc_algebra_size(const struct McAlgebra *alg, size_t *out);

/**
 * Checks an identity exhaustively. `identity` is either a catalog label
 * (instantiated with default parameters) or a statement in the textual
 * syntax. `jobs` of 0 means 1.
 *
 * # Safety
 * `alg` must be a live handle, `identity` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum McStatus mc_check_identity(const struct McAlgebra *alg,
                                const char *identity,
                                uint32_t jobs,
                                struct McVerdict *out);

/**
 * Number of relations of the given kind.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum McStatus mc_enumerate_count(const struct McAlgebra *alg,
                                 enum McRelKind kind,
                                 size_t cap,
                                 size_t *out);

/**
 * Searches for a term system with at most `max_k` terms. On success `*k`
 * is the number found and `*terms` receives one `name = term` line per
 * term. Returns `NotFound` when no system exists within `max_k`.
 *
 * # Safety
 * `alg` must be a live handle; `k` and `terms` valid pointers.
 */
enum McStatus mc_find_terms(const struct McAlgebra *alg,
                            enum McFamily family,
                            size_t max_k,
                            size_t cap,
                            size_t *k,
                            char **terms);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mc_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *mc_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODCHECK_H */
