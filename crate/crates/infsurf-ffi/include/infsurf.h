#ifndef INFSURF_H
#define INFSURF_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum InfsurfStatus {
  INFSURF_STATUS_OK = 0,
  INFSURF_STATUS_NULL_POINTER = 1,
  INFSURF_STATUS_INVALID_UTF8 = 2,
  INFSURF_STATUS_PARSE = 3,
  INFSURF_STATUS_DOMAIN = 4,
  INFSURF_STATUS_PANIC = 5,
} InfsurfStatus;

/**
 * Opaque blueprint handle.
 */
typedef struct InfsurfBlueprint InfsurfBlueprint;

/**
 * Counts and invariants of a truncation.
 */
typedef struct InfsurfTruncationStats {
  size_t depth;
  size_t blocks;
  size_t pants;
  size_t cylinders;
  size_t genus_cylinders;
  size_t saddles;
  int64_t euler_characteristic;
  size_t boundary_circles;
  uint64_t genus;
} InfsurfTruncationStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses blueprint source text. On success `*out` receives a new handle.
 *
 * # Safety
 * `source` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_blueprint_parse(const char *source, struct InfsurfBlueprint **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `bp` must be null or a handle from [`infsurf_blueprint_parse`] not yet freed.
 */
void infsurf_blueprint_free(struct InfsurfBlueprint *bp);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned through an out-pointer of this library.
 */
void infsurf_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *infsurf_last_error(void);

/**
 * Number of states of the blueprint automaton.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_state_count(const struct InfsurfBlueprint *bp, size_t *out);

/**
 * Writes whether the surface is of finite type.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_is_finite_type(const struct InfsurfBlueprint *bp, bool *out);

/**
 * Classification report as JSON.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_classify_json(const struct InfsurfBlueprint *bp,
                                         size_t depth,
                                         char **out);

/**
 * Truncation statistics at depth `n`.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_truncate(const struct InfsurfBlueprint *bp,
                                    size_t n,
                                    struct InfsurfTruncationStats *out);

/**
 * DOT graph of the truncation at depth `n`.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_truncate_dot(const struct InfsurfBlueprint *bp, size_t n, char **out);

/**
 * Generator list through depth `n` as JSON. Fails with `Domain` when the limit set is uncountable.
 *
 * # Safety
 * `bp` must be a live handle and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_generators_json(const struct InfsurfBlueprint *bp, size_t n, char **out);

/**
 * Cohomology ranks of the morphism complex between two objects at depth `n`.
 *
 * # Safety
 * `bp` must be a live handle, `a` and `b` NUL-terminated strings, `h0` and `h1` valid pointers.
 */
enum InfsurfStatus infsurf_mor_ranks(const struct InfsurfBlueprint *bp,
                                     const char *a,
                                     const char *b,
                                     size_t n,
                                     size_t *h0,
                                     size_t *h1);

/**
 * Full morphism report as JSON, including the stabilization search over `window`.
 *
 * # Safety
 * `bp` must be a live handle, `a` and `b` NUL-terminated strings and `out` a valid pointer.
 */
enum InfsurfStatus infsurf_mor_json(const struct InfsurfBlueprint *bp,
                                    const char *a,
                                    const char *b,
                                    size_t n,
                                    size_t window,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INFSURF_H */
