#ifndef ROOTSPIN_H
#define ROOTSPIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RootspinCountKind {
  ROOTSPIN_COUNT_KIND_EXACT = 0,
  ROOTSPIN_COUNT_KIND_LOWER_BOUND = 1,
  ROOTSPIN_COUNT_KIND_EXISTS_ONLY = 2,
  ROOTSPIN_COUNT_KIND_ZERO = 3,
} RootspinCountKind;

typedef enum RootspinMethod {
  ROOTSPIN_METHOD_AUTO = 0,
  ROOTSPIN_METHOD_BRUTE = 1,
  ROOTSPIN_METHOD_MITM = 2,
} RootspinMethod;

/**
 * Status codes. The numeric values of the first four match the CLI exit
 * codes.
 */
typedef enum RootspinStatus {
  ROOTSPIN_STATUS_OK = 0,
  ROOTSPIN_STATUS_INTERNAL = 1,
  ROOTSPIN_STATUS_INVALID_INPUT = 2,
  ROOTSPIN_STATUS_RESOURCE_LIMIT = 3,
  ROOTSPIN_STATUS_NULL_POINTER = 4,
  ROOTSPIN_STATUS_BUFFER_TOO_SMALL = 5,
} RootspinStatus;

/**
 * Opaque handle to an immutable root system.
 */
typedef struct RootspinSystem RootspinSystem;

/**
 * A 128-bit count split into two 64-bit halves.
 */
typedef struct RootspinCount {
  uint64_t lo;
  uint64_t hi;
  enum RootspinCountKind kind;
} RootspinCount;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rootspin_last_error(void);

/**
 * Builds the positive roots of `family` (an ASCII letter) at `rank`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RootspinStatus rootspin_system_new(char family, uint32_t rank, struct RootspinSystem **out);

/**
 * # Safety
 * `system` must be NULL or a handle from [`rootspin_system_new`] that has
 * not been freed.
 */
void rootspin_system_free(struct RootspinSystem *system);

/**
 * Number of positive roots `r`, or 0 for NULL.
 *
 * # Safety
 * `system` must be NULL or a live handle.
 */
size_t rootspin_system_root_count(const struct RootspinSystem *system);

/**
 * # Safety
 * `system` must be NULL or a live handle.
 */
size_t rootspin_system_ambient_dim(const struct RootspinSystem *system);

/**
 * # Safety
 * `system` must be NULL or a live handle.
 */
int64_t rootspin_system_denominator(const struct RootspinSystem *system);

/**
 * Copies root `index` (0-based) in scaled coordinates into `out`, which
 * must hold `ambient_dim` values.
 *
 * # Safety
 * `system` must be a live handle and `out` must point to `out_len`
 * writable `int64_t` values.
 */
enum RootspinStatus rootspin_system_root(const struct RootspinSystem *system,
                                         size_t index,
                                         int64_t *out,
                                         size_t out_len);

/**
 * Writes `Σ ε_i a_i` for the signs in `signs` (each +1 or -1).
 *
 * # Safety
 * `signs` must point to `len` readable bytes and `out` to `out_len`
 * writable `int64_t` values.
 */
enum RootspinStatus rootspin_signed_sum(const struct RootspinSystem *system,
                                        const int8_t *signs,
                                        size_t len,
                                        int64_t *out,
                                        size_t out_len);

/**
 * Exact number of zero signed sums. `max_r` of 0 selects the default.
 *
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum RootspinStatus rootspin_count(const struct RootspinSystem *system,
                                   enum RootspinMethod method,
                                   uint32_t max_r,
                                   struct RootspinCount *out);

/**
 * Sets `*passes` to whether `Σ a_i ∈ 2L`. A failing test proves that no
 * zero signed sum exists.
 *
 * # Safety
 * `system` must be a live handle and `passes` writable.
 */
enum RootspinStatus rootspin_obstruction(const struct RootspinSystem *system, bool *passes);

/**
 * Joint kernel dimension of the Cartan action on the spin representation.
 * `max_r` of 0 selects the default.
 *
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum RootspinStatus rootspin_invariant_dimension(const struct RootspinSystem *system,
                                                 uint32_t max_r,
                                                 uint64_t *out);

/**
 * Full analysis report as a JSON string with sorted keys. `max_r` of 0
 * selects the default. When exact counting is skipped the report still
 * carries existence and the known lower bound.
 *
 * # Safety
 * `out` must be writable; release the string with [`rootspin_string_free`].
 */
enum RootspinStatus rootspin_analyze_json(char family, uint32_t rank, uint32_t max_r, char **out);

/**
 * Verified certificate as JSON, or `{"available":false,…}`.
 *
 * # Safety
 * `out` must be writable; release the string with [`rootspin_string_free`].
 */
enum RootspinStatus rootspin_certify_json(char family, uint32_t rank, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void rootspin_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROOTSPIN_H */
