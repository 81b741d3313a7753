#ifndef MCOVER_H
#define MCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The numeric values of the parse, precondition and budget
 * codes agree with the command-line exit codes.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_ARGUMENT = 1,
  MC_STATUS_PARSE = 2,
  MC_STATUS_PRECONDITION = 3,
  MC_STATUS_CLAIM_FAILED = 4,
  MC_STATUS_BUDGET = 5,
  MC_STATUS_PANIC = 6,
} McStatus;

/**
 * Opaque handle to an immutable bounded or unbounded finite poset.
 */
typedef struct McPoset McPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *mc_last_error(void);

/**
 * Builds a poset on `0..n` from `pair_count` pairs `(lower, upper)` stored
 * flat in `pairs`. The relation is closed transitively.
 *
 * # Safety
 * `pairs` must point to `2 * pair_count` readable values (or be null when
 * `pair_count` is 0) and `out` must be writable.
 */
enum McStatus mc_poset_from_covers(size_t n,
                                   const size_t *pairs,
                                   size_t pair_count,
                                   struct McPoset **out);

/**
 * Parses poset JSON `{"n":…, "covers":[[i,j],…], "labels":[…]?}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum McStatus mc_poset_from_json(const char *json, struct McPoset **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `p` must be null or a handle returned by this library, not yet freed.
 */
void mc_poset_free(struct McPoset *p);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t mc_poset_size(const struct McPoset *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_leq(const struct McPoset *p, size_t x, size_t y, bool *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_is_lattice(const struct McPoset *p, bool *out);

/**
 * Length of the longest chain.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_length(const struct McPoset *p, size_t *out);

/**
 * Fails with `Precondition` unless the poset is a lattice.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_is_left_modular(const struct McPoset *p, bool *out);

/**
 * Fails with `Precondition` unless the poset is a lattice.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_is_trim(const struct McPoset *p, bool *out);

/**
 * The m-cover poset of a bounded poset.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_mcover(const struct McPoset *p, size_t m, struct McPoset **out);

/**
 * The m-Tamari lattice on m-Dyck paths of height `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum McStatus mc_mtamari(size_t n, size_t m, struct McPoset **out);

/**
 * Dedekind-MacNeille completion.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_dm_completion(const struct McPoset *p, struct McPoset **out);

/**
 * Isomorphism test with a backtracking budget; `Budget` when it runs out.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum McStatus mc_is_isomorphic(const struct McPoset *a,
                               const struct McPoset *b,
                               uint64_t budget,
                               bool *out);

/**
 * Poset JSON; release with `mc_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_to_json(const struct McPoset *p, char **out);

/**
 * Graphviz DOT of the Hasse diagram; release with `mc_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum McStatus mc_poset_to_dot(const struct McPoset *p, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mc_string_free(char *s);

/**
 * Fuss-Catalan number; `Precondition` if it does not fit in 64 bits.
 *
 * # Safety
 * `out` must be writable.
 */
enum McStatus mc_fuss_catalan(uint64_t n, uint64_t m, uint64_t *out);

/**
 * Checks the bounced-fan realization of `T_n^(m)`; `holds` receives the
 * verdict and the call itself succeeds either way.
 *
 * # Safety
 * `holds` must be writable.
 */
enum McStatus mc_verify_conjecture(size_t n, size_t m, bool reversed, bool *holds);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MCOVER_H */
