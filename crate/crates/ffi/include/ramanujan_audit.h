#ifndef RAMANUJAN_AUDIT_H
#define RAMANUJAN_AUDIT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every exported function.
 */
typedef enum RaStatus {
  RA_STATUS_OK = 0,
  /**
   * The report was produced but at least one audit failed.
   */
  RA_STATUS_AUDIT_FAILED = 1,
  RA_STATUS_NULL_POINTER = 2,
  RA_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Group closure or graph construction failed.
   */
  RA_STATUS_CONSTRUCTION = 4,
  /**
   * Eigensolver or size limit failure.
   */
  RA_STATUS_NUMERIC = 5,
  RA_STATUS_INTERNAL = 6,
} RaStatus;

/**
 * Embedding mode for [`ra_tree_audit_json`].
 */
typedef enum RaEmbed {
  RA_EMBED_NONE = 0,
  RA_EMBED_RAMIFIED = 1,
  RA_EMBED_UNRAMIFIED = 2,
} RaEmbed;

/**
 * Opaque handle to a constructed `(X, Y)` pair.
 */
typedef struct RaInstance RaInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread. Valid until the next failing call on
 * the same thread; do not free.
 */
const char *ra_last_error_message(void);

/**
 * Library version as a static string; do not free.
 */
const char *ra_version(void);

/**
 * Builds the instance for `q`, `m` and the coefficients of `h̃` (constant term first,
 * residues in `F_q`). Pass `htilde = NULL` to use the first parameter found by search.
 *
 * # Safety
 * `htilde` must point to `htilde_len` integers or be null; `out` must be writable.
 */
enum RaStatus ra_instance_new(uint64_t q,
                              size_t m,
                              const int64_t *htilde,
                              size_t htilde_len,
                              struct RaInstance **out);

/**
 * Releases a handle from [`ra_instance_new`]. Null is ignored.
 *
 * # Safety
 * `inst` must be null or a handle not yet freed.
 */
void ra_instance_free(struct RaInstance *inst);

/**
 * Number of vertices of `X`.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_order(const struct RaInstance *inst, size_t *out);

/**
 * Degree of `X`.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_degree(const struct RaInstance *inst, size_t *out);

/**
 * Number of vertices of `Y`.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_y_size(const struct RaInstance *inst, size_t *out);

/**
 * Girth of `X`, or 0 when acyclic.
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_girth(const struct RaInstance *inst, size_t *out);

/**
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_is_bipartite(const struct RaInstance *inst, bool *out);

/**
 * Copies the `X` vertex ids of `Y` into `buf`. `len` receives the full count; at most
 * `cap` ids are written.
 *
 * # Safety
 * `buf` must hold `cap` elements (or be null with `cap == 0`); `len` must be writable.
 */
enum RaStatus ra_instance_y_vertices(const struct RaInstance *inst,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * Instance summary as JSON. Free the string with [`ra_string_free`].
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_summary_json(const struct RaInstance *inst, char **out);

/**
 * Runs every audit. Returns `AuditFailed` with the report still written when some
 * audit fails. Free the string with [`ra_string_free`].
 *
 * # Safety
 * `inst` must be a live handle and `out` writable.
 */
enum RaStatus ra_instance_audit_json(const struct RaInstance *inst,
                                     double tol,
                                     size_t dense_limit,
                                     char **out);

/**
 * Parameter search report for `q`, `m`; `psl` selects the non-bipartite type.
 *
 * # Safety
 * `out` must be writable.
 */
enum RaStatus ra_search_json(uint64_t q, size_t m, bool psl, char **out);

/**
 * Building ball audit of rank `n` over `F_q` with the given radius and embedding.
 *
 * # Safety
 * `out` must be writable.
 */
enum RaStatus ra_tree_audit_json(size_t n,
                                 uint64_t q,
                                 size_t radius,
                                 enum RaEmbed embed,
                                 char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ra_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAMANUJAN_AUDIT_H */
