#ifndef TSYS_H
#define TSYS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsysStatus {
  TSYS_STATUS_OK = 0,
  TSYS_STATUS_NULL_POINTER = 1,
  TSYS_STATUS_INPUT_ERROR = 2,
  TSYS_STATUS_RESOURCE_GUARD = 3,
  TSYS_STATUS_INVALID_UTF8 = 4,
  TSYS_STATUS_INTERNAL = 5,
} TsysStatus;

/**
 * Opaque transfer system handle.
 */
typedef struct TsysSystem TsysSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a document in `.tsys` text or JSON form. With `close` the edges
 * are replaced by their transfer closure; otherwise they must already
 * form a transfer system.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
enum TsysStatus tsys_system_parse(const char *text, bool close, struct TsysSystem **out);

/**
 * The complete transfer system on `grid(r, s)`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum TsysStatus tsys_system_complete(uint32_t r, uint32_t s, struct TsysSystem **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `sys` must be null or a handle from this library not yet freed.
 */
void tsys_system_free(struct TsysSystem *sys);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void tsys_string_free(char *s);

/**
 * Renders the system in `.tsys` text form.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` must be null or writable.
 */
enum TsysStatus tsys_system_render(const struct TsysSystem *sys, char **out);

/**
 * Renders the system as `{"r":R,"s":S,"edges":[...]}`.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` must be null or writable.
 */
enum TsysStatus tsys_system_to_json(const struct TsysSystem *sys, char **out);

/**
 * Number of strict edges.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` must be null or writable.
 */
enum TsysStatus tsys_system_edge_count(const struct TsysSystem *sys, size_t *out);

/**
 * Number of connected components.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` must be null or writable.
 */
enum TsysStatus tsys_system_component_count(const struct TsysSystem *sys, size_t *out);

/**
 * Saturated hull, as a new handle.
 *
 * # Safety
 * `sys` must be null or a live handle; `out` must be null or writable.
 */
enum TsysStatus tsys_system_hull(const struct TsysSystem *sys, struct TsysSystem **out);

/**
 * Whether `(t, tp)` is a compatible pair.
 *
 * # Safety
 * `t` and `tp` must be null or live handles; `out` must be null or
 * writable.
 */
enum TsysStatus tsys_is_compatible(const struct TsysSystem *t,
                                   const struct TsysSystem *tp,
                                   bool *out);

/**
 * Least transfer system containing `t` and the given edges that is
 * compatible with `t`. `edges` holds `n_edges` groups of four numbers
 * `i1, j1, i2, j2`; it may be null when `n_edges` is zero.
 *
 * # Safety
 * `t` must be null or a live handle; `edges` must point to `4 * n_edges`
 * readable values; `out` must be null or writable.
 */
enum TsysStatus tsys_min_compatible_extension(const struct TsysSystem *t,
                                              const uint32_t *edges,
                                              size_t n_edges,
                                              struct TsysSystem **out);

/**
 * Whether `t` is lesser simply paired. When it is not and `witness` is
 * non-null, a compatible superset strictly between the hull and the
 * complete system is returned there (null otherwise).
 *
 * # Safety
 * `t` must be null or a live handle; `is_lsp` must be null or writable;
 * `witness` may be null or writable.
 */
enum TsysStatus tsys_lsp(const struct TsysSystem *t, bool *is_lsp, struct TsysSystem **witness);

/**
 * Number of transfer systems on `grid(r, s)`; grids above the default
 * vertex limit give `ResourceGuard`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum TsysStatus tsys_count_transfer_systems(uint32_t r, uint32_t s, uint64_t *out);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *tsys_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TSYS_H */
