/* C interface of the tokensign signed-graph library.
 *
 * Generated by cbindgen from crates/ffi; do not edit by hand.
 */

#ifndef TOKENSIGN_H
#define TOKENSIGN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum TsStatus {
  /**
   * Success.
   */
  TS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  TS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  TS_STATUS_INVALID_UTF8 = 2,
  /**
   * The input text could not be parsed as a signed graph.
   */
  TS_STATUS_PARSE = 3,
  /**
   * An argument was out of range or otherwise invalid.
   */
  TS_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The operation is only defined for balanced graphs.
   */
  TS_STATUS_NOT_BALANCED = 5,
  /**
   * The instance exceeds a size guard of the underlying algorithm.
   */
  TS_STATUS_TOO_LARGE = 6,
  /**
   * An internal invariant failed; this is a bug in the library.
   */
  TS_STATUS_INTERNAL = 7,
} TsStatus;

/**
 * Opaque handle to a signed graph.
 */
typedef struct TsGraph TsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the library version as a static NUL-terminated string.
 *
 * The pointer is valid for the lifetime of the program and must not be
 * freed.
 */
const char *ts_version(void);

/**
 * Returns the message of the most recent failure on the calling thread, or
 * NULL if no failure has occurred.
 *
 * The pointer is owned by the library and remains valid until the next
 * failing call on the same thread; it must not be freed.
 */
const char *ts_last_error_message(void);

/**
 * Frees a string returned through a `char**` out-parameter.
 *
 * # Safety
 * `text` must be NULL or a pointer previously returned by this library
 * through a `char**` out-parameter, and must not be used afterwards.
 */
void ts_string_free(char *text);

/**
 * Frees a graph handle.
 *
 * # Safety
 * `graph` must be NULL or a pointer previously returned by this library
 * through a `TsGraph**` out-parameter, and must not be used afterwards.
 */
void ts_graph_free(struct TsGraph *graph);

/**
 * Parses a signed graph from edge-list text.
 *
 * The format is the same one the CLI reads: an optional `n m` header,
 * `# comment` lines, and one `u v sign` line per edge with sign `+`, `-`,
 * `+1`, or `-1`.
 *
 * # Safety
 * `text` must be a NUL-terminated string valid for reads, and `out` must be
 * valid for a single pointer write.
 */
enum TsStatus ts_graph_parse(const char *text, struct TsGraph **out);

/**
 * Builds a named signed-graph family member on `n` vertices.
 *
 * Recognized names: `Cn_minus`, `all_neg_Cn`, `Kn_minus`, `all_neg_Kn`,
 * `neg_Kn_plus`, and `petersen` (which requires `n == 10`).
 *
 * # Safety
 * `name` must be a NUL-terminated string valid for reads, and `out` must be
 * valid for a single pointer write.
 */
enum TsStatus ts_graph_family(const char *name, size_t n, struct TsGraph **out);

/**
 * Replaces the signature of `graph`: bit `j` of `mask` set makes edge `j`
 * (in the graph's stored edge order) negative, all other edges positive.
 *
 * Fails with `TS_STATUS_INVALID_ARGUMENT` if `mask` has bits at or above the
 * edge count.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write.
 */
enum TsStatus ts_graph_with_sign_mask(const struct TsGraph *graph,
                                      uint64_t mask,
                                      struct TsGraph **out);

/**
 * Number of vertices, or 0 if `graph` is NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle from this library.
 */
size_t ts_graph_order(const struct TsGraph *graph);

/**
 * Number of edges, or 0 if `graph` is NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle from this library.
 */
size_t ts_graph_size(const struct TsGraph *graph);

/**
 * Number of positive edges, or 0 if `graph` is NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle from this library.
 */
size_t ts_graph_positive_edges(const struct TsGraph *graph);

/**
 * Number of negative edges, or 0 if `graph` is NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle from this library.
 */
size_t ts_graph_negative_edges(const struct TsGraph *graph);

/**
 * Writes the graph in edge-list text form (parseable by `ts_graph_parse`).
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write; free the result with `ts_string_free`.
 */
enum TsStatus ts_graph_edge_list(const struct TsGraph *graph, char **out);

/**
 * Writes `true` if every cycle of the graph has positive sign.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single `bool` write.
 */
enum TsStatus ts_graph_is_balanced(const struct TsGraph *graph, bool *out);

/**
 * Builds the graph with every edge sign flipped.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write.
 */
enum TsStatus ts_graph_negate(const struct TsGraph *graph, struct TsGraph **out);

/**
 * Switches the graph at the given set of vertices (1-based): every edge
 * with exactly one endpoint in the set changes sign.
 *
 * # Safety
 * `graph` must be a live handle from this library, `vertices` must point to
 * `len` readable `size_t` values (it may be NULL when `len == 0`), and
 * `out` must be valid for a single pointer write.
 */
enum TsStatus ts_graph_switch(const struct TsGraph *graph,
                              const size_t *vertices,
                              size_t len,
                              struct TsGraph **out);

/**
 * Builds the signed complement of a balanced graph: complement edges
 * receive the sign `s(u)·s(v)` induced by a balancing switching.
 *
 * Fails with `TS_STATUS_NOT_BALANCED` on unbalanced input.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write.
 */
enum TsStatus ts_graph_complement(const struct TsGraph *graph, struct TsGraph **out);

/**
 * Builds the k-token graph: vertices are the k-subsets of the base vertex
 * set in lexicographic order (numbered from 1), and subsets `A`, `B` are
 * adjacent with sign `sigma(ab)` when their symmetric difference is an edge
 * `{a, b}`.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write.
 */
enum TsStatus ts_token_graph(const struct TsGraph *graph, size_t k, struct TsGraph **out);

/**
 * Writes the frustration index: the minimum number of edges whose deletion
 * leaves a balanced graph.
 *
 * Exact and exponential in the vertex count; fails with
 * `TS_STATUS_TOO_LARGE` beyond the built-in guard.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single `size_t` write.
 */
enum TsStatus ts_frustration_index(const struct TsGraph *graph, size_t *out);

/**
 * Writes the spectral unbalance level as an exact fraction string such as
 * `"124/149"` (or `"0"` for balanced graphs).
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single pointer write; free the result with `ts_string_free`.
 */
enum TsStatus ts_unbalance_level(const struct TsGraph *graph, char **out);

/**
 * Writes the spectral unbalance level rounded to the nearest `double`.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single `double` write.
 */
enum TsStatus ts_unbalance_level_f64(const struct TsGraph *graph, double *out);

/**
 * Writes `true` if the graph is switching-isomorphic to its negation.
 *
 * Fails with `TS_STATUS_TOO_LARGE` beyond the canonical-labeling guard.
 *
 * # Safety
 * `graph` must be a live handle from this library and `out` must be valid
 * for a single `bool` write.
 */
enum TsStatus ts_is_sign_symmetric(const struct TsGraph *graph, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOKENSIGN_H */
