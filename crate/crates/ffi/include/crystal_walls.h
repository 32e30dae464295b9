#ifndef CRYSTAL_WALLS_H
#define CRYSTAL_WALLS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwRealization {
  CW_REALIZATION_WALL = 0,
  CW_REALIZATION_PATH = 1,
} CwRealization;

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_INVALID_ARGUMENT = 1,
  CW_STATUS_INVARIANT = 2,
  CW_STATUS_BUDGET = 3,
  CW_STATUS_NULL_POINTER = 4,
  CW_STATUS_PANIC = 5,
} CwStatus;

/**
 * A generated crystal graph.
 */
typedef struct CwGraph CwGraph;

/**
 * The perfect crystal `B` with its elements in a fixed order.
 */
typedef struct CwPerfectCrystal CwPerfectCrystal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *cw_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 *
 * `s` must be null or a pointer returned through a `char **` argument of
 * this library, not yet freed.
 */
void cw_string_free(char *s);

/**
 * Builds the perfect crystal of rank `n`.
 *
 * # Safety
 *
 * `out` must be valid for a write.
 */
enum CwStatus cw_perfect_new(size_t n, struct CwPerfectCrystal **out);

/**
 * # Safety
 *
 * `b` must be null or a handle from [`cw_perfect_new`], not yet freed.
 */
void cw_perfect_free(struct CwPerfectCrystal *b);

/**
 * Number of elements; zero for a null handle.
 *
 * # Safety
 *
 * `b` must be null or a live handle.
 */
size_t cw_perfect_len(const struct CwPerfectCrystal *b);

/**
 * Element `index` in printed form, e.g. `(1,0|0,1)`.
 *
 * # Safety
 *
 * `b` must be a live handle and `out` valid for a write.
 */
enum CwStatus cw_perfect_element(const struct CwPerfectCrystal *b, size_t index, char **out);

/**
 * Index of `f̃_i` applied to element `index`, or -1 for zero.
 *
 * # Safety
 *
 * `b` must be a live handle and `out` valid for a write.
 */
enum CwStatus cw_perfect_f(const struct CwPerfectCrystal *b, size_t i, size_t index, int64_t *out);

/**
 * Index of `ẽ_i` applied to element `index`, or -1 for zero.
 *
 * # Safety
 *
 * `b` must be a live handle and `out` valid for a write.
 */
enum CwStatus cw_perfect_e(const struct CwPerfectCrystal *b, size_t i, size_t index, int64_t *out);

/**
 * Generates the crystal graph of `B(Λ_k)` to the given depth.
 *
 * # Safety
 *
 * `out` must be valid for a write.
 */
enum CwStatus cw_graph_generate(enum CwRealization realization,
                                size_t n,
                                size_t k,
                                size_t depth,
                                size_t node_cap,
                                struct CwGraph **out);

/**
 * # Safety
 *
 * `g` must be null or a handle from [`cw_graph_generate`], not yet freed.
 */
void cw_graph_free(struct CwGraph *g);

/**
 * # Safety
 *
 * `g` must be null or a live handle.
 */
size_t cw_graph_node_count(const struct CwGraph *g);

/**
 * # Safety
 *
 * `g` must be null or a live handle.
 */
size_t cw_graph_edge_count(const struct CwGraph *g);

/**
 * Arrow `index` as `(source, color, target)`.
 *
 * # Safety
 *
 * `g` must be a live handle; the out pointers must be valid for writes.
 */
enum CwStatus cw_graph_edge(const struct CwGraph *g,
                            size_t index,
                            size_t *source,
                            size_t *color,
                            size_t *target);

/**
 * Writes up to `cap` level sizes into `buf` and the number of levels
 * into `levels`.
 *
 * # Safety
 *
 * `g` must be a live handle, `buf` valid for `cap` writes (or null when
 * `cap` is 0) and `levels` valid for a write.
 */
enum CwStatus cw_graph_level_sizes(const struct CwGraph *g,
                                   size_t *buf,
                                   size_t cap,
                                   size_t *levels);

/**
 * # Safety
 *
 * `g` must be a live handle and `out` valid for a write.
 */
enum CwStatus cw_graph_export_json(const struct CwGraph *g, char **out);

/**
 * # Safety
 *
 * `g` must be a live handle and `out` valid for a write.
 */
enum CwStatus cw_graph_export_dot(const struct CwGraph *g, char **out);

/**
 * Sets `out` to whether the two rooted graphs are isomorphic. On a
 * mismatch the divergence is also left in the last error message.
 *
 * # Safety
 *
 * `a` and `b` must be live handles and `out` valid for a write.
 */
enum CwStatus cw_graph_isomorphic(const struct CwGraph *a, const struct CwGraph *b, bool *out);

/**
 * Runs the invariant suite. Returns [`CwStatus::Invariant`] with the
 * first counterexample as the error message if any check fails.
 */
enum CwStatus cw_verify(size_t n, size_t k, size_t depth, size_t node_cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRYSTAL_WALLS_H */
