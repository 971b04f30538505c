#ifndef DUALGAIN_H
#define DUALGAIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DgMatrix {
  DG_MATRIX_ADJACENCY = 0,
  DG_MATRIX_LAPLACIAN = 1,
} DgMatrix;

typedef enum DgRing {
  DG_RING_REAL = 0,
  DG_RING_COMPLEX = 1,
  DG_RING_QUATERNION = 2,
} DgRing;

typedef enum DgStatus {
  DG_STATUS_OK = 0,
  DG_STATUS_NULL_POINTER = 1,
  DG_STATUS_INVALID_UTF8 = 2,
  DG_STATUS_SYNTAX = 3,
  DG_STATUS_NOT_UNIT = 4,
  DG_STATUS_BAD_PARAMETER = 5,
  DG_STATUS_SIZE_CAP = 6,
  DG_STATUS_BUFFER_TOO_SMALL = 7,
  DG_STATUS_COMPUTATION = 8,
  DG_STATUS_PANIC = 9,
} DgStatus;

/**
 * Opaque gain graph.
 */
typedef struct DgGraph DgGraph;

typedef struct DgDualNumber {
  double std;
  double dual;
} DgDualNumber;

typedef struct DgRadiusReport {
  double rho_graph;
  struct DgDualNumber rho_gain;
  double delta_bound;
  bool bound_holds;
  bool equality;
  bool connected;
  bool balanced;
  bool antibalanced;
  /**
   * 1 or 0 for a connected graph, -1 when disconnected.
   */
  int32_t predicted_equality;
  bool consistent;
} DgRadiusReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *dg_last_error_message(void);

/**
 * Parses a graph document; unit checks use `tol`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DgStatus dg_graph_parse(const char *text, double tol, struct DgGraph **out);

/**
 * Seeded `G(n, p)` with random unit gains.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DgStatus dg_graph_random(size_t n,
                              double p,
                              uint64_t seed,
                              enum DgRing ring,
                              struct DgGraph **out);

/**
 * Releases a graph; NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void dg_graph_free(struct DgGraph *g);

/**
 * Vertex count; 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph.
 */
size_t dg_graph_vertex_count(const struct DgGraph *g);

/**
 * Edge count; 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph.
 */
size_t dg_graph_edge_count(const struct DgGraph *g);

/**
 * Base ring of the gains.
 *
 * # Safety
 * `g` and `out` must be valid pointers.
 */
enum DgStatus dg_graph_ring(const struct DgGraph *g, enum DgRing *out);

/**
 * Serializes a graph; free the string with `dg_string_free`.
 *
 * # Safety
 * `g` and `out` must be valid pointers.
 */
enum DgStatus dg_graph_to_json(const struct DgGraph *g, char **out);

/**
 * Releases a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void dg_string_free(char *s);

/**
 * Dual eigenvalues, descending. `*len` receives the vertex count even when
 * `cap` is too small.
 *
 * # Safety
 * `g` must be live, `out` must hold `cap` values, `len` must be valid.
 */
enum DgStatus dg_spectrum(const struct DgGraph *g,
                          enum DgMatrix matrix,
                          struct DgDualNumber *out,
                          size_t cap,
                          size_t *len);

/**
 * Whether the graph is balanced at `tol` (0 selects the default).
 *
 * # Safety
 * `g` and `out` must be valid pointers.
 */
enum DgStatus dg_is_balanced(const struct DgGraph *g, double tol, bool *out);

/**
 * Spectral radius against the underlying-graph bound.
 *
 * # Safety
 * `g` and `out` must be valid pointers.
 */
enum DgStatus dg_radius(const struct DgGraph *g, enum DgMatrix matrix, struct DgRadiusReport *out);

/**
 * Moore determinant of the adjacency matrix (real for Hermitian input).
 *
 * # Safety
 * `g` and `out` must be valid pointers.
 */
enum DgStatus dg_mdet(const struct DgGraph *g, struct DgDualNumber *out);

/**
 * Closed-form spectrum of `C_n` whose cycle gain is written as text,
 * e.g. `(0.6+0.8i) + (-0.8+0.6i)eps`.
 *
 * # Safety
 * `gain` must be NUL-terminated, `out` must hold `cap` values, `len` must
 * be valid.
 */
enum DgStatus dg_cycle_spectrum(size_t n,
                                const char *gain,
                                enum DgMatrix matrix,
                                struct DgDualNumber *out,
                                size_t cap,
                                size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALGAIN_H */
