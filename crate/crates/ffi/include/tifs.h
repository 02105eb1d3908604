#ifndef TIFS_H
#define TIFS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum TifsStatus {
  TIFS_STATUS_OK = 0,
  TIFS_STATUS_NULL_POINTER = 1,
  TIFS_STATUS_INVALID_ARGUMENT = 2,
  TIFS_STATUS_PARSE = 3,
  TIFS_STATUS_CONSTRUCTION = 4,
  TIFS_STATUS_BUFFER_TOO_SMALL = 5,
  TIFS_STATUS_OVERFLOW = 6,
  TIFS_STATUS_PANIC = 7,
} TifsStatus;

// Kind of a designated pair.
typedef enum TifsKind {
  TIFS_KIND_NONE = 0,
  TIFS_KIND_TIFS = 1,
  TIFS_KIND_TITS = 2,
  TIFS_KIND_TRUE_IFF_TRUE = 3,
} TifsKind;

// Opaque graph with a designated pair (A, B) or (A, C).
typedef struct TifsDesignated TifsDesignated;

// Opaque graph on at most 64 vertices.
typedef struct TifsGraph TifsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on the same thread.
const char *tifs_last_error(void);

// Library version as a static NUL-terminated string.
const char *tifs_version(void);

// Parses a graph6 string.
//
// # Safety
// `text` must be NUL-terminated; `out_graph` must be writable.
enum TifsStatus tifs_graph_from_graph6(const char *text, struct TifsGraph **out_graph);

// Builds a graph from `edge_count` pairs stored flat in `edges`.
//
// # Safety
// `edges` must hold `2 * edge_count` entries; `out_graph` must be writable.
enum TifsStatus tifs_graph_from_edges(size_t n,
                                      const uint32_t *edges,
                                      size_t edge_count,
                                      struct TifsGraph **out_graph);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not be freed twice.
void tifs_graph_free(struct TifsGraph *g);

// Vertex count, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t tifs_graph_order(const struct TifsGraph *g);

// Edge count, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t tifs_graph_edge_count(const struct TifsGraph *g);

// Adjacency row of `v` as a bit mask.
//
// # Safety
// `g` must be a live handle; `row` must be writable.
enum TifsStatus tifs_graph_row(const struct TifsGraph *g, size_t v, uint64_t *row);

// graph6 encoding of `g`.
//
// # Safety
// `g` must be a live handle; `buf` must hold `len` bytes.
enum TifsStatus tifs_graph_to_graph6(const struct TifsGraph *g,
                                     char *buf,
                                     size_t len,
                                     size_t *needed);

// Canonical form of `g`: graph6 of the canonically relabelled graph.
// Two graphs are isomorphic exactly when their forms are equal.
//
// # Safety
// `g` must be a live handle; `buf` must hold `len` bytes.
enum TifsStatus tifs_graph_canonical_form(const struct TifsGraph *g,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

// Kind of the pair (a, b) in dimension `d`.
//
// # Safety
// `g` must be a live handle; `kind` must be writable.
enum TifsStatus tifs_classify_pair(const struct TifsGraph *g,
                                   size_t d,
                                   size_t a,
                                   size_t b,
                                   enum TifsKind *kind);

// Whether `g` passes the dimension-`d` pattern filters.
//
// # Safety
// `g` must be a live handle; `result` must be writable.
enum TifsStatus tifs_passes_filters(const struct TifsGraph *g, size_t d, bool *result);

// Number of valid truth assignments of `g` in dimension `d`.
//
// # Safety
// `g` must be a live handle; `count` must be writable.
enum TifsStatus tifs_count_assignments(const struct TifsGraph *g, size_t d, uint64_t *count);

// Size of the constructive minimal TIFS family in dimension `d`.
//
// # Safety
// `count` must be writable.
enum TifsStatus tifs_count_minimal_tifs(size_t d, uint64_t *count);

// Minimal TIFS in dimension `d` whose d - 3 added vertices are adjacent to
// A only (`adj_a`), B only (`adj_b`) or both (`adj_both`).
//
// # Safety
// `out_graph` must be writable.
enum TifsStatus tifs_construct_minimal_tifs(size_t d,
                                            size_t adj_a,
                                            size_t adj_b,
                                            size_t adj_both,
                                            struct TifsDesignated **out_graph);

// TITS obtained from a minimal TIFS.
//
// # Safety
// `src` must be a live handle; `out_graph` must be writable.
enum TifsStatus tifs_construct_tits(const struct TifsDesignated *src,
                                    struct TifsDesignated **out_graph);

// Releases a designated graph. Null is ignored.
//
// # Safety
// `g` must come from this library and not be freed twice.
void tifs_designated_free(struct TifsDesignated *g);

// Dimension, designated vertices and kind.
//
// # Safety
// `g` must be a live handle; each output may be null to skip it.
enum TifsStatus tifs_designated_info(const struct TifsDesignated *g,
                                     size_t *d,
                                     size_t *a,
                                     size_t *b_or_c,
                                     enum TifsKind *kind);

// Copy of the underlying graph as a new handle.
//
// # Safety
// `g` must be a live handle; `out_graph` must be writable.
enum TifsStatus tifs_designated_graph(const struct TifsDesignated *g, struct TifsGraph **out_graph);

// JSON certificate of the designated pair.
//
// # Safety
// `g` must be a live handle; `buf` must hold `len` bytes.
enum TifsStatus tifs_designated_certificate(const struct TifsDesignated *g,
                                            char *buf,
                                            size_t len,
                                            size_t *needed);

// Unit vectors realizing the minimal TIFS for the given states, written
// row-major into `vectors` (`count * d` doubles). `count` receives the
// number of vectors, which is d + 5.
//
// # Safety
// `vectors` must hold `capacity` doubles; `count` must be writable.
enum TifsStatus tifs_realize_minimal_tifs(size_t d,
                                          size_t adj_a,
                                          size_t adj_b,
                                          size_t adj_both,
                                          double epsilon,
                                          double *vectors,
                                          size_t capacity,
                                          size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIFS_H */
