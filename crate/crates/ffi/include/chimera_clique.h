#ifndef CHIMERA_CLIQUE_H
#define CHIMERA_CLIQUE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_ARGUMENT = 2,
  CC_STATUS_OUT_OF_RANGE = 3,
  CC_STATUS_PARSE = 4,
  CC_STATUS_CAP_EXCEEDED = 5,
  CC_STATUS_NON_INDUCED = 6,
  CC_STATUS_BUFFER_TOO_SMALL = 7,
  CC_STATUS_PANIC = 8,
} CcStatus;

/**
 * Opaque native clique embedding.
 */
typedef struct CcEmbedding CcEmbedding;

/**
 * Opaque defective Chimera graph.
 */
typedef struct CcGraph CcGraph;

/**
 * A qubit `(x, y, u, k)`, 1-indexed except for the orientation bit `u`.
 */
typedef struct CcCoord {
  uint32_t x;
  uint32_t y;
  uint32_t u;
  uint32_t k;
} CcCoord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *cc_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void cc_string_free(char *s);

/**
 * Defect-free `C(m, n, l)`.
 *
 * # Safety
 * `out_graph` must be valid for writes.
 */
enum CcStatus cc_graph_new(uint32_t m, uint32_t n, uint32_t l, struct CcGraph **out_graph);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out_graph` must be valid for writes.
 */
enum CcStatus cc_graph_from_json(const char *json, struct CcGraph **out_graph);

/**
 * # Safety
 * `graph` must be a live handle; `out_json` must be valid for writes.
 */
enum CcStatus cc_graph_to_json(const struct CcGraph *graph, char **out_json);

/**
 * Marks qubit `(x, y, u, k)` dead.
 *
 * # Safety
 * `graph` must be a live handle not shared with another thread during the call.
 */
enum CcStatus cc_graph_kill_qubit(struct CcGraph *graph,
                                  uint32_t x,
                                  uint32_t y,
                                  uint32_t u,
                                  uint32_t k);

/**
 * Marks the coupler between `a` and `b` dead.
 *
 * # Safety
 * `graph` must be a live handle not shared with another thread during the call.
 */
enum CcStatus cc_graph_kill_coupler(struct CcGraph *graph, struct CcCoord a, struct CcCoord b);

/**
 * # Safety
 * `graph` must be a live handle; `out_count` must be valid for writes.
 */
enum CcStatus cc_graph_live_qubit_count(const struct CcGraph *graph, size_t *out_count);

/**
 * # Safety
 * `graph` must be null or a handle from this library, not yet freed.
 */
void cc_graph_free(struct CcGraph *graph);

/**
 * Largest native clique embedding with chains of `n + 1` qubits, or over
 * every chain length when `n` is 0.
 *
 * # Safety
 * `graph` must be a live handle; `out_embedding` must be valid for writes.
 */
enum CcStatus cc_embed(const struct CcGraph *graph, uint32_t n, struct CcEmbedding **out_embedding);

/**
 * Triangle embedding of defect-free `C(m, m, l)`.
 *
 * # Safety
 * `out_embedding` must be valid for writes.
 */
enum CcStatus cc_triangle(uint32_t m, uint32_t l, struct CcEmbedding **out_embedding);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out_embedding` must be valid for writes.
 */
enum CcStatus cc_embedding_from_json(const char *json, struct CcEmbedding **out_embedding);

/**
 * # Safety
 * `embedding` must be a live handle; `out_json` must be valid for writes.
 */
enum CcStatus cc_embedding_to_json(const struct CcEmbedding *embedding, char **out_json);

/**
 * Number of chains, i.e. the size of the embedded clique.
 *
 * # Safety
 * `embedding` must be a live handle; `out_size` must be valid for writes.
 */
enum CcStatus cc_embedding_clique_size(const struct CcEmbedding *embedding, size_t *out_size);

/**
 * Chain length parameter; every chain has `n + 1` qubits.
 *
 * # Safety
 * `embedding` must be a live handle; `out_n` must be valid for writes.
 */
enum CcStatus cc_embedding_n(const struct CcEmbedding *embedding, uint32_t *out_n);

/**
 * Copies chain `index` into `buf`. `out_len` always receives the chain
 * length; if `cap` is smaller the call fails with `BufferTooSmall` and
 * writes nothing to `buf`.
 *
 * # Safety
 * `embedding` must be a live handle, `buf` valid for `cap` writes (or null
 * when `cap` is 0), and `out_len` valid for writes.
 */
enum CcStatus cc_embedding_chain(const struct CcEmbedding *embedding,
                                 size_t index,
                                 struct CcCoord *buf,
                                 size_t cap,
                                 size_t *out_len);

/**
 * # Safety
 * `embedding` must be null or a handle from this library, not yet freed.
 */
void cc_embedding_free(struct CcEmbedding *embedding);

/**
 * Checks `embedding` against `graph`. `out_violations` receives the number
 * of violations found, so 0 means valid. `out_report` may be null;
 * otherwise it receives the full report as JSON.
 *
 * # Safety
 * Both handles must be live; `out_violations` must be valid for writes and
 * `out_report` null or valid for writes.
 */
enum CcStatus cc_validate(const struct CcGraph *graph,
                          const struct CcEmbedding *embedding,
                          size_t *out_violations,
                          char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHIMERA_CLIQUE_H */
