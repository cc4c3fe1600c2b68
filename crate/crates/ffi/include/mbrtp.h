#ifndef MBRTP_H
#define MBRTP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MbrtpAlgorithm {
  /**
   * Complete → complete solver, tree → tree solver, general → greedy.
   */
  MBRTP_ALGORITHM_AUTO = 0,
  MBRTP_ALGORITHM_COMPLETE = 1,
  MBRTP_ALGORITHM_TREE = 2,
  MBRTP_ALGORITHM_GREEDY = 3,
} MbrtpAlgorithm;

typedef enum MbrtpStatus {
  MBRTP_STATUS_OK = 0,
  MBRTP_STATUS_NULL_POINTER = 1,
  MBRTP_STATUS_INVALID_UTF8 = 2,
  MBRTP_STATUS_PARSE_ERROR = 3,
  MBRTP_STATUS_INVALID_INPUT = 4,
  MBRTP_STATUS_KIND_MISMATCH = 5,
  MBRTP_STATUS_LIMIT_EXCEEDED = 6,
  MBRTP_STATUS_UNVERIFIED = 7,
  MBRTP_STATUS_PANIC = 8,
} MbrtpStatus;

/**
 * Opaque validated instance.
 */
typedef struct MbrtpInstance MbrtpInstance;

/**
 * Opaque packing of rooted trees.
 */
typedef struct MbrtpPacking MbrtpPacking;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next call into this library from the same thread.
 */
const char *mbrtp_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void mbrtp_string_free(char *s);

/**
 * Parses and validates an instance from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum MbrtpStatus mbrtp_instance_from_json(const char *json, struct MbrtpInstance **out);

/**
 * # Safety
 * `inst` must be a live instance handle; `out` must be writable.
 */
enum MbrtpStatus mbrtp_instance_to_json(const struct MbrtpInstance *inst, char **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library, not yet freed.
 */
void mbrtp_instance_free(struct MbrtpInstance *inst);

/**
 * Number of vertices, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live instance handle.
 */
size_t mbrtp_instance_vertex_count(const struct MbrtpInstance *inst);

/**
 * Number of trees `K`, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live instance handle.
 */
size_t mbrtp_instance_tree_count(const struct MbrtpInstance *inst);

/**
 * Solves `inst` with the chosen algorithm. Complete and tree solvers are
 * exact; greedy is a heuristic.
 *
 * # Safety
 * `inst` must be a live instance handle; `out` must be writable.
 */
enum MbrtpStatus mbrtp_solve(const struct MbrtpInstance *inst,
                             enum MbrtpAlgorithm algorithm,
                             struct MbrtpPacking **out);

/**
 * Optimal value of a tree instance, without building the packing.
 *
 * # Safety
 * `inst` must be a live instance handle; `value` must be writable.
 */
enum MbrtpStatus mbrtp_tree_value(const struct MbrtpInstance *inst, size_t *value);

/**
 * Exhaustive optimum; fails with `LIMIT_EXCEEDED` beyond `max_n` / `max_k`.
 * Passing 0 for either limit selects the default (8 and 3).
 *
 * # Safety
 * `inst` must be a live instance handle; `value` and `out` must be writable.
 */
enum MbrtpStatus mbrtp_oracle(const struct MbrtpInstance *inst,
                              size_t max_n,
                              size_t max_k,
                              size_t *value,
                              struct MbrtpPacking **out);

/**
 * Reads a packing file's JSON text; the root is taken from `inst`.
 *
 * # Safety
 * `inst` must be a live instance handle, `json` a NUL-terminated string and
 * `out` writable.
 */
enum MbrtpStatus mbrtp_packing_from_json(const struct MbrtpInstance *inst,
                                         const char *json,
                                         struct MbrtpPacking **out);

/**
 * # Safety
 * `p` must be a live packing handle; `out` must be writable.
 */
enum MbrtpStatus mbrtp_packing_to_json(const struct MbrtpPacking *p, char **out);

/**
 * `Σ_k |V_k|`, or 0 for a NULL handle.
 *
 * # Safety
 * `p` must be NULL or a live packing handle.
 */
size_t mbrtp_packing_objective(const struct MbrtpPacking *p);

/**
 * # Safety
 * `p` must be NULL or a live packing handle.
 */
size_t mbrtp_packing_tree_count(const struct MbrtpPacking *p);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void mbrtp_packing_free(struct MbrtpPacking *p);

/**
 * Checks `p` against `inst`. A tree-count mismatch is an `INVALID_INPUT`
 * error; other defects set `*valid = false` and count into `*violations`.
 *
 * # Safety
 * Handles must be live; `valid` and `violations` must be writable.
 */
enum MbrtpStatus mbrtp_verify(const struct MbrtpInstance *inst,
                              const struct MbrtpPacking *p,
                              bool *valid,
                              size_t *violations);

/**
 * Builds the single-tree gadget for a DIMACS 3-CNF text. `gamma` receives
 * the threshold; `metadata`, if not NULL, receives the vertex-role JSON.
 *
 * # Safety
 * `dimacs` must be a NUL-terminated string; `out` and `gamma` writable;
 * `metadata` NULL or writable.
 */
enum MbrtpStatus mbrtp_reduce_dimacs(const char *dimacs,
                                     struct MbrtpInstance **out,
                                     size_t *gamma,
                                     char **metadata);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MBRTP_H */
