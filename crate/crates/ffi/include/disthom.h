#ifndef DISTHOM_H
#define DISTHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DhStatus {
  DH_STATUS_OK = 0,
  /**
   * The search finished without a result, or the property is false.
   */
  DH_STATUS_NOT_FOUND = 1,
  DH_STATUS_NULL_POINTER = 2,
  DH_STATUS_INVALID_ARGUMENT = 3,
  DH_STATUS_PARSE = 4,
  /**
   * A witness search hit its id cap; retry with a larger one.
   */
  DH_STATUS_SEARCH_EXHAUSTED = 5,
  DH_STATUS_GROUP_TOO_LARGE = 6,
  /**
   * A construction step failed verification.
   */
  DH_STATUS_INVARIANT = 7,
  DH_STATUS_PANIC = 8,
} DhStatus;

typedef enum DhFormat {
  DH_FORMAT_JSON = 0,
  DH_FORMAT_DOT = 1,
} DhFormat;

/**
 * A construction state.
 */
typedef struct DhConstruction DhConstruction;

/**
 * A finite graph.
 */
typedef struct DhGraph DhGraph;

/**
 * A countable graph on the naturals.
 */
typedef struct DhOracle DhOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *dh_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void dh_string_free(char *s);

/**
 * Parses `{"n": .., "edges": [[u, v], ..]}`.
 */
enum DhStatus dh_graph_from_json(const char *json, struct DhGraph **out);

void dh_graph_free(struct DhGraph *g);

enum DhStatus dh_graph_order(const struct DhGraph *g, size_t *out);

enum DhStatus dh_graph_edge_count(const struct DhGraph *g, size_t *out);

enum DhStatus dh_graph_emit(const struct DhGraph *g, enum DhFormat format, char **out);

/**
 * Some homomorphism `g → h` as `{"map": [..]}`, or `NOT_FOUND`.
 */
enum DhStatus dh_find_homomorphism(const struct DhGraph *g, const struct DhGraph *h, char **out);

enum DhStatus dh_count_homomorphisms(const struct DhGraph *g,
                                     const struct DhGraph *h,
                                     uint64_t *out);

/**
 * First distinguishing homomorphism `g → h` as `{"map": [..]}`.
 */
enum DhStatus dh_find_distinguishing(const struct DhGraph *g, const struct DhGraph *h, char **out);

/**
 * `OK` if the map `image[0..len]` is a distinguishing homomorphism,
 * `NOT_FOUND` if it is a homomorphism that some nontrivial automorphism
 * preserves.
 */
enum DhStatus dh_is_distinguishing(const struct DhGraph *g,
                                   const struct DhGraph *h,
                                   const size_t *image,
                                   size_t len);

enum DhStatus dh_automorphism_group_order(const struct DhGraph *g, size_t cap, uint64_t *out);

enum DhStatus dh_chromatic_number(const struct DhGraph *g, size_t *out);

enum DhStatus dh_distinguishing_number(const struct DhGraph *g, size_t *out);

enum DhStatus dh_distinguishing_chromatic_number(const struct DhGraph *g, size_t *out);

/**
 * Builds one of the built-in oracles from its spec JSON.
 */
enum DhStatus dh_oracle_from_json(const char *spec, struct DhOracle **out);

void dh_oracle_free(struct DhOracle *o);

enum DhStatus dh_oracle_adjacent(const struct DhOracle *o, uint64_t u, uint64_t v, bool *out);

/**
 * Least fresh neighbour of `u` (when `u == v`) or common neighbour of `u`
 * and `v`, avoiding `avoid[0..len]`, with ids up to `cap`.
 */
enum DhStatus dh_fresh_common_neighbor(const struct DhOracle *o,
                                       uint64_t u,
                                       uint64_t v,
                                       const uint64_t *avoid,
                                       size_t len,
                                       uint64_t cap,
                                       uint64_t *out);

/**
 * Runs the construction to `steps` processed pairs. On `SEARCH_EXHAUSTED`
 * the last verified state (if any) is still returned through `out`.
 */
enum DhStatus dh_construction_run(const struct DhOracle *o,
                                  const char *branch_spec,
                                  size_t steps,
                                  uint64_t cap,
                                  struct DhConstruction **out);

/**
 * One more step; the state is unchanged on failure.
 */
enum DhStatus dh_construction_step(struct DhConstruction *c);

enum DhStatus dh_construction_t(const struct DhConstruction *c, size_t *out);

/**
 * `OK` if every check passes, `INVARIANT` otherwise; the report JSON is
 * written to `report` when it is non-NULL.
 */
enum DhStatus dh_construction_verify(const struct DhConstruction *c, char **report);

enum DhStatus dh_construction_to_json(const struct DhConstruction *c, char **out);

void dh_construction_free(struct DhConstruction *c);

/**
 * The labelling into `h ∨ K₂` as `{"assignments": [[v, "H:i" | "K2:1" | "K2:2"], ..]}`.
 */
enum DhStatus dh_gs_prefix(const struct DhConstruction *c, const struct DhGraph *h, char **out);

/**
 * `OK` if every fibre-preserving automorphism of the finite window fixes
 * the tree pointwise and swaps no processed pair, `NOT_FOUND` otherwise.
 */
enum DhStatus dh_prefix_rigidity(const struct DhConstruction *c,
                                 const struct DhGraph *h,
                                 size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTHOM_H */
