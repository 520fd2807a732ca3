#ifndef MPH_H
#define MPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MphStatus {
  MPH_STATUS_OK = 0,
  MPH_STATUS_NULL_POINTER = 1,
  MPH_STATUS_PARSE = 2,
  MPH_STATUS_IO = 3,
  MPH_STATUS_INVALID_ARGUMENT = 4,
  MPH_STATUS_PANIC = 5,
} MphStatus;

/**
 * A persistence diagram of one degree.
 */
typedef struct MphDiagram MphDiagram;

/**
 * A complex with a vector-valued function on its vertices.
 */
typedef struct MphSizePair MphSizePair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *mph_last_error(void);

/**
 * Parses a size pair in the text or JSON file format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum MphStatus mph_size_pair_from_text(const char *text, struct MphSizePair **out);

/**
 * Reads a size pair file.
 *
 * # Safety
 * `path` must be a nul-terminated string; `out` must be writable.
 */
enum MphStatus mph_size_pair_load(const char *path, struct MphSizePair **out);

/**
 * Builds a size pair from raw arrays: `values` holds `vertex_count * n`
 * row-major function values; simplex `i` is
 * `simplex_vertices[offsets[i] .. offsets[i + 1]]` (`offsets` has
 * `simplex_count + 1` entries). Missing faces are added.
 *
 * # Safety
 * Every pointer must reference the stated number of elements.
 */
enum MphStatus mph_size_pair_from_arrays(size_t vertex_count,
                                         size_t n,
                                         const double *values,
                                         const size_t *simplex_vertices,
                                         const size_t *offsets,
                                         size_t simplex_count,
                                         struct MphSizePair **out);

/**
 * Generates a reference shape. `resolution == 0` selects the default;
 * `measuring` may be null for the shape's default function.
 *
 * # Safety
 * `shape` (and `measuring` if non-null) must be nul-terminated; `out` writable.
 */
enum MphStatus mph_size_pair_from_shape(const char *shape,
                                        size_t resolution,
                                        const char *measuring,
                                        struct MphSizePair **out);

/**
 * # Safety
 * `pair` must be null or a handle from this library not yet freed.
 */
void mph_size_pair_free(struct MphSizePair *pair);

/**
 * Number of function components.
 *
 * # Safety
 * `pair` must be a live handle; `out` writable.
 */
enum MphStatus mph_size_pair_dimension(const struct MphSizePair *pair, size_t *out);

/**
 * # Safety
 * `pair` must be a live handle; `out` writable.
 */
enum MphStatus mph_size_pair_vertex_count(const struct MphSizePair *pair, size_t *out);

/**
 * Degree-`degree` diagram of the leaf `(l, b)` (normalized and projected as
 * needed) over Z/`field`.
 *
 * # Safety
 * `l` and `b` must hold `n` values; `pair` live; `out` writable.
 */
enum MphStatus mph_slice_diagram(const struct MphSizePair *pair,
                                 const double *l,
                                 const double *b,
                                 size_t n,
                                 size_t degree,
                                 uint32_t field_p,
                                 struct MphDiagram **out);

/**
 * Builds a diagram from `count` (birth, death) pairs; `INFINITY` deaths are essential.
 *
 * # Safety
 * `births` and `deaths` must hold `count` values; `out` writable.
 */
enum MphStatus mph_diagram_from_pairs(size_t degree,
                                      const double *births,
                                      const double *deaths,
                                      size_t count,
                                      struct MphDiagram **out);

/**
 * # Safety
 * `diagram` must be null or a handle from this library not yet freed.
 */
void mph_diagram_free(struct MphDiagram *diagram);

/**
 * Number of distinct points (multiplicities are reported per point).
 *
 * # Safety
 * `diagram` live; `out` writable.
 */
enum MphStatus mph_diagram_len(const struct MphDiagram *diagram, size_t *out);

/**
 * # Safety
 * `diagram` live; `out` writable.
 */
enum MphStatus mph_diagram_degree(const struct MphDiagram *diagram, size_t *out);

/**
 * Point `index` in birth-then-death order; essential points have `death = INFINITY`.
 *
 * # Safety
 * `diagram` live; output pointers writable.
 */
enum MphStatus mph_diagram_point(const struct MphDiagram *diagram,
                                 size_t index,
                                 double *birth,
                                 double *death,
                                 size_t *multiplicity);

/**
 * Matching distance between two diagrams of the same degree.
 *
 * # Safety
 * Both handles live; `out` writable.
 */
enum MphStatus mph_bottleneck(const struct MphDiagram *a, const struct MphDiagram *b, double *out);

/**
 * Rank of `H_degree(f <= u) -> H_degree(f <= v)` computed on the leaf through `(u, v)`.
 *
 * # Safety
 * `u` and `v` must hold `n` values; `pair` live; `out` writable.
 */
enum MphStatus mph_multidim_rank(const struct MphSizePair *pair,
                                 const double *u,
                                 const double *v,
                                 size_t n,
                                 size_t degree,
                                 uint32_t field_p,
                                 size_t *out);

/**
 * Sampled lower bound of the multidimensional matching distance in one
 * degree. A negative or NaN `offset_radius` selects the default radius.
 *
 * # Safety
 * Both handles live; `out` writable.
 */
enum MphStatus mph_multidist(const struct MphSizePair *x,
                             const struct MphSizePair *y,
                             size_t degree,
                             size_t directions,
                             size_t offsets,
                             double offset_radius,
                             uint32_t field_p,
                             double *out);

/**
 * The admissible pair `(l, b)` and coordinates `s < t` of the leaf through `(u, v)`.
 *
 * # Safety
 * `u`, `v`, `l_out`, `b_out` must hold `n` values; `s_out`, `t_out` writable.
 */
enum MphStatus mph_pair_through(const double *u,
                                const double *v,
                                size_t n,
                                double *l_out,
                                double *b_out,
                                double *s_out,
                                double *t_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MPH_H */
