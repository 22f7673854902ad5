#ifndef MONOCOMP_H
#define MONOCOMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MonocompStatus {
  MONOCOMP_STATUS_OK = 0,
  MONOCOMP_STATUS_NULL_POINTER = 1,
  MONOCOMP_STATUS_INVALID_ARGUMENT = 2,
  MONOCOMP_STATUS_PARSE_ERROR = 3,
  MONOCOMP_STATUS_BUDGET_EXCEEDED = 4,
  MONOCOMP_STATUS_BUFFER_TOO_SMALL = 5,
  MONOCOMP_STATUS_OVERFLOW = 6,
  MONOCOMP_STATUS_INTERNAL = 7,
} MonocompStatus;

typedef enum MonocompSymmetry {
  MONOCOMP_SYMMETRY_NONE = 0,
  MONOCOMP_SYMMETRY_VERTEX = 1,
  MONOCOMP_SYMMETRY_VERTEX_COLOR = 2,
} MonocompSymmetry;

/**
 * Opaque coloring handle.
 */
typedef struct MonocompColoring MonocompColoring;

/**
 * Opaque decomposition handle.
 */
typedef struct MonocompDecomposition MonocompDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Writes a description of the last failure on this thread into `buf`.
 * Does not itself change the stored description.
 *
 * # Safety
 * `buf` must be null or valid for `capacity` bytes; `needed` must be null or
 * valid for writing.
 */
enum MonocompStatus monocomp_last_error(char *buf, size_t capacity, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *monocomp_version(void);

/**
 * Parses the coloring text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_parse(const char *text, struct MonocompColoring **out);

/**
 * Builds a coloring from `C(n,2)` colors in lexicographic pair order.
 *
 * # Safety
 * `colors` must be valid for `len` bytes; `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_from_colors(size_t n,
                                                  size_t r,
                                                  const uint8_t *colors,
                                                  size_t len,
                                                  struct MonocompColoring **out);

/**
 * The affine-plane coloring of `K_{(r-1)^2}` with `r` colors.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_gyarfas(size_t r, struct MonocompColoring **out);

/**
 * # Safety
 * `base` must be a live handle; `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_blow_up(const struct MonocompColoring *base,
                                              size_t k,
                                              struct MonocompColoring **out);

/**
 * # Safety
 * `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_two_color_extremal(size_t n, struct MonocompColoring **out);

/**
 * # Safety
 * `out` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_random(size_t n,
                                             size_t r,
                                             uint64_t seed,
                                             struct MonocompColoring **out);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `coloring` must be null or a live handle.
 */
size_t monocomp_coloring_n(const struct MonocompColoring *coloring);

/**
 * Color count, or 0 for a null handle.
 *
 * # Safety
 * `coloring` must be null or a live handle.
 */
size_t monocomp_coloring_r(const struct MonocompColoring *coloring);

/**
 * # Safety
 * `coloring` must be a live handle; `color` must be valid for writing.
 */
enum MonocompStatus monocomp_coloring_color(const struct MonocompColoring *coloring,
                                            size_t u,
                                            size_t v,
                                            size_t *color);

/**
 * Serializes to the text format. Call with a null `buf` to learn the size.
 *
 * # Safety
 * `coloring` must be a live handle; `buf` must be null or valid for
 * `capacity` bytes; `needed` must be null or valid for writing.
 */
enum MonocompStatus monocomp_coloring_to_text(const struct MonocompColoring *coloring,
                                              char *buf,
                                              size_t capacity,
                                              size_t *needed);

/**
 * # Safety
 * `coloring` must be null or a handle not yet freed.
 */
void monocomp_coloring_free(struct MonocompColoring *coloring);

/**
 * # Safety
 * `coloring` must be a live handle; `out` must be valid for writing.
 */
enum MonocompStatus monocomp_decompose(const struct MonocompColoring *coloring,
                                       struct MonocompDecomposition **out);

/**
 * Number of components, or 0 for a null handle.
 *
 * # Safety
 * `decomp` must be null or a live handle.
 */
size_t monocomp_decomposition_len(const struct MonocompDecomposition *decomp);

/**
 * Color, vertex count and edge count of component `index`.
 *
 * # Safety
 * `decomp` must be a live handle; output pointers must be valid for writing.
 */
enum MonocompStatus monocomp_decomposition_component(const struct MonocompDecomposition *decomp,
                                                     size_t index,
                                                     size_t *color,
                                                     size_t *vertices,
                                                     uint64_t *edges);

/**
 * `max_C |E(C)| / C(n,2)` as a reduced fraction.
 *
 * # Safety
 * `decomp` must be a live handle; `num` and `den` must be valid for writing.
 */
enum MonocompStatus monocomp_decomposition_max_edge_fraction(const struct MonocompDecomposition *decomp,
                                                             int64_t *num,
                                                             int64_t *den);

/**
 * Minimum total weight of a fractional cover at level `gamma_num/gamma_den`.
 *
 * # Safety
 * `decomp` must be a live handle; `num` and `den` must be valid for writing.
 */
enum MonocompStatus monocomp_min_fractional_cover(const struct MonocompDecomposition *decomp,
                                                  int64_t gamma_num,
                                                  int64_t gamma_den,
                                                  int64_t *num,
                                                  int64_t *den);

/**
 * Best lower bound on `max_edge_fraction` from the cover sweep, as a
 * double, with the level where it is attained.
 *
 * # Safety
 * `decomp` must be a live handle; output pointers must be valid for writing.
 */
enum MonocompStatus monocomp_best_bound(const struct MonocompDecomposition *decomp,
                                        double *z,
                                        int64_t *gamma_num,
                                        int64_t *gamma_den);

/**
 * Sets `found` to 1 when the 4-coloring has the 3x3 cell structure of the
 * affine-plane coloring of `K_9`, else 0.
 *
 * # Safety
 * `decomp` must be a live handle; `found` must be valid for writing.
 */
enum MonocompStatus monocomp_detect_grid(const struct MonocompDecomposition *decomp,
                                         int32_t *found);

/**
 * # Safety
 * `decomp` must be null or a handle not yet freed.
 */
void monocomp_decomposition_free(struct MonocompDecomposition *decomp);

/**
 * Closed-form lower bound at `(r, gamma, x)`: the decimal value goes to
 * `value`, and the exact form `a + b*sqrt(d)` to `buf` when it is non-null.
 *
 * # Safety
 * `value` must be valid for writing; `buf` must be null or valid for
 * `capacity` bytes; `needed` must be null or valid for writing.
 */
enum MonocompStatus monocomp_z_lower_bound(size_t r,
                                           int64_t gamma_num,
                                           int64_t gamma_den,
                                           int64_t x_num,
                                           int64_t x_den,
                                           double *value,
                                           char *buf,
                                           size_t capacity,
                                           size_t *needed);

/**
 * Exhaustive search for the minimum over colorings of the largest
 * component. `witness` may be null; otherwise it receives a new handle.
 *
 * # Safety
 * `value` must be valid for writing; `witness` must be null or valid for
 * writing.
 */
enum MonocompStatus monocomp_exact_m(size_t n,
                                     size_t r,
                                     enum MonocompSymmetry symmetry,
                                     uint64_t budget_nodes,
                                     uint64_t *value,
                                     struct MonocompColoring **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOCOMP_H */
