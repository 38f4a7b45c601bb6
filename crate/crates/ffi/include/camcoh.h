#ifndef CAMCOH_H
#define CAMCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CamcohStatus {
  CAMCOH_STATUS_OK = 0,
  CAMCOH_STATUS_NULL_POINTER = 1,
  CAMCOH_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The modulus is not a prime that fits in 32 bits.
   */
  CAMCOH_STATUS_INVALID_FIELD = 3,
  /**
   * Not a valid filtered complex: missing face, decreasing values, NaN.
   */
  CAMCOH_STATUS_INVALID_COMPLEX = 4,
  CAMCOH_STATUS_PARSE_ERROR = 5,
  CAMCOH_STATUS_IO_ERROR = 6,
  CAMCOH_STATUS_OUT_OF_RANGE = 7,
  /**
   * An engine invariant failed. Please report it.
   */
  CAMCOH_STATUS_INTERNAL = 8,
  CAMCOH_STATUS_PANIC = 9,
} CamcohStatus;

/**
 * Mutable set of simplices, validated by [`camcoh_builder_finalize`].
 */
typedef struct CamcohBuilder CamcohBuilder;

/**
 * Validated filtered complex.
 */
typedef struct CamcohComplex CamcohComplex;

/**
 * Persistence diagram with its points in (dim, birth, death) order.
 */
typedef struct CamcohDiagram CamcohDiagram;

/**
 * Engine configuration. Use [`camcoh_options_default`] for the recommended
 * settings.
 */
typedef struct CamcohOptions {
  bool lazy;
  bool reorder;
  bool emit_zero_length;
} CamcohOptions;

/**
 * Peak sizes and operation count of one engine run.
 */
typedef struct CamcohStats {
  uint64_t field_ops;
  size_t matrix_nonzeros_peak;
  size_t g_max_total;
  size_t s_max_total;
} CamcohStats;

/**
 * One diagram point. `death` is `+inf` for essential classes.
 */
typedef struct CamcohPoint {
  size_t dim;
  double birth;
  double death;
} CamcohPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *camcoh_last_error(void);

/**
 * Static, NUL-terminated version string.
 */
const char *camcoh_version(void);

/**
 * Lazy evaluation and reordering on, zero-length pairs suppressed.
 */
struct CamcohOptions camcoh_options_default(void);

/**
 * New empty builder. Free with [`camcoh_builder_free`].
 */
struct CamcohBuilder *camcoh_builder_new(void);

/**
 * # Safety
 * `builder` is null or came from [`camcoh_builder_new`] and was not freed.
 */
void camcoh_builder_free(struct CamcohBuilder *builder);

/**
 * Adds the simplex spanned by `vertices[0..n]` at `value`. Re-inserting a
 * simplex keeps the smaller value.
 *
 * # Safety
 * `builder` is a live builder; `vertices` points to `n` readable values.
 */
enum CamcohStatus camcoh_builder_insert(struct CamcohBuilder *builder,
                                        const uint32_t *vertices,
                                        size_t n,
                                        double value);

/**
 * Adds every missing face, valued at the minimum over its cofaces.
 *
 * # Safety
 * `builder` is a live builder.
 */
enum CamcohStatus camcoh_builder_close(struct CamcohBuilder *builder);

/**
 * Validates the builder contents into a new complex. The builder is left
 * unchanged and still has to be freed.
 *
 * # Safety
 * `builder` is a live builder; `out` is writable.
 */
enum CamcohStatus camcoh_builder_finalize(const struct CamcohBuilder *builder,
                                          struct CamcohComplex **out);

/**
 * Reads a filtration file: one simplex per line, `value v0 v1 ...`.
 *
 * # Safety
 * `path` is a NUL-terminated string; `out` is writable.
 */
enum CamcohStatus camcoh_complex_from_filtration_file(const char *path, struct CamcohComplex **out);

/**
 * Rips complex of `n_points` points stored row-major in `coords`
 * (`n_points * ambient_dim` values), up to diameter `rho_max` and dimension
 * `max_dim`.
 *
 * # Safety
 * `coords` points to `n_points * ambient_dim` readable values; `out` is writable.
 */
enum CamcohStatus camcoh_complex_from_points(const double *coords,
                                             size_t n_points,
                                             size_t ambient_dim,
                                             double rho_max,
                                             size_t max_dim,
                                             struct CamcohComplex **out);

/**
 * Number of simplices; 0 for a null handle.
 *
 * # Safety
 * `complex` is null or a live complex.
 */
size_t camcoh_complex_len(const struct CamcohComplex *complex);

/**
 * # Safety
 * `complex` is null or a live complex that is not used afterwards.
 */
void camcoh_complex_free(struct CamcohComplex *complex);

/**
 * Persistence diagram over the prime field of characteristic `p`.
 * `options` and `stats` may be null; a null `options` means the defaults.
 *
 * # Safety
 * `complex` is a live complex; `options` is null or readable; `out` is
 * writable; `stats` is null or writable.
 */
enum CamcohStatus camcoh_compute(const struct CamcohComplex *complex,
                                 uint64_t p,
                                 const struct CamcohOptions *options,
                                 struct CamcohDiagram **out,
                                 struct CamcohStats *stats);

/**
 * Diagram computed by plain boundary-matrix reduction, for cross-checking.
 *
 * # Safety
 * `complex` is a live complex; `out` is writable.
 */
enum CamcohStatus camcoh_oracle(const struct CamcohComplex *complex,
                                uint64_t p,
                                bool emit_zero_length,
                                struct CamcohDiagram **out);

/**
 * Number of points; 0 for a null handle.
 *
 * # Safety
 * `diagram` is null or a live diagram.
 */
size_t camcoh_diagram_len(const struct CamcohDiagram *diagram);

/**
 * The `index`-th point in (dim, birth, death) order.
 *
 * # Safety
 * `diagram` is a live diagram; `out` is writable.
 */
enum CamcohStatus camcoh_diagram_get(const struct CamcohDiagram *diagram,
                                     size_t index,
                                     struct CamcohPoint *out);

/**
 * Multiset equality of the points of two diagrams.
 *
 * # Safety
 * `a` and `b` are live diagrams; `equal` is writable.
 */
enum CamcohStatus camcoh_diagram_equal(const struct CamcohDiagram *a,
                                       const struct CamcohDiagram *b,
                                       bool *equal);

/**
 * # Safety
 * `diagram` is null or a live diagram that is not used afterwards.
 */
void camcoh_diagram_free(struct CamcohDiagram *diagram);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAMCOH_H */
