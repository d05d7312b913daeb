#ifndef S3KNOTS_H
#define S3KNOTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum S3Status {
  S3_STATUS_OK = 0,
  S3_STATUS_NULL_POINTER = 1,
  /**
   * Malformed input: bad UTF-8, JSON, or out-of-range arguments.
   */
  S3_STATUS_PARAMETER = 2,
  /**
   * Valid input outside the domain of the operation.
   */
  S3_STATUS_DOMAIN = 3,
  S3_STATUS_INTERNAL = 4,
  S3_STATUS_PANIC = 5,
} S3Status;

typedef struct S3Braid S3Braid;

typedef struct S3FramedLink S3FramedLink;

typedef struct S3Polynomial S3Polynomial;

typedef struct S3Trajectory S3Trajectory;

typedef struct S3TransverseInvariants {
  int64_t exponent_sum;
  int64_t strands;
  int64_t self_linking;
  int64_t writhe;
  uint64_t components;
} S3TransverseInvariants;

typedef struct S3ReebCheck {
  double alpha;
  double defect;
} S3ReebCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *s3k_version(void);

/**
 * Copies the calling thread's last error message, NUL-terminated and
 * truncated to `cap` bytes. Returns the full message length without the
 * terminator, or 0 when the last call succeeded.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes.
 */
size_t s3k_last_error(char *buf, size_t cap);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void s3k_string_free(char *s);

/**
 * Braid on `strands` strands from signed generator indices (`k` for
 * `σ_k`, `-k` for its inverse).
 *
 * # Safety
 * `letters` must be valid for `len` reads; `out` must be writable.
 */
enum S3Status s3k_braid_new(uint32_t strands,
                            const int64_t *letters,
                            size_t len,
                            struct S3Braid **out_braid);

/**
 * Braid from its JSON wire form `{"n": strands, "w": [letters]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_braid` must be writable.
 */
enum S3Status s3k_braid_from_json(const char *json, struct S3Braid **out_braid);

/**
 * JSON wire form of `braid`; release with [`s3k_string_free`].
 *
 * # Safety
 * `braid` must be a live handle; `out_json` must be writable.
 */
enum S3Status s3k_braid_to_json(const struct S3Braid *braid, char **out_json);

/**
 * # Safety
 * `braid` must be null or a handle from this library, freed once.
 */
void s3k_braid_free(struct S3Braid *braid);

/**
 * Number of strands, or 0 for a null handle.
 *
 * # Safety
 * `braid` must be null or a live handle.
 */
uint32_t s3k_braid_strands(const struct S3Braid *braid);

/**
 * Copies the signed letters into `buf` (at most `cap`) and returns the
 * word length.
 *
 * # Safety
 * `braid` must be null or a live handle; `buf` must be null or valid for
 * `cap` writes.
 */
size_t s3k_braid_letters(const struct S3Braid *braid, int64_t *buf, size_t cap);

/**
 * # Safety
 * `braid` must be a live handle; `out_inv` must be writable.
 */
enum S3Status s3k_braid_invariants(const struct S3Braid *braid,
                                   struct S3TransverseInvariants *out_inv);

/**
 * Alexander polynomial of the closure, which must be a knot.
 *
 * # Safety
 * `braid` must be a live handle; `out_poly` must be writable.
 */
enum S3Status s3k_braid_alexander(const struct S3Braid *braid, struct S3Polynomial **out_poly);

/**
 * `(p, q)` cable of the knot closing `base`, in the Seifert framing.
 *
 * # Safety
 * `base` must be a live handle; `out_braid` must be writable.
 */
enum S3Status s3k_cable_braid(const struct S3Braid *base,
                              int64_t p,
                              int64_t q,
                              struct S3Braid **out_braid);

/**
 * Template braid of a periodic Lorenz orbit given as an `L`/`R` word.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out_braid` must be writable.
 */
enum S3Status s3k_lorenz_braid(const char *word, struct S3Braid **out_braid);

/**
 * # Safety
 * `poly` must be null or a handle from this library, freed once.
 */
void s3k_polynomial_free(struct S3Polynomial *poly);

/**
 * Exponent of the first stored coefficient.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
int64_t s3k_polynomial_lowest(const struct S3Polynomial *poly);

/**
 * Copies coefficients in ascending exponent order and returns their count.
 *
 * # Safety
 * `poly` must be null or a live handle; `buf` must be null or valid for
 * `cap` writes.
 */
size_t s3k_polynomial_coeffs(const struct S3Polynomial *poly, int64_t *buf, size_t cap);

/**
 * Framed link from a row-major symmetric `n x n` linking matrix.
 *
 * # Safety
 * `matrix` must be valid for `n * n` reads; `out_link` must be writable.
 */
enum S3Status s3k_link_new(size_t n, const int64_t *matrix, struct S3FramedLink **out_link);

/**
 * # Safety
 * `link` must be null or a handle from this library, freed once.
 */
void s3k_link_free(struct S3FramedLink *link);

/**
 * Number of components, or 0 for a null handle.
 *
 * # Safety
 * `link` must be null or a live handle.
 */
size_t s3k_link_len(const struct S3FramedLink *link);

/**
 * Copies the row-major linking matrix and returns `n * n`.
 *
 * # Safety
 * `link` must be null or a live handle; `buf` must be null or valid for
 * `cap` writes.
 */
size_t s3k_link_matrix(const struct S3FramedLink *link, int64_t *buf, size_t cap);

/**
 * Determinant of the linking matrix; `DOMAIN` if it does not fit in 64 bits.
 *
 * # Safety
 * `link` must be a live handle; `out_det` must be writable.
 */
enum S3Status s3k_link_det(const struct S3FramedLink *link, int64_t *out_det);

/**
 * # Safety
 * `link` must be a live handle; `out_sig` must be writable.
 */
enum S3Status s3k_link_signature(const struct S3FramedLink *link, int64_t *out_sig);

/**
 * Adds a `sign`-framed unknot; writes a new handle.
 *
 * # Safety
 * `link` must be a live handle; `out_link` must be writable.
 */
enum S3Status s3k_link_blow_up(const struct S3FramedLink *link,
                               int8_t sign,
                               struct S3FramedLink **out_link);

/**
 * Removes the ±1-framed component `index` (0-based); writes a new handle.
 *
 * # Safety
 * `link` must be a live handle; `out_link` must be writable.
 */
enum S3Status s3k_link_blow_down(const struct S3FramedLink *link,
                                 size_t index,
                                 struct S3FramedLink **out_link);

/**
 * Slides component `i` over component `j` (0-based); `sign` picks the band.
 *
 * # Safety
 * `link` must be a live handle; `out_link` must be writable.
 */
enum S3Status s3k_link_slide(const struct S3FramedLink *link,
                             size_t i,
                             size_t j,
                             int8_t sign,
                             struct S3FramedLink **out_link);

/**
 * Integrates the flow with angular speeds `1/r1`, `1/r2` from `x0`
 * (`x1, y1, x2, y2` on the unit sphere). `r1 = r2 = 1` is the Reeb flow.
 *
 * # Safety
 * `x0` must be valid for 4 reads; `out_traj` must be writable.
 */
enum S3Status s3k_flow_integrate(const double *x0,
                                 double r1,
                                 double r2,
                                 double dt,
                                 size_t steps,
                                 struct S3Trajectory **out_traj);

/**
 * # Safety
 * `traj` must be null or a handle from this library, freed once.
 */
void s3k_trajectory_free(struct S3Trajectory *traj);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `traj` must be null or a live handle.
 */
size_t s3k_trajectory_len(const struct S3Trajectory *traj);

/**
 * Writes sample `k` as `t, x1, y1, x2, y2, h, F` into `out7`.
 *
 * # Safety
 * `traj` must be a live handle; `out7` must be valid for 7 writes.
 */
enum S3Status s3k_trajectory_sample(const struct S3Trajectory *traj, size_t k, double *out7);

/**
 * Largest deviations of `h` and `F` from their initial values.
 *
 * # Safety
 * `traj` must be a live handle; outputs must be writable.
 */
enum S3Status s3k_trajectory_drift(const struct S3Trajectory *traj,
                                   double *out_energy,
                                   double *out_bott);

/**
 * First return time to within `eps` of the start; `DOMAIN` if the
 * trajectory never closes.
 *
 * # Safety
 * `traj` must be a live handle; `out_period` must be writable.
 */
enum S3Status s3k_trajectory_period(const struct S3Trajectory *traj,
                                    double eps,
                                    double *out_period);

/**
 * `alpha(Reeb)` and the `d alpha` defect at a point of the unit sphere.
 *
 * # Safety
 * `p` must be valid for 4 reads; `out_check` must be writable.
 */
enum S3Status s3k_reeb_check(const double *p, struct S3ReebCheck *out_check);

/**
 * Closed geodesic length `2 arccosh(|x|/2)` for a hyperbolic trace.
 *
 * # Safety
 * `out_length` must be writable.
 */
enum S3Status s3k_geodesic_length(double trace, double *out_length);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* S3KNOTS_H */
