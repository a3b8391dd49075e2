#ifndef FLAT_TORUS_H
#define FLAT_TORUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FtStatus {
  FT_STATUS_OK = 0,
  FT_STATUS_NULL_POINTER = 1,
  FT_STATUS_INVALID_POINT = 2,
  FT_STATUS_PARSE = 3,
  FT_STATUS_INVALID_ARGUMENT = 4,
  FT_STATUS_INVALID_FAMILY = 5,
  FT_STATUS_NOT_PRIMITIVE = 6,
  FT_STATUS_COINCIDENT_POINTS = 7,
  FT_STATUS_OUTSIDE_DOMAIN = 8,
  FT_STATUS_UTF8 = 9,
  FT_STATUS_PANIC = 10,
  FT_STATUS_INTERNAL = 11,
} FtStatus;

typedef enum FtMetric {
  FT_METRIC_LAMBDA = 0,
  FT_METRIC_TEICH = 1,
  FT_METRIC_KAPPA = 2,
  FT_METRIC_KAPPA_PRIME = 3,
  FT_METRIC_SORVALI = 4,
  FT_METRIC_SKAPPA_PRIME = 5,
  FT_METRIC_WP = 6,
  FT_METRIC_POINCARE = 7,
} FtMetric;

typedef enum FtNormalization {
  FT_NORMALIZATION_UNIT_AREA = 0,
  FT_NORMALIZATION_UNIT_GENERATOR = 1,
} FtNormalization;

/**
 * Numeric fields of a metric report, in CSV column order.
 */
typedef enum FtReportField {
  FT_REPORT_FIELD_LAMBDA = 0,
  FT_REPORT_FIELD_TEICH = 1,
  FT_REPORT_FIELD_KAPPA_ENUMERATED = 2,
  FT_REPORT_FIELD_KAPPA_GAP = 3,
  FT_REPORT_FIELD_KAPPA_PRIME_FWD = 4,
  FT_REPORT_FIELD_KAPPA_PRIME_REV = 5,
  FT_REPORT_FIELD_SORVALI_D = 6,
  FT_REPORT_FIELD_S_KAPPA_PRIME = 7,
  FT_REPORT_FIELD_WP = 8,
  FT_REPORT_FIELD_POINCARE = 9,
} FtReportField;

/**
 * Every distance between two points.
 */
typedef struct FtReport FtReport;

/**
 * A member of the piecewise-linear extremal family.
 */
typedef struct FtStretchMap FtStretchMap;

/**
 * A marked flat torus.
 */
typedef struct FtTorus FtTorus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *ft_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ft_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void ft_string_free(char *s);

/**
 * Parses a literal such as `0.5+0.866i`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `re` and `im` must be writable.
 */
enum FtStatus ft_parse_point(const char *text, double *re, double *im);

/**
 * Hyperbolic distance in the upper half-plane.
 *
 * # Safety
 * `result` must be writable.
 */
enum FtStatus ft_poincare_distance(double re1, double im1, double re2, double im2, double *result);

/**
 * One distance between two points; `bound` is the enumeration bound `N`
 * used by the curve-ratio metrics (ignored by the others, must be >= 1).
 *
 * # Safety
 * `result` must be writable.
 */
enum FtStatus ft_distance(enum FtMetric metric,
                          double re1,
                          double im1,
                          double re2,
                          double im2,
                          uint32_t bound,
                          double *result);

/**
 * Point at parameter `t ∈ [0, 1]` of the geodesic from `z1` to `z2`.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
enum FtStatus ft_geodesic_point(double re1,
                                double im1,
                                double re2,
                                double im2,
                                double t,
                                double *re,
                                double *im);

/**
 * Moves `z` into the modular fundamental domain. `matrix` receives the
 * entries `a, b, c, d` of the SL(2, Z) element taking `z` there.
 *
 * # Safety
 * `re` and `im` must be writable; `matrix` must point to 4 writable `int64_t`.
 */
enum FtStatus ft_reduce(double z_re, double z_im, double *re, double *im, int64_t *matrix);

/**
 * # Safety
 * `torus` must be writable; the handle it receives is released with
 * [`ft_torus_free`].
 */
enum FtStatus ft_torus_new(double re,
                           double im,
                           enum FtNormalization normalization,
                           struct FtTorus **torus);

/**
 * # Safety
 * `torus` must be NULL or a handle from [`ft_torus_new`], not yet freed.
 */
void ft_torus_free(struct FtTorus *torus);

/**
 * Generators `ω₁, ω₂` as `(re, im)` pairs: `omegas[0..4] = ω₁.re, ω₁.im, ω₂.re, ω₂.im`.
 *
 * # Safety
 * `torus` must be a live handle; `omegas` must point to 4 writable doubles.
 */
enum FtStatus ft_torus_generators(const struct FtTorus *torus,
                                  double *omegas);

/**
 * Length of the closed geodesic in the primitive class `(m, n)`.
 *
 * # Safety
 * `torus` must be a live handle; `result` must be writable.
 */
enum FtStatus ft_torus_curve_length(const struct FtTorus *torus,
                                    int64_t m,
                                    int64_t n,
                                    double *result);

/**
 * Shortest essential closed curve: its class and length.
 *
 * # Safety
 * `torus` must be a live handle; the out-pointers must be writable.
 */
enum FtStatus ft_torus_systole(const struct FtTorus *torus, int64_t *m, int64_t *n, double *length);

/**
 * Flat distance between two points of the quotient torus.
 *
 * # Safety
 * `torus` must be a live handle; `result` must be writable.
 */
enum FtStatus ft_torus_distance(const struct FtTorus *torus,
                                double x_re,
                                double x_im,
                                double y_re,
                                double y_im,
                                double *result);

/**
 * # Safety
 * `map` must be writable; the handle it receives is released with
 * [`ft_stretch_map_free`].
 */
enum FtStatus ft_stretch_map_new(double r, double eps, double delta, struct FtStretchMap **map);

/**
 * # Safety
 * `map` must be NULL or a handle from [`ft_stretch_map_new`], not yet freed.
 */
void ft_stretch_map_free(struct FtStretchMap *map);

/**
 * Image of `(x, y)` in the unit square.
 *
 * # Safety
 * `map` must be a live handle; `u` and `v` must be writable.
 */
enum FtStatus ft_stretch_map_evaluate(const struct FtStretchMap *map,
                                      double x,
                                      double y,
                                      double *u,
                                      double *v);

/**
 * Lipschitz constant, quasiconformal distortion, and whether the member is
 * the affine map.
 *
 * # Safety
 * `map` must be a live handle; the out-pointers must be writable.
 */
enum FtStatus ft_stretch_map_constants(const struct FtStretchMap *map,
                                       double *lipschitz,
                                       double *qc_distortion,
                                       bool *affine);

/**
 * Computes every distance between two points.
 *
 * # Safety
 * `report` must be writable; the handle it receives is released with
 * [`ft_report_free`].
 */
enum FtStatus ft_report_new(double re1,
                            double im1,
                            double re2,
                            double im2,
                            uint32_t bound,
                            struct FtReport **report);

/**
 * # Safety
 * `report` must be NULL or a handle from [`ft_report_new`], not yet freed.
 */
void ft_report_free(struct FtReport *report);

/**
 * # Safety
 * `report` must be a live handle; `result` must be writable.
 */
enum FtStatus ft_report_get(const struct FtReport *report,
                            enum FtReportField field,
                            double *result);

/**
 * Witness class of the curve-ratio estimate.
 *
 * # Safety
 * `report` must be a live handle; `m` and `n` must be writable.
 */
enum FtStatus ft_report_kappa_witness(const struct FtReport *report, int64_t *m, int64_t *n);

/**
 * The report as JSON; release the string with [`ft_string_free`].
 *
 * # Safety
 * `report` must be a live handle; `json` must be writable.
 */
enum FtStatus ft_report_to_json(const struct FtReport *report, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLAT_TORUS_H */
