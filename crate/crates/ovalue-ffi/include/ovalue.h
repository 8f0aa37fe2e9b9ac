/* C interface to the ovalue library: o-values for binary classification metrics. */

#ifndef OVALUE_H
#define OVALUE_H

/* Generated by cbindgen from the ovalue-ffi crate; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
enum OvStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  /**
   * Success; the out-parameter holds the result.
   */
  OV_STATUS_OK = 0,
  /**
   * A required pointer was NULL.
   */
  OV_STATUS_NULL_ARGUMENT = 1,
  /**
   * A value was outside its domain (bad enum constant, non-finite
   * number, prevalence outside (0, 1), malformed input).
   */
  OV_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The input has only one class, so prevalence-conditional quantities
   * are undefined.
   */
  OV_STATUS_DEGENERATE = 3,
  /**
   * A curve query lies outside the curve's horizontal span.
   */
  OV_STATUS_OUT_OF_RANGE = 4,
  /**
   * File reading, writing, or cache validation failed.
   */
  OV_STATUS_IO = 5,
  /**
   * An internal invariant failed; the out-parameter is untouched.
   */
  OV_STATUS_INTERNAL = 6,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OvStatus OvStatus;
#else
typedef uint32_t OvStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Labeling metrics computed from a thresholded confusion matrix.
 */
enum OvLabelingMetric
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  OV_LABELING_METRIC_RECALL = 0,
  OV_LABELING_METRIC_PRECISION = 1,
  OV_LABELING_METRIC_F1 = 2,
  OV_LABELING_METRIC_MCC = 3,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OvLabelingMetric OvLabelingMetric;
#else
typedef uint32_t OvLabelingMetric;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Threshold-swept performance curves.
 */
enum OvCurveKind
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : uint32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  OV_CURVE_KIND_ROC = 0,
  OV_CURVE_KIND_PRC = 1,
  OV_CURVE_KIND_LIFT = 2,
  OV_CURVE_KIND_GAIN = 3,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OvCurveKind OvCurveKind;
#else
typedef uint32_t OvCurveKind;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * A reference pool of jointly monotone operating-point samples.
 */
typedef struct OvPool OvPool;

/**
 * A scoring engine holding a reference pool plus its per-query caches.
 */
typedef struct OvScoring OvScoring;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ov_version(void);

/**
 * Identifier of the random-number scheme behind every seeded
 * computation, as a static NUL-terminated string.
 */
const char *ov_rng_id(void);

/**
 * Evaluates a labeling metric at prevalence `pi`, false positive rate
 * `alpha`, and false negative rate `beta`.
 *
 * `metric` is an [`OvLabelingMetric`] constant.
 *
 * # Safety
 *
 * `out` must be NULL or valid for writing one `double`.
 */
OvStatus ov_eval_labeling(uint32_t metric, double pi, double alpha, double beta, double *out);

/**
 * Area under the ideal (perfect-classifier) curve at prevalence `pi`.
 *
 * `kind` is an [`OvCurveKind`] constant.
 *
 * # Safety
 *
 * `out` must be NULL or valid for writing one `double`.
 */
OvStatus ov_ideal_auc(uint32_t kind, double pi, double *out);

/**
 * Closed-form o-value of F1 = `mu` at prevalence `pi`.
 *
 * # Safety
 *
 * `out` must be NULL or valid for writing one `double`.
 */
OvStatus ov_ops_f1_closed(double mu, double pi, double *out);

/**
 * Deterministic grid o-value of a labeling metric at `mu`, prevalence
 * `pi`, using `resolution >= 10` cells per axis.
 *
 * `metric` is an [`OvLabelingMetric`] constant.
 *
 * # Safety
 *
 * `out` must be NULL or valid for writing one `double`.
 */
OvStatus ov_ops_labeling_grid(uint32_t metric,
                              double mu,
                              double pi,
                              uint32_t resolution,
                              double *out);

/**
 * Seeded Monte Carlo o-value of a labeling metric at `mu`, prevalence
 * `pi`, from `samples >= 1` uniform error draws.
 *
 * `metric` is an [`OvLabelingMetric`] constant.
 *
 * # Safety
 *
 * `out` must be NULL or valid for writing one `double`.
 */
OvStatus ov_ops_labeling_mc(uint32_t metric,
                            double mu,
                            double pi,
                            size_t samples,
                            uint64_t seed,
                            double *out);

/**
 * Area under the threshold-swept curve of a scored test set. `labels[i]`
 * must be 0 or 1 and both classes must appear.
 *
 * `kind` is an [`OvCurveKind`] constant.
 *
 * # Safety
 *
 * `labels` and `scores` must point to `len` readable elements; `out`
 * must be NULL or valid for writing one `double`.
 */
OvStatus ov_auc_from_scores(const uint8_t *labels,
                            const double *scores,
                            size_t len,
                            uint32_t kind,
                            double *out);

/**
 * Builds a reference pool of `samples >= 1` draws at `depth <= 20` from
 * `seed`; the same arguments always rebuild the identical pool.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer. The result must be
 * released with [`ov_pool_free`].
 */
OvStatus ov_pool_build(uint32_t depth, size_t samples, uint64_t seed, struct OvPool **out);

/**
 * Loads the pool cached at `path` when it matches `(depth, samples,
 * seed)` exactly; otherwise builds it and writes the cache atomically.
 *
 * # Safety
 *
 * `path` must be a NUL-terminated string; `out` must be valid for
 * writing one pointer. The result must be released with
 * [`ov_pool_free`].
 */
OvStatus ov_pool_load_or_build(const char *path,
                               uint32_t depth,
                               size_t samples,
                               uint64_t seed,
                               struct OvPool **out);

/**
 * Writes the pool to `path` atomically.
 *
 * # Safety
 *
 * `pool` must be a live pool handle; `path` must be a NUL-terminated
 * string.
 */
OvStatus ov_pool_save(const struct OvPool *pool, const char *path);

/**
 * Number of samples in the pool.
 *
 * # Safety
 *
 * `pool` must be a live pool handle; `out` must be NULL or valid for
 * writing one `size_t`.
 */
OvStatus ov_pool_len(const struct OvPool *pool, size_t *out);

/**
 * Tree depth of every sample in the pool.
 *
 * # Safety
 *
 * `pool` must be a live pool handle; `out` must be NULL or valid for
 * writing one `uint32_t`.
 */
OvStatus ov_pool_depth(const struct OvPool *pool, uint32_t *out);

/**
 * Copies the pool's hex content hash (64 characters plus NUL) into
 * `buf`; `buf_len` must be at least 65.
 *
 * # Safety
 *
 * `pool` must be a live pool handle; `buf` must be valid for writing
 * `buf_len` bytes.
 */
OvStatus ov_pool_content_hash(const struct OvPool *pool, char *buf, size_t buf_len);

/**
 * Releases a pool handle. NULL is ignored.
 *
 * # Safety
 *
 * `pool` must be NULL or a live pool handle, and must not be used
 * afterwards.
 */
void ov_pool_free(struct OvPool *pool);

/**
 * Creates a scoring engine over the pool. The engine shares the pool's
 * storage, so the pool handle may be freed independently.
 *
 * # Safety
 *
 * `pool` must be a live pool handle; `out` must be valid for writing one
 * pointer. The result must be released with [`ov_scoring_free`].
 */
OvStatus ov_scoring_new(const struct OvPool *pool, struct OvScoring **out);

/**
 * Releases a scoring engine. NULL is ignored.
 *
 * # Safety
 *
 * `scoring` must be NULL or a live engine handle, and must not be used
 * afterwards.
 */
void ov_scoring_free(struct OvScoring *scoring);

/**
 * O-value of an observed curve area at prevalence `pi`: the fraction of
 * reference samples whose area falls strictly below `observed`.
 *
 * `kind` is an [`OvCurveKind`] constant.
 *
 * # Safety
 *
 * `scoring` must be a live engine handle; `out` must be NULL or valid
 * for writing one `double`.
 */
OvStatus ov_ops_auc(const struct OvScoring *scoring,
                    uint32_t kind,
                    double observed,
                    double pi,
                    double *out);

/**
 * O-value of an observed normalized curve area at prevalence `pi`.
 * Exactly `ov_ops_auc` after rescaling by the ideal area.
 *
 * `kind` is an [`OvCurveKind`] constant.
 *
 * # Safety
 *
 * `scoring` must be a live engine handle; `out` must be NULL or valid
 * for writing one `double`.
 */
OvStatus ov_ops_nauc(const struct OvScoring *scoring,
                     uint32_t kind,
                     double observed,
                     double pi,
                     double *out);

/**
 * O-value of an observed vertical value `v` at horizontal position
 * `u` on the given curve, at prevalence `pi`: the fraction of reference
 * curves interpolated at `u` whose value falls strictly below `v`.
 *
 * `kind` is an [`OvCurveKind`] constant.
 *
 * # Safety
 *
 * `scoring` must be a live engine handle; `out` must be NULL or valid
 * for writing one `double`.
 */
OvStatus ov_ops_point(const struct OvScoring *scoring,
                      uint32_t kind,
                      double u,
                      double v,
                      double pi,
                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OVALUE_H */
