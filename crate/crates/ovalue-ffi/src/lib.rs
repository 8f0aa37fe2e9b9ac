//! C interface to the `ovalue` library.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`OvStatus`] and writes its result
//!   through an out-pointer, which is touched only on `OV_STATUS_OK`.
//! * Reference pools and scoring engines are opaque handles created and
//!   released by `ov_pool_*` / `ov_scoring_*`; a scoring engine shares the
//!   pool's storage, so the pool handle may be freed before engines built
//!   from it.
//! * Enum-valued parameters are plain `uint32_t` holding an
//!   [`OvLabelingMetric`] or [`OvCurveKind`] constant; unknown values are
//!   rejected with `OV_STATUS_INVALID_ARGUMENT`, never trusted.
//! * Strings are NUL-terminated UTF-8. Pointers returned by [`ov_version`]
//!   and [`ov_rng_id`] are static and must not be freed.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use ovalue::confusion::Predictions;
use ovalue::dbt::DbtPool;
use ovalue::error::Error;
use ovalue::metrics::{curve_from_scores, CurveKind, LabelingMetricKind};
use ovalue::ops_labeling::{
    ops_f1_closed, ops_labeling_grid, ops_labeling_mc, LabelingOpsConfig,
};
use ovalue::ops_scoring::ScoringOps;
use ovalue::rng::RNG_ID;

/// Result of every fallible call.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvStatus {
    /// Success; the out-parameter holds the result.
    Ok = 0,
    /// A required pointer was NULL.
    NullArgument = 1,
    /// A value was outside its domain (bad enum constant, non-finite
    /// number, prevalence outside (0, 1), malformed input).
    InvalidArgument = 2,
    /// The input has only one class, so prevalence-conditional quantities
    /// are undefined.
    Degenerate = 3,
    /// A curve query lies outside the curve's horizontal span.
    OutOfRange = 4,
    /// File reading, writing, or cache validation failed.
    Io = 5,
    /// An internal invariant failed; the out-parameter is untouched.
    Internal = 6,
}

/// Labeling metrics computed from a thresholded confusion matrix.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvLabelingMetric {
    Recall = 0,
    Precision = 1,
    F1 = 2,
    Mcc = 3,
}

/// Threshold-swept performance curves.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OvCurveKind {
    Roc = 0,
    Prc = 1,
    Lift = 2,
    Gain = 3,
}

/// A reference pool of jointly monotone operating-point samples.
pub struct OvPool {
    pool: Arc<DbtPool>,
}

/// A scoring engine holding a reference pool plus its per-query caches.
pub struct OvScoring {
    ops: ScoringOps,
}

fn labeling_metric(raw: u32) -> Option<LabelingMetricKind> {
    match raw {
        0 => Some(LabelingMetricKind::Recall),
        1 => Some(LabelingMetricKind::Precision),
        2 => Some(LabelingMetricKind::F1),
        3 => Some(LabelingMetricKind::Mcc),
        _ => None,
    }
}

fn curve_kind(raw: u32) -> Option<CurveKind> {
    match raw {
        0 => Some(CurveKind::Roc),
        1 => Some(CurveKind::Prc),
        2 => Some(CurveKind::Lift),
        3 => Some(CurveKind::Gain),
        _ => None,
    }
}

fn status_of(err: &Error) -> OvStatus {
    match err {
        Error::DegeneratePrevalence { .. } => OvStatus::Degenerate,
        Error::InterpolationOutOfRange { .. } => OvStatus::OutOfRange,
        Error::Io(_) | Error::PoolCache { .. } => OvStatus::Io,
        _ => OvStatus::InvalidArgument,
    }
}

fn interior(pi: f64) -> bool {
    pi > 0.0 && pi < 1.0
}

fn unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

/// Runs `f`, converting a panic into `Internal` instead of unwinding
/// across the C boundary.
fn guarded(f: impl FnOnce() -> OvStatus) -> OvStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(OvStatus::Internal)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> OvStatus {
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    *out = value;
    OvStatus::Ok
}

unsafe fn path_from(ptr: *const c_char) -> Result<&'static Path, OvStatus> {
    if ptr.is_null() {
        return Err(OvStatus::NullArgument);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(Path::new(s)),
        Err(_) => Err(OvStatus::InvalidArgument),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ov_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Identifier of the random-number scheme behind every seeded
/// computation, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ov_rng_id() -> *const c_char {
    static CACHED: OnceLock<CString> = OnceLock::new();
    CACHED
        .get_or_init(|| CString::new(RNG_ID).expect("rng id has no NUL"))
        .as_ptr()
}

/// Evaluates a labeling metric at prevalence `pi`, false positive rate
/// `alpha`, and false negative rate `beta`.
///
/// `metric` is an [`OvLabelingMetric`] constant.
///
/// # Safety
///
/// `out` must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_eval_labeling(
    metric: u32,
    pi: f64,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = labeling_metric(metric) else {
        return OvStatus::InvalidArgument;
    };
    if !(interior(pi) && unit(alpha) && unit(beta)) {
        return OvStatus::InvalidArgument;
    }
    write_out(out, kind.eval(pi, alpha, beta))
}

/// Area under the ideal (perfect-classifier) curve at prevalence `pi`.
///
/// `kind` is an [`OvCurveKind`] constant.
///
/// # Safety
///
/// `out` must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ideal_auc(kind: u32, pi: f64, out: *mut f64) -> OvStatus {
    let Some(kind) = curve_kind(kind) else {
        return OvStatus::InvalidArgument;
    };
    if !interior(pi) {
        return OvStatus::InvalidArgument;
    }
    write_out(out, kind.ideal_auc(pi))
}

/// Closed-form o-value of F1 = `mu` at prevalence `pi`.
///
/// # Safety
///
/// `out` must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_f1_closed(mu: f64, pi: f64, out: *mut f64) -> OvStatus {
    if !(mu.is_finite() && interior(pi)) {
        return OvStatus::InvalidArgument;
    }
    write_out(out, ops_f1_closed(mu, pi))
}

/// Deterministic grid o-value of a labeling metric at `mu`, prevalence
/// `pi`, using `resolution >= 10` cells per axis.
///
/// `metric` is an [`OvLabelingMetric`] constant.
///
/// # Safety
///
/// `out` must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_labeling_grid(
    metric: u32,
    mu: f64,
    pi: f64,
    resolution: u32,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = labeling_metric(metric) else {
        return OvStatus::InvalidArgument;
    };
    if !(mu.is_finite() && interior(pi)) || resolution < 10 {
        return OvStatus::InvalidArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    let cfg = LabelingOpsConfig {
        grid_resolution: resolution,
        mc_samples: 1,
        seed: 0,
    };
    guarded(|| write_out(out, ops_labeling_grid(kind, mu, pi, &cfg)))
}

/// Seeded Monte Carlo o-value of a labeling metric at `mu`, prevalence
/// `pi`, from `samples >= 1` uniform error draws.
///
/// `metric` is an [`OvLabelingMetric`] constant.
///
/// # Safety
///
/// `out` must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_labeling_mc(
    metric: u32,
    mu: f64,
    pi: f64,
    samples: usize,
    seed: u64,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = labeling_metric(metric) else {
        return OvStatus::InvalidArgument;
    };
    if !(mu.is_finite() && interior(pi)) || samples == 0 {
        return OvStatus::InvalidArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    let cfg = LabelingOpsConfig {
        grid_resolution: 10,
        mc_samples: samples,
        seed,
    };
    guarded(|| write_out(out, ops_labeling_mc(kind, mu, pi, &cfg)))
}

/// Area under the threshold-swept curve of a scored test set. `labels[i]`
/// must be 0 or 1 and both classes must appear.
///
/// `kind` is an [`OvCurveKind`] constant.
///
/// # Safety
///
/// `labels` and `scores` must point to `len` readable elements; `out`
/// must be NULL or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_auc_from_scores(
    labels: *const u8,
    scores: *const f64,
    len: usize,
    kind: u32,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = curve_kind(kind) else {
        return OvStatus::InvalidArgument;
    };
    if labels.is_null() || scores.is_null() {
        return OvStatus::NullArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    let labels = std::slice::from_raw_parts(labels, len);
    let scores = std::slice::from_raw_parts(scores, len);
    if labels.iter().any(|&l| l > 1) {
        return OvStatus::InvalidArgument;
    }
    guarded(|| {
        let predictions =
            match Predictions::new(labels.iter().map(|&l| l == 1).collect(), scores.to_vec()) {
                Ok(p) => p,
                Err(e) => return status_of(&e),
            };
        let auc = curve_from_scores(&predictions, kind).and_then(|c| c.auc());
        match auc {
            Ok(value) => write_out(out, value),
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a reference pool of `samples >= 1` draws at `depth <= 20` from
/// `seed`; the same arguments always rebuild the identical pool.
///
/// # Safety
///
/// `out` must be valid for writing one pointer. The result must be
/// released with [`ov_pool_free`].
#[no_mangle]
pub unsafe extern "C" fn ov_pool_build(
    depth: u32,
    samples: usize,
    seed: u64,
    out: *mut *mut OvPool,
) -> OvStatus {
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    if samples == 0 || depth > 20 {
        return OvStatus::InvalidArgument;
    }
    guarded(|| {
        let pool = DbtPool::build(depth, samples, seed);
        write_out(
            out,
            Box::into_raw(Box::new(OvPool {
                pool: Arc::new(pool),
            })),
        )
    })
}

/// Loads the pool cached at `path` when it matches `(depth, samples,
/// seed)` exactly; otherwise builds it and writes the cache atomically.
///
/// # Safety
///
/// `path` must be a NUL-terminated string; `out` must be valid for
/// writing one pointer. The result must be released with
/// [`ov_pool_free`].
#[no_mangle]
pub unsafe extern "C" fn ov_pool_load_or_build(
    path: *const c_char,
    depth: u32,
    samples: usize,
    seed: u64,
    out: *mut *mut OvPool,
) -> OvStatus {
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    if samples == 0 || depth > 20 {
        return OvStatus::InvalidArgument;
    }
    let path = match path_from(path) {
        Ok(p) => p,
        Err(status) => return status,
    };
    guarded(|| match DbtPool::load_or_build(path, depth, samples, seed) {
        Ok(pool) => write_out(
            out,
            Box::into_raw(Box::new(OvPool {
                pool: Arc::new(pool),
            })),
        ),
        Err(e) => status_of(&e),
    })
}

/// Writes the pool to `path` atomically.
///
/// # Safety
///
/// `pool` must be a live pool handle; `path` must be a NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn ov_pool_save(pool: *const OvPool, path: *const c_char) -> OvStatus {
    if pool.is_null() {
        return OvStatus::NullArgument;
    }
    let path = match path_from(path) {
        Ok(p) => p,
        Err(status) => return status,
    };
    guarded(|| match (*pool).pool.save(path) {
        Ok(()) => OvStatus::Ok,
        Err(e) => status_of(&e),
    })
}

/// Number of samples in the pool.
///
/// # Safety
///
/// `pool` must be a live pool handle; `out` must be NULL or valid for
/// writing one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn ov_pool_len(pool: *const OvPool, out: *mut usize) -> OvStatus {
    if pool.is_null() {
        return OvStatus::NullArgument;
    }
    write_out(out, (*pool).pool.len())
}

/// Tree depth of every sample in the pool.
///
/// # Safety
///
/// `pool` must be a live pool handle; `out` must be NULL or valid for
/// writing one `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn ov_pool_depth(pool: *const OvPool, out: *mut u32) -> OvStatus {
    if pool.is_null() {
        return OvStatus::NullArgument;
    }
    write_out(out, (*pool).pool.depth())
}

/// Copies the pool's hex content hash (64 characters plus NUL) into
/// `buf`; `buf_len` must be at least 65.
///
/// # Safety
///
/// `pool` must be a live pool handle; `buf` must be valid for writing
/// `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ov_pool_content_hash(
    pool: *const OvPool,
    buf: *mut c_char,
    buf_len: usize,
) -> OvStatus {
    if pool.is_null() || buf.is_null() {
        return OvStatus::NullArgument;
    }
    let hash = (*pool).pool.content_hash();
    if buf_len < hash.len() + 1 {
        return OvStatus::InvalidArgument;
    }
    std::ptr::copy_nonoverlapping(hash.as_ptr(), buf as *mut u8, hash.len());
    *buf.add(hash.len()) = 0;
    OvStatus::Ok
}

/// Releases a pool handle. NULL is ignored.
///
/// # Safety
///
/// `pool` must be NULL or a live pool handle, and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn ov_pool_free(pool: *mut OvPool) {
    if !pool.is_null() {
        drop(Box::from_raw(pool));
    }
}

/// Creates a scoring engine over the pool. The engine shares the pool's
/// storage, so the pool handle may be freed independently.
///
/// # Safety
///
/// `pool` must be a live pool handle; `out` must be valid for writing one
/// pointer. The result must be released with [`ov_scoring_free`].
#[no_mangle]
pub unsafe extern "C" fn ov_scoring_new(
    pool: *const OvPool,
    out: *mut *mut OvScoring,
) -> OvStatus {
    if pool.is_null() || out.is_null() {
        return OvStatus::NullArgument;
    }
    let ops = ScoringOps::from_shared(Arc::clone(&(*pool).pool));
    write_out(out, Box::into_raw(Box::new(OvScoring { ops })))
}

/// Releases a scoring engine. NULL is ignored.
///
/// # Safety
///
/// `scoring` must be NULL or a live engine handle, and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn ov_scoring_free(scoring: *mut OvScoring) {
    if !scoring.is_null() {
        drop(Box::from_raw(scoring));
    }
}

/// O-value of an observed curve area at prevalence `pi`: the fraction of
/// reference samples whose area falls strictly below `observed`.
///
/// `kind` is an [`OvCurveKind`] constant.
///
/// # Safety
///
/// `scoring` must be a live engine handle; `out` must be NULL or valid
/// for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_auc(
    scoring: *const OvScoring,
    kind: u32,
    observed: f64,
    pi: f64,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = curve_kind(kind) else {
        return OvStatus::InvalidArgument;
    };
    if scoring.is_null() {
        return OvStatus::NullArgument;
    }
    if !(observed.is_finite() && interior(pi)) {
        return OvStatus::InvalidArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    guarded(|| write_out(out, (*scoring).ops.ops_auc(kind, observed, pi)))
}

/// O-value of an observed normalized curve area at prevalence `pi`.
/// Exactly `ov_ops_auc` after rescaling by the ideal area.
///
/// `kind` is an [`OvCurveKind`] constant.
///
/// # Safety
///
/// `scoring` must be a live engine handle; `out` must be NULL or valid
/// for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_nauc(
    scoring: *const OvScoring,
    kind: u32,
    observed: f64,
    pi: f64,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = curve_kind(kind) else {
        return OvStatus::InvalidArgument;
    };
    if scoring.is_null() {
        return OvStatus::NullArgument;
    }
    if !(observed.is_finite() && interior(pi)) {
        return OvStatus::InvalidArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    guarded(|| write_out(out, (*scoring).ops.ops_nauc(kind, observed, pi)))
}

/// O-value of an observed vertical value `v` at horizontal position
/// `u` on the given curve, at prevalence `pi`: the fraction of reference
/// curves interpolated at `u` whose value falls strictly below `v`.
///
/// `kind` is an [`OvCurveKind`] constant.
///
/// # Safety
///
/// `scoring` must be a live engine handle; `out` must be NULL or valid
/// for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn ov_ops_point(
    scoring: *const OvScoring,
    kind: u32,
    u: f64,
    v: f64,
    pi: f64,
    out: *mut f64,
) -> OvStatus {
    let Some(kind) = curve_kind(kind) else {
        return OvStatus::InvalidArgument;
    };
    if scoring.is_null() {
        return OvStatus::NullArgument;
    }
    if !(u.is_finite() && v.is_finite() && interior(pi)) {
        return OvStatus::InvalidArgument;
    }
    if out.is_null() {
        return OvStatus::NullArgument;
    }
    guarded(|| match (*scoring).ops.ops_point(kind, u, v, pi) {
        Ok(value) => write_out(out, value),
        Err(e) => status_of(&e),
    })
}
