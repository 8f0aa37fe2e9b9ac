//! Monte Carlo o-values for curve-level metrics.
//!
//! Curve metrics (AUCs, points at fixed x) are standardized against the
//! directed-binary-tree reference: the o-value of an observed value is the
//! fraction of reference samples whose own value falls strictly below it,
//! with every sample embedded at the test set's prevalence. One pool of
//! samples serves all queries; per-(kind, prevalence) evaluations are cached
//! so repeated queries count against the same frozen vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::confusion::Predictions;
use crate::dbt::{sample_to_curve, DbtPool};
use crate::error::{Error, Result};
use crate::metrics::{curve_from_scores, CurveKind, LabelingMetricKind, PerformanceCurve};

/// Linear interpolation of the error rates at horizontal position `u` along
/// a curve's plane embedding.
///
/// When `u` coincides with a sampled x value the exact node values are
/// returned (the first such node, which for vertical segments is the one
/// with the smallest `alpha`); otherwise both error rates are interpolated
/// with the same weight `(u - u_l) / (u_r - u_l)` between the bracketing
/// nodes.
///
/// # Errors
///
/// [`Error::InterpolationOutOfRange`] when `u` lies outside the span of the
/// curve's x values (the lift embedding starts strictly above x = 0).
pub fn interpolate_errors(curve: &PerformanceCurve, u: f64) -> Result<(f64, f64)> {
    if !u.is_finite() {
        return Err(Error::InvalidRequest(format!(
            "interpolation position {u} is not finite"
        )));
    }
    let kind = curve.kind();
    let pi = curve.pi();
    let mut xs = Vec::with_capacity(curve.error_points().len());
    let mut errors = Vec::with_capacity(curve.error_points().len());
    for &(alpha, beta) in curve.error_points() {
        if let Some((x, _)) = kind.point(pi, alpha, beta) {
            xs.push(x);
            errors.push((alpha, beta));
        }
    }
    let (min, max) = (xs[0], *xs.last().expect("curves are never empty"));
    if u < min || u > max {
        return Err(Error::InterpolationOutOfRange { x: u, min, max });
    }
    let i = xs.partition_point(|&x| x < u);
    if xs[i] == u {
        return Ok(errors[i]);
    }
    let (u_l, u_r) = (xs[i - 1], xs[i]);
    let t = (u - u_l) / (u_r - u_l);
    let (a_l, b_l) = errors[i - 1];
    let (a_r, b_r) = errors[i];
    Ok((a_l + (a_r - a_l) * t, b_l + (b_r - b_l) * t))
}

/// One precision-recall operating point with its o-value.
#[derive(Debug, Clone, Serialize)]
pub struct OprcPoint {
    pub recall: f64,
    pub precision: f64,
    pub o_value: f64,
}

type AucKey = (CurveKind, u64);
type PointKey = (CurveKind, u64, u64);

/// O-value queries against one reference pool, with cached per-query
/// evaluations.
pub struct ScoringOps {
    pool: Arc<DbtPool>,
    auc_cache: Mutex<HashMap<AucKey, Arc<Vec<f64>>>>,
    point_cache: Mutex<HashMap<PointKey, Arc<Vec<f64>>>>,
}

impl ScoringOps {
    pub fn new(pool: DbtPool) -> Self {
        Self::from_shared(Arc::new(pool))
    }

    pub fn from_shared(pool: Arc<DbtPool>) -> Self {
        ScoringOps {
            pool,
            auc_cache: Mutex::new(HashMap::new()),
            point_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn pool(&self) -> &DbtPool {
        &self.pool
    }

    /// AUC of every pool sample embedded as a `kind` curve at prevalence
    /// `pi`, in pool order. Computed once per (kind, pi), then cached.
    pub fn sample_aucs(&self, kind: CurveKind, pi: f64) -> Arc<Vec<f64>> {
        assert!(pi > 0.0 && pi < 1.0, "pi must lie strictly inside (0, 1)");
        let key = (kind, pi.to_bits());
        if let Some(cached) = self.auc_cache.lock().unwrap().get(&key) {
            return Arc::clone(cached);
        }
        let values: Vec<f64> = self
            .pool
            .samples()
            .par_iter()
            .map(|s| {
                sample_to_curve(s, pi, kind)
                    .auc()
                    .expect("reference curves always span two distinct x")
            })
            .collect();
        let values = Arc::new(values);
        self.auc_cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&values));
        values
    }

    /// O-value of an observed AUC: the fraction of reference sample AUCs
    /// strictly below it.
    pub fn ops_auc(&self, kind: CurveKind, observed_auc: f64, pi: f64) -> f64 {
        let aucs = self.sample_aucs(kind, pi);
        let below = aucs.iter().filter(|&&a| a < observed_auc).count();
        below as f64 / aucs.len() as f64
    }

    /// O-value of an observed normalized AUC; defined as the o-value of the
    /// corresponding raw AUC, so the two queries agree exactly.
    pub fn ops_nauc(&self, kind: CurveKind, observed_nauc: f64, pi: f64) -> f64 {
        self.ops_auc(kind, observed_nauc * kind.ideal_auc(pi), pi)
    }

    /// The `kind` y value of every pool sample at horizontal position `u`,
    /// in pool order. Computed once per (kind, pi, u), then cached.
    pub fn sample_point_values(
        &self,
        kind: CurveKind,
        pi: f64,
        u: f64,
    ) -> Result<Arc<Vec<f64>>> {
        assert!(pi > 0.0 && pi < 1.0, "pi must lie strictly inside (0, 1)");
        let key = (kind, pi.to_bits(), u.to_bits());
        if let Some(cached) = self.point_cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(cached));
        }
        let results: Vec<Result<f64>> = self
            .pool
            .samples()
            .par_iter()
            .map(|s| {
                let curve = sample_to_curve(s, pi, kind);
                let (alpha, beta) = interpolate_errors(&curve, u)?;
                kind.point(pi, alpha, beta)
                    .map(|(_, y)| y)
                    .ok_or_else(|| {
                        Error::InvalidRequest(format!("{kind} y value undefined at x = {u}"))
                    })
            })
            .collect();
        let mut values = Vec::with_capacity(results.len());
        for r in results {
            values.push(r?);
        }
        let values = Arc::new(values);
        self.point_cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&values));
        Ok(values)
    }

    /// O-value of an observed curve point `(u, v)`: the fraction of
    /// reference samples whose curve passes strictly below `v` at `u`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidRequest`] when `u` is outside `[0, 1]`;
    /// [`Error::InterpolationOutOfRange`] when some reference sample's curve
    /// does not reach `u` (lift only).
    pub fn ops_point(&self, kind: CurveKind, u: f64, v: f64, pi: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::InvalidRequest(format!(
                "curve position u = {u} must lie in [0, 1]"
            )));
        }
        let values = self.sample_point_values(kind, pi, u)?;
        let below = values.iter().filter(|&&y| y < v).count();
        Ok(below as f64 / values.len() as f64)
    }

    /// The outperformance precision-recall curve of a test set: at each
    /// recall level, the nominal interpolated precision and its o-value.
    pub fn oprc(&self, predictions: &Predictions, recall_grid: &[f64]) -> Result<Vec<OprcPoint>> {
        if recall_grid.is_empty() {
            return Err(Error::InvalidRequest("empty recall grid".into()));
        }
        for &u in recall_grid {
            if !(0.0..=1.0).contains(&u) {
                return Err(Error::InvalidRequest(format!(
                    "recall level {u} must lie in [0, 1]"
                )));
            }
        }
        let curve = curve_from_scores(predictions, CurveKind::Prc)?;
        let pi = curve.pi();
        recall_grid
            .iter()
            .map(|&u| {
                let (alpha, beta) = interpolate_errors(&curve, u)?;
                let precision = LabelingMetricKind::Precision.eval(pi, alpha, beta);
                let o_value = self.ops_point(CurveKind::Prc, u, precision, pi)?;
                Ok(OprcPoint {
                    recall: u,
                    precision,
                    o_value,
                })
            })
            .collect()
    }
}
