//! Labeling metrics and scoring curves in the rate parametrization.
//!
//! Every metric here is a function of `(pi, alpha, beta)` only. Labeling
//! metrics score a single thresholded confusion matrix; curve kinds map a
//! sequence of `(alpha, beta)` operating points to plane coordinates whose
//! enclosed area summarizes a scoring classifier.

use std::fmt;
use std::str::FromStr;

use crate::confusion::{Predictions, Rates};
use crate::error::{Error, Result};

// ───────────────────────── labeling metrics ─────────────────────────

/// Confusion-matrix metrics of a single labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelingMetricKind {
    Recall,
    Precision,
    F1,
    Mcc,
}

impl LabelingMetricKind {
    pub const ALL: [LabelingMetricKind; 4] = [
        LabelingMetricKind::Recall,
        LabelingMetricKind::Precision,
        LabelingMetricKind::F1,
        LabelingMetricKind::Mcc,
    ];

    /// Evaluates the metric at error rates `(alpha, beta)` under prevalence
    /// `pi`.
    ///
    /// Conventions at removable singularities: precision is 1 when nothing
    /// is predicted positive (`alpha = 0`, `beta = 1`), and MCC is 0 when
    /// its denominator vanishes.
    pub fn eval(self, pi: f64, alpha: f64, beta: f64) -> f64 {
        debug_assert!(pi > 0.0 && pi < 1.0);
        match self {
            LabelingMetricKind::Recall => 1.0 - beta,
            LabelingMetricKind::Precision => {
                let predicted_pos = pi * (1.0 - beta) + (1.0 - pi) * alpha;
                if predicted_pos == 0.0 {
                    1.0
                } else {
                    pi * (1.0 - beta) / predicted_pos
                }
            }
            LabelingMetricKind::F1 => {
                // Denominator is at least pi, so never zero.
                2.0 * pi * (1.0 - beta) / (pi * (2.0 - beta) + (1.0 - pi) * alpha)
            }
            LabelingMetricKind::Mcc => {
                // Equivalent to the count form; note the class-swap symmetry
                // (alpha <-> beta, odds <-> 1/odds).
                let odds = pi / (1.0 - pi);
                let d1 = 1.0 - alpha + odds * beta;
                let d2 = 1.0 - beta + alpha / odds;
                let denom = (d1 * d2).sqrt();
                if denom == 0.0 {
                    0.0
                } else {
                    (1.0 - alpha - beta) / denom
                }
            }
        }
    }

    /// The metric's range `[lo, hi]`.
    pub fn codomain(self) -> (f64, f64) {
        match self {
            LabelingMetricKind::Mcc => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelingMetricKind::Recall => "recall",
            LabelingMetricKind::Precision => "precision",
            LabelingMetricKind::F1 => "f1",
            LabelingMetricKind::Mcc => "mcc",
        }
    }
}

impl fmt::Display for LabelingMetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelingMetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recall" => Ok(LabelingMetricKind::Recall),
            "precision" => Ok(LabelingMetricKind::Precision),
            "f1" => Ok(LabelingMetricKind::F1),
            "mcc" => Ok(LabelingMetricKind::Mcc),
            other => Err(Error::InvalidRequest(format!(
                "unknown labeling metric '{other}' (expected recall, precision, f1, or mcc)"
            ))),
        }
    }
}

/// Evaluates a labeling metric on a rate-parametrized confusion matrix.
pub fn eval_labeling(kind: LabelingMetricKind, rates: &Rates) -> f64 {
    kind.eval(rates.pi, rates.alpha, rates.beta)
}

// ───────────────────────── scoring curves ─────────────────────────

/// Plane embeddings of an operating-point sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// Receiver operating characteristic: `x = alpha`, `y = 1 - beta`.
    Roc,
    /// Precision-recall: `x = 1 - beta`, `y = precision`.
    Prc,
    /// Lift: `x` = predicted-positive fraction, `y = recall / x`.
    Lift,
    /// Gain: `x` = predicted-positive fraction, `y = recall`.
    Gain,
}

impl CurveKind {
    pub const ALL: [CurveKind; 4] = [
        CurveKind::Roc,
        CurveKind::Prc,
        CurveKind::Lift,
        CurveKind::Gain,
    ];

    /// Plane coordinates of the operating point `(alpha, beta)` under
    /// prevalence `pi`, or `None` for the lift curve's undefined point at
    /// `x = 0`.
    pub fn point(self, pi: f64, alpha: f64, beta: f64) -> Option<(f64, f64)> {
        match self {
            CurveKind::Roc => Some((alpha, 1.0 - beta)),
            CurveKind::Prc => Some((
                1.0 - beta,
                LabelingMetricKind::Precision.eval(pi, alpha, beta),
            )),
            CurveKind::Lift => {
                let x = pi * (1.0 - beta) + (1.0 - pi) * alpha;
                if x == 0.0 {
                    None
                } else {
                    Some((x, (1.0 - beta) / x))
                }
            }
            CurveKind::Gain => {
                let x = pi * (1.0 - beta) + (1.0 - pi) * alpha;
                Some((x, 1.0 - beta))
            }
        }
    }

    /// Area under the kind's ideal curve, the normalizer for [`nauc`].
    ///
    /// ROC and PRC have ideal area 1; a perfect gain curve rises linearly to
    /// recall 1 at `x = pi`, giving `1 - pi/2`; the corresponding lift curve
    /// integrates to `1 - ln(pi)`.
    pub fn ideal_auc(self, pi: f64) -> f64 {
        debug_assert!(pi > 0.0 && pi < 1.0);
        match self {
            CurveKind::Roc | CurveKind::Prc => 1.0,
            CurveKind::Lift => 1.0 - pi.ln(),
            CurveKind::Gain => 1.0 - pi / 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Roc => "roc",
            CurveKind::Prc => "prc",
            CurveKind::Lift => "lift",
            CurveKind::Gain => "gain",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "roc" => Ok(CurveKind::Roc),
            "prc" => Ok(CurveKind::Prc),
            "lift" => Ok(CurveKind::Lift),
            "gain" => Ok(CurveKind::Gain),
            other => Err(Error::InvalidRequest(format!(
                "unknown curve kind '{other}' (expected roc, prc, lift, or gain)"
            ))),
        }
    }
}

/// An operating-point sequence in error-rate space, tagged with the
/// prevalence and plane embedding it will be drawn in.
///
/// Points are `(alpha, beta)` pairs sorted by `alpha` ascending with `beta`
/// non-increasing, anchored at `(0, 1)` (reject everything) and `(1, 0)`
/// (accept everything).
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceCurve {
    pi: f64,
    kind: CurveKind,
    points: Vec<(f64, f64)>,
}

impl PerformanceCurve {
    /// Builds a curve after validating the point-sequence invariants.
    pub fn new(pi: f64, kind: CurveKind, points: Vec<(f64, f64)>) -> Result<Self> {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(Error::InvalidRates(format!(
                "pi = {pi} must lie strictly inside (0, 1)"
            )));
        }
        if points.first() != Some(&(0.0, 1.0)) || points.last() != Some(&(1.0, 0.0)) {
            return Err(Error::InvalidRequest(
                "curve must start at (alpha, beta) = (0, 1) and end at (1, 0)".into(),
            ));
        }
        for pair in points.windows(2) {
            let ((a0, b0), (a1, b1)) = (pair[0], pair[1]);
            if a1 < a0 || b1 > b0 {
                return Err(Error::InvalidRequest(format!(
                    "curve points must have alpha non-decreasing and beta \
                     non-increasing; saw ({a0}, {b0}) then ({a1}, {b1})"
                )));
            }
        }
        for &(a, b) in &points {
            if !((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b)) {
                return Err(Error::InvalidRequest(format!(
                    "curve point ({a}, {b}) lies outside the unit square"
                )));
            }
        }
        Ok(PerformanceCurve { pi, kind, points })
    }

    /// Builds without re-validating; for constructors that guarantee the
    /// invariants.
    pub(crate) fn new_unchecked(pi: f64, kind: CurveKind, points: Vec<(f64, f64)>) -> Self {
        debug_assert!(points.first() == Some(&(0.0, 1.0)));
        debug_assert!(points.last() == Some(&(1.0, 0.0)));
        PerformanceCurve { pi, kind, points }
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// The `(alpha, beta)` operating points.
    pub fn error_points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// The same curve evaluated as if the test set had prevalence `pi`.
    pub fn with_pi(&self, pi: f64) -> Result<Self> {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(Error::InvalidRates(format!(
                "pi = {pi} must lie strictly inside (0, 1)"
            )));
        }
        Ok(PerformanceCurve {
            pi,
            kind: self.kind,
            points: self.points.clone(),
        })
    }

    /// Plane coordinates of the curve, sorted by x; the lift curve's
    /// undefined point at `x = 0` is omitted.
    pub fn plane_points(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|&(a, b)| self.kind.point(self.pi, a, b))
            .collect()
    }

    /// Trapezoidal area under the curve's plane embedding.
    pub fn auc(&self) -> Result<f64> {
        auc(&self.plane_points())
    }

    /// Area normalized by the kind's ideal area.
    pub fn nauc(&self) -> Result<f64> {
        Ok(nauc(self.auc()?, self.kind, self.pi))
    }
}

/// Trapezoidal area under a polyline.
///
/// Callers pass points sorted by x ascending; consecutive points with equal
/// x contribute no area, so vertical jumps are kept as-is rather than
/// averaged.
///
/// # Errors
///
/// [`Error::DegenerateCurve`] when fewer than two distinct x values remain.
pub fn auc(points: &[(f64, f64)]) -> Result<f64> {
    debug_assert!(
        points.windows(2).all(|w| w[0].0 <= w[1].0),
        "auc input must be sorted by x"
    );
    let distinct = points.windows(2).any(|w| w[0].0 < w[1].0);
    if !distinct {
        return Err(Error::DegenerateCurve);
    }
    let mut area = 0.0;
    for pair in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        area += (x1 - x0) * (y0 + y1) / 2.0;
    }
    Ok(area)
}

/// Area under the kind's ideal curve; see [`CurveKind::ideal_auc`].
pub fn ideal_auc(kind: CurveKind, pi: f64) -> f64 {
    kind.ideal_auc(pi)
}

/// Normalizes an area by the ideal area, mapping a perfect classifier to 1
/// for every kind and prevalence.
pub fn nauc(auc_value: f64, kind: CurveKind, pi: f64) -> f64 {
    auc_value / kind.ideal_auc(pi)
}

/// Sweeps the decision threshold over a test set's scores and collects the
/// resulting operating points into a curve.
///
/// Thresholds run from above the maximum score (reject everything) down
/// through each distinct score; ties share one operating point. Prevalence
/// is taken from the data.
///
/// # Errors
///
/// [`Error::DegeneratePrevalence`] when either class is absent.
pub fn curve_from_scores(predictions: &Predictions, kind: CurveKind) -> Result<PerformanceCurve> {
    let pi = predictions.prevalence()?;
    let pos = predictions.num_positives() as f64;
    let neg = predictions.num_negatives() as f64;

    let mut order: Vec<usize> = (0..predictions.len()).collect();
    order.sort_by(|&i, &j| {
        predictions.scores()[j]
            .partial_cmp(&predictions.scores()[i])
            .expect("scores are finite")
    });

    // Reject-everything sentinel, then one point per distinct score.
    let mut points = Vec::with_capacity(predictions.len() + 1);
    points.push((0.0, 1.0));
    let mut tp = 0.0;
    let mut fp = 0.0;
    let mut idx = 0;
    while idx < order.len() {
        let score = predictions.scores()[order[idx]];
        while idx < order.len() && predictions.scores()[order[idx]] == score {
            if predictions.labels()[order[idx]] {
                tp += 1.0;
            } else {
                fp += 1.0;
            }
            idx += 1;
        }
        points.push((fp / neg, (pos - tp) / pos));
    }
    debug_assert_eq!(points.last(), Some(&(1.0, 0.0)));
    Ok(PerformanceCurve::new_unchecked(pi, kind, points))
}
