//! Confusion matrices and the rate parametrization.
//!
//! A binary test set with `n` instances, prevalence `pi`, false positive
//! rate `alpha`, and false negative rate `beta` determines the confusion
//! matrix exactly:
//!
//! ```text
//! tp = n * pi * (1 - beta)      fn = n * pi * beta
//! fp = n * (1 - pi) * alpha     tn = n * (1 - pi) * (1 - alpha)
//! ```
//!
//! The `{n, pi, alpha, beta}` form separates what the test set looks like
//! (prevalence) from how the classifier errs (the two error rates), which is
//! what lets downstream code condition reference distributions on prevalence
//! alone.

use crate::error::{Error, Result};

/// Counts of a binary classifier's outcomes on a test set.
///
/// Cells are `f64` so matrices reconstructed from fractional rates are
/// representable; matrices built from labels always hold whole numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionMatrix {
    pub true_pos: f64,
    pub false_pos: f64,
    pub false_neg: f64,
    pub true_neg: f64,
}

impl ConfusionMatrix {
    pub fn new(true_pos: f64, false_pos: f64, false_neg: f64, true_neg: f64) -> Self {
        ConfusionMatrix {
            true_pos,
            false_pos,
            false_neg,
            true_neg,
        }
    }

    /// Number of positive instances, `tp + fn`.
    pub fn positives(&self) -> f64 {
        self.true_pos + self.false_neg
    }

    /// Number of negative instances, `fp + tn`.
    pub fn negatives(&self) -> f64 {
        self.false_pos + self.true_neg
    }

    /// Total number of instances.
    pub fn total(&self) -> f64 {
        self.positives() + self.negatives()
    }
}

/// The `{n, pi, alpha, beta}` parametrization of a confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rates {
    /// Test set size, `n > 0`.
    pub n: f64,
    /// Prevalence of the positive class, strictly inside `(0, 1)`.
    pub pi: f64,
    /// False positive rate `fp / (fp + tn)`, in `[0, 1]`.
    pub alpha: f64,
    /// False negative rate `fn / (tp + fn)`, in `[0, 1]`.
    pub beta: f64,
}

impl Rates {
    pub fn new(n: f64, pi: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidRates(format!("n = {n} must be positive")));
        }
        if !(pi > 0.0 && pi < 1.0) {
            return Err(Error::InvalidRates(format!(
                "pi = {pi} must lie strictly inside (0, 1)"
            )));
        }
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidRates(format!(
                    "{name} = {value} must lie in [0, 1]"
                )));
            }
        }
        Ok(Rates { n, pi, alpha, beta })
    }
}

/// A test set's true labels paired with real-valued classifier scores.
///
/// Lengths always match and scores are always finite; both are checked at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Predictions {
    labels: Vec<bool>,
    scores: Vec<f64>,
}

impl Predictions {
    pub fn new(labels: Vec<bool>, scores: Vec<f64>) -> Result<Self> {
        if labels.len() != scores.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: scores.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteScore { index });
        }
        Ok(Predictions { labels, scores })
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_positives(&self) -> usize {
        self.labels.iter().filter(|&&l| l).count()
    }

    pub fn num_negatives(&self) -> usize {
        self.len() - self.num_positives()
    }

    /// Fraction of positive instances.
    ///
    /// # Errors
    ///
    /// [`Error::DegeneratePrevalence`] when either class is absent.
    pub fn prevalence(&self) -> Result<f64> {
        let pos = self.num_positives();
        if pos == 0 {
            return Err(Error::DegeneratePrevalence {
                missing: "positive",
            });
        }
        if pos == self.len() {
            return Err(Error::DegeneratePrevalence {
                missing: "negative",
            });
        }
        Ok(pos as f64 / self.len() as f64)
    }
}

/// Counts outcomes from paired true and predicted labels.
///
/// # Errors
///
/// [`Error::LengthMismatch`] on unequal lengths, [`Error::EmptyInput`] on
/// empty input.
pub fn confusion_from_labels(labels: &[bool], predicted: &[bool]) -> Result<ConfusionMatrix> {
    if labels.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: predicted.len(),
        });
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut cm = ConfusionMatrix::new(0.0, 0.0, 0.0, 0.0);
    for (&label, &pred) in labels.iter().zip(predicted) {
        match (label, pred) {
            (true, true) => cm.true_pos += 1.0,
            (false, true) => cm.false_pos += 1.0,
            (true, false) => cm.false_neg += 1.0,
            (false, false) => cm.true_neg += 1.0,
        }
    }
    Ok(cm)
}

/// Thresholds scores at `t` (predict positive when `score >= t`) and counts
/// outcomes.
pub fn confusion_at_threshold(predictions: &Predictions, t: f64) -> ConfusionMatrix {
    let mut cm = ConfusionMatrix::new(0.0, 0.0, 0.0, 0.0);
    for (&label, &score) in predictions.labels().iter().zip(predictions.scores()) {
        match (label, score >= t) {
            (true, true) => cm.true_pos += 1.0,
            (false, true) => cm.false_pos += 1.0,
            (true, false) => cm.false_neg += 1.0,
            (false, false) => cm.true_neg += 1.0,
        }
    }
    cm
}

/// Converts counts to the `{n, pi, alpha, beta}` parametrization.
///
/// # Errors
///
/// [`Error::DegeneratePrevalence`] when the matrix has no positives or no
/// negatives, since `alpha` or `beta` would then be 0/0.
pub fn rates_from_confusion(cm: &ConfusionMatrix) -> Result<Rates> {
    let positives = cm.positives();
    let negatives = cm.negatives();
    if positives <= 0.0 {
        return Err(Error::DegeneratePrevalence {
            missing: "positive",
        });
    }
    if negatives <= 0.0 {
        return Err(Error::DegeneratePrevalence {
            missing: "negative",
        });
    }
    let n = positives + negatives;
    Ok(Rates {
        n,
        pi: positives / n,
        alpha: cm.false_pos / negatives,
        beta: cm.false_neg / positives,
    })
}

/// Reconstructs the confusion matrix determined by `{n, pi, alpha, beta}`.
///
/// Products that should be whole counts (`n * pi`, per-class error counts)
/// can land half an ulp away from the integer after division-based rates;
/// each product is therefore snapped to the nearest integer when within a
/// few ulps, which makes `confusion_from_rates(rates_from_confusion(cm))`
/// reproduce integer matrices exactly. Rates that do not come from counts
/// are perturbed by at most a few ulps, and only when a product happens to
/// graze an integer.
pub fn confusion_from_rates(rates: &Rates) -> ConfusionMatrix {
    let positives = snap_to_count(rates.n * rates.pi);
    let negatives = rates.n - positives;
    let false_neg = snap_to_count(positives * rates.beta);
    let false_pos = snap_to_count(negatives * rates.alpha);
    ConfusionMatrix {
        true_pos: positives - false_neg,
        false_pos,
        false_neg,
        true_neg: negatives - false_pos,
    }
}

/// Rounds `x` to the nearest integer when it is within 4 relative epsilons;
/// the error of one multiply after one divide is under 2, so count-valued
/// products always snap.
fn snap_to_count(x: f64) -> f64 {
    let nearest = x.round();
    if nearest >= 0.0 && (x - nearest).abs() <= 4.0 * f64::EPSILON * x.abs() {
        nearest
    } else {
        x
    }
}
