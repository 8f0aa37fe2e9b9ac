//! O-values for binary classification metrics.
//!
//! An o-value standardizes a classification metric by reporting the
//! probability that a reference classifier, drawn at random conditional on
//! the test-set prevalence, performs strictly worse than the observed value.
//! Unlike raw metric values, o-values from test sets with different
//! prevalences are directly comparable.
//!
//! The crate is organized bottom-up:
//!
//! * [`confusion`]: confusion matrices and the `{n, pi, alpha, beta}` rate
//!   parametrization that separates prevalence from classifier errors.
//! * [`metrics`]: labeling metrics (recall, precision, F1, MCC) and scoring
//!   curves (ROC, PRC, lift, gain) expressed in the rate parametrization.
//! * [`ops_labeling`]: outperformance functions for labeling metrics under
//!   the independent-uniform reference, with closed-form, grid, and Monte
//!   Carlo evaluation.
//! * [`dbt`]: the directed-binary-tree reference distribution over
//!   threshold-indexed error sequences, used for curve-level metrics.
//! * [`ops_scoring`]: Monte Carlo o-values for curve AUCs and curve points
//!   over a shared reference pool.
//! * [`report`]: test-set evaluation, cross-set comparison, and structured
//!   report emission backing the command-line interface.

pub mod confusion;
pub mod dbt;
pub mod error;
pub mod metrics;
pub mod ops_labeling;
pub mod ops_scoring;
pub mod report;
pub mod rng;

pub use confusion::{ConfusionMatrix, Predictions, Rates};
pub use error::{Error, Result};
pub use metrics::{CurveKind, LabelingMetricKind, PerformanceCurve};
