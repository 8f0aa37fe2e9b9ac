//! Test-set evaluation, comparison, and structured report emission.
//!
//! This module is the command-line surface's engine: it ingests prediction
//! files, routes each requested metric through the right nominal computation
//! and o-value method, and renders the results as JSON, CSV, or an aligned
//! table whose cells read `nominal (o-value)`. Reports carry a
//! reproducibility block (seed, depth, pool size, grid resolution, generator
//! id, tool version) sufficient to regenerate every number exactly.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::confusion::{confusion_at_threshold, rates_from_confusion, Predictions};
use crate::dbt::DbtPool;
use crate::error::{Error, Result};
use crate::metrics::{curve_from_scores, CurveKind, LabelingMetricKind, PerformanceCurve};
use crate::ops_labeling::{ops_f1_closed, ops_labeling_grid, LabelingOpsConfig};
use crate::ops_scoring::{interpolate_errors, OprcPoint, ScoringOps};
use crate::rng::RNG_ID;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

// ───────────────────────── metric selection ─────────────────────────

/// One requested metric: a labeling metric, a curve AUC (raw or
/// normalized), or a curve point at a fixed horizontal position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricSpec {
    Labeling(LabelingMetricKind),
    Auc(CurveKind),
    Nauc(CurveKind),
    Point { kind: CurveKind, u: f64 },
}

impl MetricSpec {
    /// Stable identifier used in reports and on the command line:
    /// `f1`, `auc:prc`, `nauc:gain`, `point:prc@0.8`.
    pub fn id(&self) -> String {
        match self {
            MetricSpec::Labeling(kind) => kind.name().to_string(),
            MetricSpec::Auc(kind) => format!("auc:{kind}"),
            MetricSpec::Nauc(kind) => format!("nauc:{kind}"),
            MetricSpec::Point { kind, u } => format!("point:{kind}@{u}"),
        }
    }

    /// Whether evaluating this metric requires a reference pool.
    pub fn needs_pool(&self) -> bool {
        !matches!(self, MetricSpec::Labeling(_))
    }
}

impl fmt::Display for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for MetricSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(kind) = s.parse::<LabelingMetricKind>() {
            return Ok(MetricSpec::Labeling(kind));
        }
        if let Some(kind) = s.strip_prefix("auc:") {
            return Ok(MetricSpec::Auc(kind.parse()?));
        }
        if let Some(kind) = s.strip_prefix("nauc:") {
            return Ok(MetricSpec::Nauc(kind.parse()?));
        }
        if let Some(rest) = s.strip_prefix("point:") {
            let (kind, u) = rest.split_once('@').ok_or_else(|| {
                Error::InvalidRequest(format!(
                    "point metric '{s}' must look like point:<kind>@<x>, e.g. point:prc@0.8"
                ))
            })?;
            let u: f64 = u.parse().map_err(|_| {
                Error::InvalidRequest(format!("unparseable curve position in '{s}'"))
            })?;
            if !(0.0..=1.0).contains(&u) {
                return Err(Error::InvalidRequest(format!(
                    "curve position {u} must lie in [0, 1]"
                )));
            }
            return Ok(MetricSpec::Point {
                kind: kind.parse()?,
                u,
            });
        }
        Err(Error::InvalidRequest(format!(
            "unknown metric '{s}' (expected recall, precision, f1, mcc, auc:<kind>, \
             nauc:<kind>, or point:<kind>@<x>)"
        )))
    }
}

/// Parses a comma-separated metric list.
pub fn parse_metric_list(s: &str) -> Result<Vec<MetricSpec>> {
    let metrics: Vec<MetricSpec> = s
        .split(',')
        .map(|item| item.trim().parse())
        .collect::<Result<_>>()?;
    if metrics.is_empty() {
        return Err(Error::InvalidRequest("no metrics selected".into()));
    }
    Ok(metrics)
}

// ───────────────────────── requests ─────────────────────────

/// A named prediction file.
#[derive(Debug, Clone)]
pub struct TestsetSpec {
    pub name: String,
    pub path: PathBuf,
}

/// Everything needed to evaluate one or more test sets reproducibly.
#[derive(Debug, Clone)]
pub struct EvaluationRequest {
    pub testsets: Vec<TestsetSpec>,
    pub metrics: Vec<MetricSpec>,
    /// Decision threshold for labeling metrics.
    pub threshold: f64,
    /// Evaluate as if the test set had this prevalence; recorded in the
    /// report. Error rates still come from the data.
    pub pi_override: Option<f64>,
    /// Reference tree depth.
    pub depth: u32,
    /// Reference pool size.
    pub samples: usize,
    /// Seed for every randomized computation.
    pub seed: u64,
    /// Grid resolution for labeling o-values.
    pub grid_resolution: u32,
    /// Reuse or store the reference pool at this path.
    pub pool_cache: Option<PathBuf>,
    /// Force the input delimiter instead of auto-detecting comma/tab.
    pub delimiter: Option<u8>,
}

impl EvaluationRequest {
    pub fn new(testsets: Vec<TestsetSpec>, metrics: Vec<MetricSpec>) -> Self {
        EvaluationRequest {
            testsets,
            metrics,
            threshold: 0.5,
            pi_override: None,
            depth: 6,
            samples: 10_000,
            seed: 0,
            grid_resolution: 2000,
            pool_cache: None,
            delimiter: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.testsets.is_empty() {
            return Err(Error::InvalidRequest("no test sets given".into()));
        }
        if self.metrics.is_empty() {
            return Err(Error::InvalidRequest("no metrics selected".into()));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::InvalidRequest(format!(
                "threshold {} must lie in [0, 1]",
                self.threshold
            )));
        }
        if let Some(pi) = self.pi_override {
            if !(pi > 0.0 && pi < 1.0) {
                return Err(Error::InvalidRequest(format!(
                    "pi override {pi} must lie strictly inside (0, 1)"
                )));
            }
        }
        if self.grid_resolution < 10 {
            return Err(Error::InvalidRequest("grid resolution below 10".into()));
        }
        if self.samples < 1 {
            return Err(Error::InvalidRequest("pool needs at least one sample".into()));
        }
        if self.depth > 20 {
            return Err(Error::InvalidRequest("depth above 20 is not supported".into()));
        }
        Ok(())
    }
}

// ───────────────────────── report data model ─────────────────────────

/// One metric's nominal value, o-value, and the method that produced the
/// o-value (`closed`, `grid`, or `dbt`).
#[derive(Debug, Clone, Serialize)]
pub struct MetricResult {
    pub metric: String,
    pub nominal: f64,
    pub o_value: f64,
    pub method: String,
}

/// One test set's results.
#[derive(Debug, Clone, Serialize)]
pub struct TestsetReport {
    pub name: String,
    pub n: u64,
    pub pi: f64,
    /// `"data"` when prevalence came from the labels, `"override"` when
    /// forced by the request.
    pub pi_source: String,
    /// Identity hash of the reference pool used for curve metrics; equal
    /// across all rows of one report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pool_hash: Option<String>,
    pub metrics: Vec<MetricResult>,
}

/// A full evaluation or comparison report. The field names of the
/// serialized form are a stable contract.
#[derive(Debug, Clone, Serialize)]
pub struct OValueReport {
    pub tool_version: String,
    pub rng_id: String,
    pub seed: u64,
    pub depth: u32,
    pub samples: u64,
    pub grid: u32,
    pub threshold: f64,
    pub testsets: Vec<TestsetReport>,
}

/// One OPS-curve series: o-values over a grid of nominal values at a fixed
/// prevalence.
#[derive(Debug, Clone, Serialize)]
pub struct OpsCurveSeries {
    pub metric: String,
    pub pi: f64,
    pub points: Vec<OpsCurvePoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OpsCurvePoint {
    pub mu: f64,
    pub o_value: f64,
}

// ───────────────────────── ingestion ─────────────────────────

/// Reads a prediction file: delimiter-separated text with a header row and
/// columns `label` (0 or 1) and `score` (finite real, any range). The
/// delimiter is auto-detected between comma and tab unless forced.
///
/// # Errors
///
/// [`Error::DataValidation`] naming the file and line for every malformed
/// row, missing column, or empty input.
pub fn load_predictions(path: &Path, delimiter: Option<u8>) -> Result<Predictions> {
    let display = path.display().to_string();
    let raw = fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{display}: {e}")))?;
    let data_error = |line: u64, message: String| Error::DataValidation {
        path: display.clone(),
        line,
        message,
    };
    if raw.trim().is_empty() {
        return Err(data_error(1, "empty file".into()));
    }
    let delimiter = delimiter.unwrap_or_else(|| {
        let first_line = raw.lines().next().unwrap_or("");
        if first_line.contains('\t') {
            b'\t'
        } else {
            b','
        }
    });

    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(raw.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| data_error(1, format!("unreadable header: {e}")))?;
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| data_error(1, format!("missing required column `{name}`")))
    };
    let label_col = find("label")?;
    let score_col = find("score")?;

    let mut labels = Vec::new();
    let mut scores = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            data_error(line, format!("malformed row: {e}"))
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |col: usize, name: &str| {
            record
                .get(col)
                .filter(|v| !v.is_empty())
                .ok_or_else(|| data_error(line, format!("missing value in column `{name}`")))
        };
        let label = match field(label_col, "label")? {
            "0" => false,
            "1" => true,
            other => {
                return Err(data_error(
                    line,
                    format!("label must be 0 or 1, found `{other}`"),
                ))
            }
        };
        let score_text = field(score_col, "score")?;
        let score: f64 = score_text.parse().map_err(|_| {
            data_error(line, format!("unparseable score `{score_text}`"))
        })?;
        if !score.is_finite() {
            return Err(data_error(
                line,
                format!("score must be finite, found `{score_text}`"),
            ));
        }
        labels.push(label);
        scores.push(score);
    }
    if labels.is_empty() {
        return Err(data_error(1, "no data rows".into()));
    }
    Predictions::new(labels, scores)
}

// ───────────────────────── evaluation ─────────────────────────

/// Evaluates every requested metric on every test set against one shared
/// reference configuration.
pub fn evaluate(request: &EvaluationRequest) -> Result<OValueReport> {
    request.validate()?;

    let scoring = if request.metrics.iter().any(MetricSpec::needs_pool) {
        let pool = match &request.pool_cache {
            Some(path) => DbtPool::load_or_build(path, request.depth, request.samples, request.seed)?,
            None => DbtPool::build(request.depth, request.samples, request.seed),
        };
        Some(ScoringOps::new(pool))
    } else {
        None
    };
    let pool_hash = scoring.as_ref().map(|s| s.pool().content_hash());

    let labeling_cfg = LabelingOpsConfig {
        grid_resolution: request.grid_resolution,
        mc_samples: 100_000,
        seed: request.seed,
    };

    let mut testsets = Vec::with_capacity(request.testsets.len());
    for spec in &request.testsets {
        let predictions = load_predictions(&spec.path, request.delimiter)?;
        let data_pi = predictions.prevalence()?;
        let (pi, pi_source) = match request.pi_override {
            Some(p) => (p, "override"),
            None => (data_pi, "data"),
        };

        // Error rates at the decision threshold, for labeling metrics.
        let rates = rates_from_confusion(&confusion_at_threshold(&predictions, request.threshold))?;
        // Threshold-swept curves, built lazily once per kind.
        let mut curves: HashMap<CurveKind, Arc<PerformanceCurve>> = HashMap::new();
        let mut curve_for = |kind: CurveKind| -> Result<Arc<PerformanceCurve>> {
            if let Some(c) = curves.get(&kind) {
                return Ok(Arc::clone(c));
            }
            let curve = Arc::new(curve_from_scores(&predictions, kind)?.with_pi(pi)?);
            curves.insert(kind, Arc::clone(&curve));
            Ok(curve)
        };

        let mut metrics = Vec::with_capacity(request.metrics.len());
        for metric in &request.metrics {
            let (nominal, o_value, method) = match *metric {
                MetricSpec::Labeling(kind) => {
                    let nominal = kind.eval(pi, rates.alpha, rates.beta);
                    if kind == LabelingMetricKind::F1 {
                        (nominal, ops_f1_closed(nominal, pi), "closed")
                    } else {
                        (
                            nominal,
                            ops_labeling_grid(kind, nominal, pi, &labeling_cfg),
                            "grid",
                        )
                    }
                }
                MetricSpec::Auc(kind) => {
                    let nominal = curve_for(kind)?.auc()?;
                    let ops = scoring.as_ref().expect("pool built for curve metrics");
                    (nominal, ops.ops_auc(kind, nominal, pi), "dbt")
                }
                MetricSpec::Nauc(kind) => {
                    let nominal = curve_for(kind)?.nauc()?;
                    let ops = scoring.as_ref().expect("pool built for curve metrics");
                    (nominal, ops.ops_nauc(kind, nominal, pi), "dbt")
                }
                MetricSpec::Point { kind, u } => {
                    let curve = curve_for(kind)?;
                    let (alpha, beta) = interpolate_errors(&curve, u)?;
                    let nominal = kind.point(pi, alpha, beta).map(|(_, y)| y).ok_or_else(
                        || Error::InvalidRequest(format!("{kind} y undefined at x = {u}")),
                    )?;
                    let ops = scoring.as_ref().expect("pool built for curve metrics");
                    (nominal, ops.ops_point(kind, u, nominal, pi)?, "dbt")
                }
            };
            metrics.push(MetricResult {
                metric: metric.id(),
                nominal,
                o_value,
                method: method.to_string(),
            });
        }

        testsets.push(TestsetReport {
            name: spec.name.clone(),
            n: predictions.len() as u64,
            pi,
            pi_source: pi_source.to_string(),
            pool_hash: pool_hash.clone(),
            metrics,
        });
    }

    Ok(OValueReport {
        tool_version: TOOL_VERSION.to_string(),
        rng_id: RNG_ID.to_string(),
        seed: request.seed,
        depth: request.depth,
        samples: request.samples as u64,
        grid: request.grid_resolution,
        threshold: request.threshold,
        testsets,
    })
}

/// Evaluates at least two named test sets against the identical reference
/// pool and grid, so cross-set o-value differences reflect only the data
/// and prevalence. Rows keep the input order.
pub fn compare(request: &EvaluationRequest) -> Result<OValueReport> {
    if request.testsets.len() < 2 {
        return Err(Error::InvalidRequest(
            "comparison needs at least two test sets".into(),
        ));
    }
    evaluate(request)
}

// ───────────────────────── series emission ─────────────────────────

/// Shared knobs for series emission.
#[derive(Debug, Clone)]
pub struct OpsConfig {
    pub depth: u32,
    pub samples: usize,
    pub seed: u64,
    pub grid_resolution: u32,
    pub pool_cache: Option<PathBuf>,
}

impl Default for OpsConfig {
    fn default() -> Self {
        OpsConfig {
            depth: 6,
            samples: 10_000,
            seed: 0,
            grid_resolution: 2000,
            pool_cache: None,
        }
    }
}

impl OpsConfig {
    fn build_pool(&self) -> Result<DbtPool> {
        Ok(match &self.pool_cache {
            Some(path) => DbtPool::load_or_build(path, self.depth, self.samples, self.seed)?,
            None => DbtPool::build(self.depth, self.samples, self.seed),
        })
    }
}

/// Emits the OPS function of a labeling metric or curve AUC: one
/// `(mu, o-value)` series per prevalence, over a shared grid of nominal
/// values.
pub fn emit_ops_curve(
    metric: &MetricSpec,
    pi_list: &[f64],
    mu_grid: &[f64],
    cfg: &OpsConfig,
) -> Result<Vec<OpsCurveSeries>> {
    if pi_list.is_empty() {
        return Err(Error::InvalidRequest("empty prevalence list".into()));
    }
    for &pi in pi_list {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(Error::InvalidRequest(format!(
                "prevalence {pi} must lie strictly inside (0, 1)"
            )));
        }
    }
    if mu_grid.is_empty() {
        return Err(Error::InvalidRequest("empty value grid".into()));
    }
    if let Some(bad) = mu_grid.iter().find(|m| !m.is_finite()) {
        return Err(Error::InvalidRequest(format!("non-finite grid value {bad}")));
    }

    let scoring = match metric {
        MetricSpec::Auc(_) | MetricSpec::Nauc(_) => Some(ScoringOps::new(cfg.build_pool()?)),
        MetricSpec::Labeling(_) => None,
        MetricSpec::Point { .. } => {
            return Err(Error::InvalidRequest(
                "point metrics have no scalar OPS curve; use an oprc emission instead".into(),
            ))
        }
    };
    let labeling_cfg = LabelingOpsConfig {
        grid_resolution: cfg.grid_resolution,
        mc_samples: 100_000,
        seed: cfg.seed,
    };

    let mut series = Vec::with_capacity(pi_list.len());
    for &pi in pi_list {
        let points = mu_grid
            .iter()
            .map(|&mu| {
                let o_value = match *metric {
                    MetricSpec::Labeling(LabelingMetricKind::F1) => ops_f1_closed(mu, pi),
                    MetricSpec::Labeling(kind) => {
                        ops_labeling_grid(kind, mu, pi, &labeling_cfg)
                    }
                    MetricSpec::Auc(kind) => {
                        scoring.as_ref().unwrap().ops_auc(kind, mu, pi)
                    }
                    MetricSpec::Nauc(kind) => {
                        scoring.as_ref().unwrap().ops_nauc(kind, mu, pi)
                    }
                    MetricSpec::Point { .. } => unreachable!("rejected above"),
                };
                OpsCurvePoint { mu, o_value }
            })
            .collect();
        series.push(OpsCurveSeries {
            metric: metric.id(),
            pi,
            points,
        });
    }
    Ok(series)
}

/// Emits the outperformance precision-recall curve of one test set: per
/// grid recall, the nominal interpolated precision and its o-value.
pub fn emit_oprc(
    predictions: &Predictions,
    recall_grid: &[f64],
    cfg: &OpsConfig,
) -> Result<Vec<OprcPoint>> {
    let scoring = ScoringOps::new(cfg.build_pool()?);
    scoring.oprc(predictions, recall_grid)
}

// ───────────────────────── rendering ─────────────────────────

/// Output encodings for reports and series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            other => Err(Error::InvalidRequest(format!(
                "unknown format '{other}' (expected json, csv, or table)"
            ))),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Renders an aligned text table; every column is padded to its widest
/// cell, with two spaces between columns.
fn render_table(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for (line_no, row) in std::iter::once(&header).chain(rows.iter()).enumerate() {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if line_no == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}

/// The Table-style cell pairing a nominal value with its o-value.
fn render_cell(nominal: f64, o_value: f64) -> String {
    format!("{nominal:.2} ({o_value:.2})")
}

/// Renders an evaluation or comparison report.
pub fn render_report(report: &OValueReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => {
            let mut out = String::from("testset,n,pi,pi_source,metric,nominal,o_value,method\n");
            for ts in &report.testsets {
                for m in &ts.metrics {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        csv_escape(&ts.name),
                        ts.n,
                        ts.pi,
                        ts.pi_source,
                        csv_escape(&m.metric),
                        m.nominal,
                        m.o_value,
                        m.method
                    ));
                }
            }
            out
        }
        ReportFormat::Table => {
            let metric_ids: Vec<String> = report
                .testsets
                .first()
                .map(|ts| ts.metrics.iter().map(|m| m.metric.clone()).collect())
                .unwrap_or_default();
            let mut header = vec!["test set".to_string(), "n".to_string(), "pi".to_string()];
            header.extend(metric_ids.iter().cloned());
            let rows = report
                .testsets
                .iter()
                .map(|ts| {
                    let mut row = vec![
                        ts.name.clone(),
                        ts.n.to_string(),
                        format!("{:.4}", ts.pi),
                    ];
                    for m in &ts.metrics {
                        row.push(render_cell(m.nominal, m.o_value));
                    }
                    row
                })
                .collect();
            let mut out = render_table(header, rows);
            out.push_str(&format!(
                "seed {}  depth {}  samples {}  grid {}  threshold {}  rng {}  v{}\n",
                report.seed,
                report.depth,
                report.samples,
                report.grid,
                report.threshold,
                report.rng_id,
                report.tool_version
            ));
            out
        }
    }
}

/// Renders OPS-curve series; CSV and table use the long format with one
/// row per (pi, mu) pair.
pub fn render_ops_curves(series: &[OpsCurveSeries], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(&series),
        ReportFormat::Csv => {
            let mut out = String::from("metric,pi,mu,o_value\n");
            for s in series {
                for p in &s.points {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        csv_escape(&s.metric),
                        s.pi,
                        p.mu,
                        p.o_value
                    ));
                }
            }
            out
        }
        ReportFormat::Table => {
            let header = ["metric", "pi", "mu", "o_value"]
                .map(String::from)
                .to_vec();
            let rows = series
                .iter()
                .flat_map(|s| {
                    s.points.iter().map(|p| {
                        vec![
                            s.metric.clone(),
                            format!("{:.4}", s.pi),
                            format!("{:.4}", p.mu),
                            format!("{:.4}", p.o_value),
                        ]
                    })
                })
                .collect();
            render_table(header, rows)
        }
    }
}

/// Renders an OPRC series; column order `recall, precision, o_value` is a
/// stable contract.
pub fn render_oprc(points: &[OprcPoint], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(&points),
        ReportFormat::Csv => {
            let mut out = String::from("recall,precision,o_value\n");
            for p in points {
                out.push_str(&format!("{},{},{}\n", p.recall, p.precision, p.o_value));
            }
            out
        }
        ReportFormat::Table => {
            let header = ["recall", "precision", "o_value"].map(String::from).to_vec();
            let rows = points
                .iter()
                .map(|p| {
                    vec![
                        format!("{:.4}", p.recall),
                        format!("{:.4}", p.precision),
                        format!("{:.4}", p.o_value),
                    ]
                })
                .collect();
            render_table(header, rows)
        }
    }
}
