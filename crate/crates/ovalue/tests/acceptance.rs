//! Acceptance gate: nine end-to-end checks covering closed-form
//! consistency, Monte Carlo agreement, prevalence adjustment, the
//! reference-pool contract, and report determinism.
//!
//! Each check prints one `PASS`/`FAIL` line with its measured numbers and
//! pinned tolerances. Run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1`
//! to see every line; under the default capture mode the lines surface
//! whenever a check fails.

use std::time::Instant;

use ovalue::confusion::Predictions;
use ovalue::dbt::DbtPool;
use ovalue::metrics::{curve_from_scores, CurveKind, LabelingMetricKind};
use ovalue::ops_labeling::{
    ops_f1_closed, ops_labeling_grid, ops_labeling_mc, ops_mc_with_draws, uniform_error_draws,
    LabelingOpsConfig,
};
use ovalue::ops_scoring::ScoringOps;
use ovalue::report::{evaluate, render_report, EvaluationRequest, ReportFormat, TestsetSpec};
use ovalue::rng::UnitRng;

fn verdict(criterion: u32, ok: bool, detail: &str) {
    println!(
        "acceptance criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn spread(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// F1 o-values from the closed form match the deterministic grid within
/// 1e-3 over mu in {0, 0.05, ..., 1} and pi in {0.1, ..., 0.9} at
/// resolution 2000, inside a 30-second budget.
#[test]
fn criterion_1_closed_form_matches_grid() {
    const RESOLUTION: u32 = 2000;
    const TOLERANCE: f64 = 1e-3;
    const BUDGET_SECS: f64 = 30.0;

    let cfg = LabelingOpsConfig {
        grid_resolution: RESOLUTION,
        mc_samples: 1,
        seed: 0,
    };
    let start = Instant::now();
    let mut worst = 0.0f64;
    for pi_step in 1..=9u32 {
        let pi = f64::from(pi_step) / 10.0;
        for mu_step in 0..=20u32 {
            let mu = f64::from(mu_step) / 20.0;
            let closed = ops_f1_closed(mu, pi);
            let grid = ops_labeling_grid(LabelingMetricKind::F1, mu, pi, &cfg);
            worst = worst.max((closed - grid).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        1,
        worst <= TOLERANCE && elapsed < BUDGET_SECS,
        &format!(
            "max |closed - grid| = {worst:.2e} over 189 (mu, pi) pairs at resolution \
             {RESOLUTION} (tolerance {TOLERANCE:.0e}), {elapsed:.1}s of {BUDGET_SECS}s budget"
        ),
    );
}

/// Monte Carlo F1 o-values with G = 100000 agree with the closed form
/// within three binomial standard deviations for 20 seeded (mu, pi)
/// pairs, inside a 10-second budget.
#[test]
fn criterion_2_monte_carlo_matches_closed_form() {
    const G: usize = 100_000;
    const PAIRS: u64 = 20;
    const PAIR_SEED: u64 = 42;
    const BUDGET_SECS: f64 = 10.0;

    let start = Instant::now();
    let mut rng = UnitRng::seed_from_u64(PAIR_SEED);
    let mut ok = true;
    let mut worst_gap = 0.0f64;
    let mut worst_bound = f64::INFINITY;
    for i in 0..PAIRS {
        let mu = rng.next_unit();
        let pi = 0.05 + 0.9 * rng.next_unit();
        let p = ops_f1_closed(mu, pi);
        let cfg = LabelingOpsConfig {
            grid_resolution: 10,
            mc_samples: G,
            seed: 1000 + i,
        };
        let estimate = ops_labeling_mc(LabelingMetricKind::F1, mu, pi, &cfg);
        let bound = 3.0 * (p * (1.0 - p) / G as f64).sqrt();
        let gap = (estimate - p).abs();
        if gap > worst_gap {
            worst_gap = gap;
            worst_bound = bound;
        }
        ok &= gap <= bound;
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        2,
        ok && elapsed < BUDGET_SECS,
        &format!(
            "worst |mc - closed| = {worst_gap:.2e} against its 3-sigma bound {worst_bound:.2e} \
             over {PAIRS} pairs (pair seed {PAIR_SEED}, G = {G}), {elapsed:.1}s of \
             {BUDGET_SECS}s budget"
        ),
    );
}

/// The same error rates score differently under different prevalences:
/// nominal F1 at (alpha = 1, beta = 0) is 0.6667 at pi = 0.5 and 0.1818
/// at pi = 0.1 (within 1e-4), while the o-value of F1 = 0.6 is larger at
/// pi = 0.1 than at pi = 0.5.
#[test]
fn criterion_3_prevalence_changes_nominal_and_rank() {
    const TOLERANCE: f64 = 1e-4;

    let f1_balanced = LabelingMetricKind::F1.eval(0.5, 1.0, 0.0);
    let f1_rare = LabelingMetricKind::F1.eval(0.1, 1.0, 0.0);
    let nominal_ok =
        (f1_balanced - 0.6667).abs() <= TOLERANCE && (f1_rare - 0.1818).abs() <= TOLERANCE;
    let o_rare = ops_f1_closed(0.6, 0.1);
    let o_balanced = ops_f1_closed(0.6, 0.5);
    verdict(
        3,
        nominal_ok && o_rare > o_balanced,
        &format!(
            "f1(pi=0.5, alpha=1, beta=0) = {f1_balanced:.4}, f1(pi=0.1) = {f1_rare:.4} \
             (tolerance {TOLERANCE:.0e}); o(0.6; pi=0.1) = {o_rare:.4} > \
             o(0.6; pi=0.5) = {o_balanced:.4}"
        ),
    );
}

/// A depth-6, 10000-sample reference pool puts the o-value of
/// AUC(PRC) = 0.6 at pi = 0.1 in [0.93, 0.99] (around 0.96) and the
/// o-value of precision 0.5 at recall 0.8, pi = 0.1, in [0.94, 1.0]
/// (around 0.97); a depth sweep over {4, 6, 8} is emitted alongside.
#[test]
fn criterion_4_reference_pool_bands() {
    const G: usize = 10_000;
    const SEED: u64 = 0;

    let mut sweep = String::new();
    let mut auc_o = f64::NAN;
    let mut point_o = f64::NAN;
    for depth in [4u32, 6, 8] {
        let ops = ScoringOps::new(DbtPool::build(depth, G, SEED));
        let a = ops.ops_auc(CurveKind::Prc, 0.6, 0.1);
        let p = ops
            .ops_point(CurveKind::Prc, 0.8, 0.5, 0.1)
            .expect("in-range query");
        sweep.push_str(&format!(" depth {depth}: auc_o = {a:.4}, point_o = {p:.4};"));
        if depth == 6 {
            auc_o = a;
            point_o = p;
        }
    }
    println!("acceptance criterion 4 depth sweep:{sweep}");
    verdict(
        4,
        (0.93..=0.99).contains(&auc_o) && (0.94..=1.0).contains(&point_o),
        &format!(
            "at depth 6, G = {G}, seed {SEED}: o(auc:prc = 0.6; pi = 0.1) = {auc_o:.4} \
             in [0.93, 0.99]; o(precision = 0.5 at recall 0.8; pi = 0.1) = {point_o:.4} \
             in [0.94, 1.0]"
        ),
    );
}

/// Normalized-area o-values are the raw-area o-values after rescaling by
/// the ideal area (bit-identical), and precision o-values equal lift
/// o-values when both use the same draws.
#[test]
fn criterion_5_normalized_and_pointwise_consistency() {
    const G: usize = 10_000;
    const DRAWS: usize = 100_000;
    const DRAW_SEED: u64 = 7;

    let ops = ScoringOps::new(DbtPool::build(6, G, 0));
    let mut rescale_ok = true;
    for kind in [CurveKind::Gain, CurveKind::Lift] {
        for pi in [0.1, 0.3, 0.5] {
            for x in [0.1, 0.5, 0.9] {
                let via_nauc = ops.ops_nauc(kind, x, pi);
                let via_auc = ops.ops_auc(kind, x * kind.ideal_auc(pi), pi);
                rescale_ok &= via_nauc.to_bits() == via_auc.to_bits();
            }
        }
    }

    let draws = uniform_error_draws(DRAWS, DRAW_SEED);
    let mut pointwise_ok = true;
    for pi in [0.1, 0.3, 0.5] {
        for v in [0.2, 0.5, 0.8] {
            let o_precision = ops_mc_with_draws(
                |alpha, beta| LabelingMetricKind::Precision.eval(pi, alpha, beta),
                v,
                &draws,
            );
            // Lift is precision divided by prevalence, pointwise.
            let o_lift = ops_mc_with_draws(
                |alpha, beta| {
                    let x = pi * (1.0 - beta) + (1.0 - pi) * alpha;
                    if x == 0.0 {
                        1.0 / pi
                    } else {
                        (1.0 - beta) / x
                    }
                },
                v / pi,
                &draws,
            );
            pointwise_ok &= o_precision == o_lift;
        }
    }
    verdict(
        5,
        rescale_ok && pointwise_ok,
        &format!(
            "nauc vs rescaled auc bit-identical over gain/lift, pi in {{0.1, 0.3, 0.5}}, \
             x in {{0.1, 0.5, 0.9}}: {rescale_ok}; precision vs lift o-values identical \
             on {DRAWS} shared draws (seed {DRAW_SEED}): {pointwise_ok}"
        ),
    );
}

/// Every sample in a depth-6, 10000-sample pool satisfies the recursive
/// interval constraints and strict opposite ordering, and rebuilding from
/// the same (generator, seed, depth, size) reproduces the pool bitwise.
#[test]
fn criterion_6_pool_structure_and_regeneration() {
    const DEPTH: u32 = 6;
    const G: usize = 10_000;
    const SEED: u64 = 0;

    let pool = DbtPool::build(DEPTH, G, SEED);
    let mut structural_ok = true;
    let mut ordering_ok = true;
    for sample in pool.samples() {
        structural_ok &= sample.validate_structure().is_ok();
        let pairs = sample.sorted_pairs();
        ordering_ok &= pairs.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 < w[0].1);
    }

    let rebuilt = DbtPool::build(DEPTH, G, SEED);
    let mut bitwise_ok = pool.content_hash() == rebuilt.content_hash();
    for (a, b) in pool.samples().iter().zip(rebuilt.samples()) {
        bitwise_ok &= a
            .alphas()
            .iter()
            .zip(b.alphas())
            .all(|(x, y)| x.to_bits() == y.to_bits());
        bitwise_ok &= a
            .betas()
            .iter()
            .zip(b.betas())
            .all(|(x, y)| x.to_bits() == y.to_bits());
    }
    verdict(
        6,
        structural_ok && ordering_ok && bitwise_ok,
        &format!(
            "{G} samples at depth {DEPTH}: interval constraints {structural_ok}, strict \
             opposite ordering {ordering_ok}; rebuild from (rng, seed, depth, size) \
             bitwise-identical: {bitwise_ok} (hash {})",
            &pool.content_hash()[..12]
        ),
    );
}

/// With the value held fixed, o-values strictly decrease as prevalence
/// rises from 0.1 to 0.5, for F1 = 0.6 (closed form) and AUC(PRC) = 0.6
/// (one shared pool).
#[test]
fn criterion_7_o_values_decrease_with_prevalence() {
    let pis = [0.1, 0.2, 0.3, 0.4, 0.5];
    let f1_series: Vec<f64> = pis.iter().map(|&pi| ops_f1_closed(0.6, pi)).collect();
    let ops = ScoringOps::new(DbtPool::build(6, 10_000, 0));
    let auc_series: Vec<f64> = pis
        .iter()
        .map(|&pi| ops.ops_auc(CurveKind::Prc, 0.6, pi))
        .collect();
    let strictly_decreasing = |s: &[f64]| s.windows(2).all(|w| w[1] < w[0]);
    verdict(
        7,
        strictly_decreasing(&f1_series) && strictly_decreasing(&auc_series),
        &format!(
            "over pi = 0.1..0.5: o(f1 = 0.6) = {f1_series:.4?} and o(auc:prc = 0.6) = \
             {auc_series:.4?}, both strictly decreasing"
        ),
    );
}

/// One synthetic scorer evaluated on prevalence-resampled test sets: score
/// u for negatives and u^(1/4) for positives, u uniform.
fn synthetic_testset(pi: f64, n: usize, seed: u64) -> Predictions {
    let mut rng = UnitRng::seed_from_u64(seed);
    let n_pos = (n as f64 * pi).round() as usize;
    let mut labels = Vec::with_capacity(n);
    let mut scores = Vec::with_capacity(n);
    for i in 0..n {
        let positive = i < n_pos;
        let u = rng.next_unit();
        labels.push(positive);
        scores.push(if positive { u.powf(0.25) } else { u });
    }
    Predictions::new(labels, scores).expect("synthetic sets are well-formed")
}

/// The same scorer on test sets resampled to pi = 0.1, 0.2, 0.3 (n = 5000
/// each): nominal AUC(PRC) spreads by more than 0.15 while the o-values
/// stay within a 0.05 band.
#[test]
fn criterion_8_prevalence_resampling_stability() {
    const N: usize = 5000;
    const NOMINAL_SPREAD_MIN: f64 = 0.15;
    const O_VALUE_SPREAD_MAX: f64 = 0.05;

    let ops = ScoringOps::new(DbtPool::build(6, 10_000, 0));
    let mut nominals = Vec::new();
    let mut o_values = Vec::new();
    for (i, pi) in [0.1, 0.2, 0.3].into_iter().enumerate() {
        let predictions = synthetic_testset(pi, N, 1000 + i as u64);
        let curve = curve_from_scores(&predictions, CurveKind::Prc).expect("two classes present");
        let nominal = curve.auc().expect("curve spans the x-axis");
        o_values.push(ops.ops_auc(CurveKind::Prc, nominal, curve.pi()));
        nominals.push(nominal);
    }
    let nominal_spread = spread(&nominals);
    let o_spread = spread(&o_values);
    verdict(
        8,
        nominal_spread > NOMINAL_SPREAD_MIN && o_spread <= O_VALUE_SPREAD_MAX,
        &format!(
            "nominal auc:prc = {nominals:.4?} (spread {nominal_spread:.3} > \
             {NOMINAL_SPREAD_MIN}), o-values = {o_values:.4?} (spread {o_spread:.3} <= \
             {O_VALUE_SPREAD_MAX})"
        ),
    );
}

/// A fixed input and seed yield byte-identical structured reports across
/// repeated runs and across worker-thread counts, and table cells pair the
/// nominal value with its o-value as `nominal (o-value)`.
#[test]
fn criterion_9_reports_are_deterministic() {
    const SEED: u64 = 7;

    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("golden.csv");
    let golden = synthetic_testset(0.3, 200, 5);
    let mut contents = String::from("label,score\n");
    for (label, score) in golden.labels().iter().zip(golden.scores()) {
        contents.push_str(&format!("{},{}\n", u8::from(*label), score));
    }
    std::fs::write(&path, contents).expect("write golden input");

    let mut request = EvaluationRequest::new(
        vec![TestsetSpec {
            name: "golden".into(),
            path,
        }],
        vec![
            "f1".parse().unwrap(),
            "auc:prc".parse().unwrap(),
            "point:prc@0.8".parse().unwrap(),
        ],
    );
    request.seed = SEED;
    request.depth = 5;
    request.samples = 2000;

    let run_json = || render_report(&evaluate(&request).expect("evaluation"), ReportFormat::Json);
    let first = run_json();
    let second = run_json();
    let single_thread = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(run_json);
    let four_threads = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .expect("thread pool")
        .install(run_json);
    let repeat_ok = first == second;
    let threads_ok = single_thread == four_threads && single_thread == first;

    let report = evaluate(&request).expect("evaluation");
    let table = render_report(&report, ReportFormat::Table);
    let cells_ok = report.testsets[0]
        .metrics
        .iter()
        .all(|m| table.contains(&format!("{:.2} ({:.2})", m.nominal, m.o_value)));
    verdict(
        9,
        repeat_ok && threads_ok && cells_ok,
        &format!(
            "seed {SEED}: identical bytes across runs: {repeat_ok}; across 1 vs 4 worker \
             threads: {threads_ok}; table cells pair nominal with o-value: {cells_ok}"
        ),
    );
}
