//! Outperformance functions for labeling metrics.
//!
//! The o-value of an observed metric value `mu` is the probability that a
//! reference classifier performs *strictly* worse than `mu`, conditional on
//! the test set's prevalence. For labeling metrics the reference draws the
//! error rates independently and uniformly: `(alpha, beta) ~ Unif[0,1]^2`.
//!
//! Three evaluation routes are provided: a closed form for F1, a
//! deterministic midpoint-grid count for any metric, and a seeded Monte
//! Carlo count. Values outside the metric's codomain follow CDF semantics
//! (0 below, 1 above) rather than erroring, since observed values can sit
//! exactly on the bounds.

use rayon::prelude::*;

use crate::metrics::LabelingMetricKind;
use crate::rng::UnitRng;

/// Tuning knobs for grid and Monte Carlo evaluation.
#[derive(Debug, Clone, Copy)]
pub struct LabelingOpsConfig {
    /// Cells per axis of the midpoint grid; at least 10.
    pub grid_resolution: u32,
    /// Monte Carlo draw count; at least 1.
    pub mc_samples: usize,
    /// Seed for the Monte Carlo stream.
    pub seed: u64,
}

impl Default for LabelingOpsConfig {
    fn default() -> Self {
        // Sized so the grid agrees with the F1 closed form to 1e-3 and a
        // Monte Carlo run stays within a fraction of a second.
        LabelingOpsConfig {
            grid_resolution: 2000,
            mc_samples: 100_000,
            seed: 0,
        }
    }
}

/// Closed-form o-value of the F1 score.
///
/// Under the uniform reference the F1 distribution has an explicit CDF with
/// a single break at `mu = 2*pi/(1+pi)`, where the level set of F1 starts
/// leaving the unit square through the `alpha = 1` edge.
pub fn ops_f1_closed(mu: f64, pi: f64) -> f64 {
    debug_assert!(pi > 0.0 && pi < 1.0);
    if mu <= 0.0 {
        return 0.0;
    }
    if mu >= 1.0 {
        return 1.0;
    }
    let first = (1.0 + pi) * mu / (2.0 * pi * (2.0 - mu));
    let breakpoint = 2.0 * pi / (1.0 + pi);
    let value = if mu <= breakpoint {
        first
    } else {
        let excess = (1.0 + pi) * mu - 2.0 * pi;
        first - excess * excess / (2.0 * pi * (1.0 - pi) * mu * (2.0 - mu))
    };
    value.clamp(0.0, 1.0)
}

/// O-value by deterministic midpoint counting: the fraction of
/// `resolution^2` cell centers of the unit square where the metric falls
/// strictly below `mu`.
///
/// # Panics
///
/// When `grid_resolution < 10`.
pub fn ops_labeling_grid(
    kind: LabelingMetricKind,
    mu: f64,
    pi: f64,
    cfg: &LabelingOpsConfig,
) -> f64 {
    assert!(cfg.grid_resolution >= 10, "grid resolution below 10");
    debug_assert!(pi > 0.0 && pi < 1.0);
    let r = cfg.grid_resolution as usize;
    let step = 1.0 / r as f64;
    let below: usize = (0..r)
        .into_par_iter()
        .map(|i| {
            let alpha = (i as f64 + 0.5) * step;
            let mut count = 0usize;
            for j in 0..r {
                let beta = (j as f64 + 0.5) * step;
                if kind.eval(pi, alpha, beta) < mu {
                    count += 1;
                }
            }
            count
        })
        .sum();
    below as f64 / (r * r) as f64
}

/// O-value by seeded Monte Carlo: the fraction of `mc_samples` uniform
/// `(alpha, beta)` draws where the metric falls strictly below `mu`.
/// Deterministic given the seed.
pub fn ops_labeling_mc(
    kind: LabelingMetricKind,
    mu: f64,
    pi: f64,
    cfg: &LabelingOpsConfig,
) -> f64 {
    debug_assert!(pi > 0.0 && pi < 1.0);
    let draws = uniform_error_draws(cfg.mc_samples, cfg.seed);
    ops_mc_with_draws(|alpha, beta| kind.eval(pi, alpha, beta), mu, &draws)
}

/// Uniform `(alpha, beta)` draws from the pinned stream; `alpha` is drawn
/// before `beta` within each pair.
pub fn uniform_error_draws(count: usize, seed: u64) -> Vec<(f64, f64)> {
    assert!(count >= 1, "at least one draw is required");
    let mut rng = UnitRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let alpha = rng.next_unit();
            let beta = rng.next_unit();
            (alpha, beta)
        })
        .collect()
}

/// Fraction of `draws` where `metric(alpha, beta)` falls strictly below
/// `mu`.
///
/// Separating the draws from the metric lets callers compare metrics that
/// are affine images of each other on *identical* randomness, where
/// o-values must agree exactly.
pub fn ops_mc_with_draws(
    metric: impl Fn(f64, f64) -> f64 + Sync,
    mu: f64,
    draws: &[(f64, f64)],
) -> f64 {
    assert!(!draws.is_empty(), "at least one draw is required");
    let below = draws
        .par_iter()
        .filter(|&&(alpha, beta)| metric(alpha, beta) < mu)
        .count();
    below as f64 / draws.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual}"
        );
    }

    // Hand-derived closed-form anchors, exact rationals:
    //   pi = 0.5, mu = 2/3 (the breakpoint): (1.5 * 2/3)/(2 * 0.5 * 4/3) = 3/4
    //   pi = 0.5, mu = 0.6: (1.5 * 0.6)/(1 * 1.4) = 9/14
    //   pi = 0.1, mu = 0.6: 33/14 - 529/378 = 181/189
    #[test]
    fn closed_form_hand_values() {
        assert_close(ops_f1_closed(2.0 / 3.0, 0.5), 0.75, 1e-12);
        assert_close(ops_f1_closed(0.6, 0.5), 9.0 / 14.0, 1e-12);
        assert_close(ops_f1_closed(0.6, 0.1), 181.0 / 189.0, 1e-12);
    }

    #[test]
    fn closed_form_low_prevalence_outranks_balanced() {
        // The same nominal F1 is a much stronger showing on imbalanced data.
        assert!(ops_f1_closed(0.6, 0.1) > ops_f1_closed(0.6, 0.5));
    }

    #[test]
    fn closed_form_endpoints() {
        for pi in [0.1, 0.5, 0.9] {
            assert_eq!(ops_f1_closed(0.0, pi), 0.0);
            assert_eq!(ops_f1_closed(1.0, pi), 1.0);
            assert_eq!(ops_f1_closed(-0.5, pi), 0.0);
            assert_eq!(ops_f1_closed(1.5, pi), 1.0);
        }
    }

    #[test]
    fn closed_form_value_at_breakpoint() {
        // First branch at mu = 2*pi/(1+pi) simplifies to (1+pi)/2.
        for pi in [0.05, 0.1, 0.25, 0.5, 0.75, 0.9] {
            let breakpoint = 2.0 * pi / (1.0 + pi);
            assert_close(ops_f1_closed(breakpoint, pi), (1.0 + pi) / 2.0, 1e-12);
        }
    }

    #[test]
    fn closed_form_branches_join_continuously() {
        for pi in [0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95] {
            let breakpoint = 2.0 * pi / (1.0 + pi);
            let eps = 1e-9;
            let below = ops_f1_closed(breakpoint - eps, pi);
            let above = ops_f1_closed(breakpoint + eps, pi);
            assert!(
                (above - below).abs() < 1e-7,
                "jump at breakpoint for pi = {pi}: {below} vs {above}"
            );
        }
    }

    #[test]
    fn grid_matches_closed_form_for_f1() {
        let cfg = LabelingOpsConfig::default();
        for (mu, pi) in [(2.0 / 3.0, 0.5), (0.6, 0.1), (0.3, 0.5), (0.9, 0.25)] {
            let grid = ops_labeling_grid(LabelingMetricKind::F1, mu, pi, &cfg);
            assert_close(grid, ops_f1_closed(mu, pi), 1e-3);
        }
    }

    #[test]
    fn grid_recall_is_the_uniform_cdf() {
        // Recall = 1 - beta is uniform, so the o-value equals mu itself;
        // with the midpoint grid the count is exact at mu = 0.4.
        let cfg = LabelingOpsConfig::default();
        for pi in [0.1, 0.5] {
            let v = ops_labeling_grid(LabelingMetricKind::Recall, 0.4, pi, &cfg);
            assert_close(v, 0.4, 1e-3);
        }
    }

    #[test]
    fn grid_at_codomain_bounds() {
        let cfg = LabelingOpsConfig {
            grid_resolution: 200,
            ..LabelingOpsConfig::default()
        };
        // Nothing lies strictly below the lower bound.
        assert_eq!(
            ops_labeling_grid(LabelingMetricKind::Mcc, -1.0, 0.3, &cfg),
            0.0
        );
        // Everything lies strictly below a value past the upper bound.
        assert_eq!(
            ops_labeling_grid(LabelingMetricKind::Mcc, 1.5, 0.3, &cfg),
            1.0
        );
    }

    #[test]
    #[should_panic(expected = "grid resolution below 10")]
    fn grid_rejects_tiny_resolution() {
        let cfg = LabelingOpsConfig {
            grid_resolution: 5,
            ..LabelingOpsConfig::default()
        };
        ops_labeling_grid(LabelingMetricKind::F1, 0.5, 0.5, &cfg);
    }

    #[test]
    fn mc_matches_closed_form_within_three_sigma() {
        let cfg = LabelingOpsConfig::default();
        for (mu, pi) in [(2.0 / 3.0, 0.5), (0.6, 0.1), (0.45, 0.3)] {
            let p = ops_f1_closed(mu, pi);
            let se = (p * (1.0 - p) / cfg.mc_samples as f64).sqrt();
            let mc = ops_labeling_mc(LabelingMetricKind::F1, mu, pi, &cfg);
            assert_close(mc, p, 3.0 * se);
        }
    }

    #[test]
    fn mc_is_deterministic_given_seed() {
        let cfg = LabelingOpsConfig {
            mc_samples: 20_000,
            ..LabelingOpsConfig::default()
        };
        let a = ops_labeling_mc(LabelingMetricKind::Mcc, 0.2, 0.3, &cfg);
        let b = ops_labeling_mc(LabelingMetricKind::Mcc, 0.2, 0.3, &cfg);
        assert_eq!(a.to_bits(), b.to_bits());
        let other_seed = LabelingOpsConfig { seed: 1, ..cfg };
        let c = ops_labeling_mc(LabelingMetricKind::Mcc, 0.2, 0.3, &other_seed);
        assert!((a - c).abs() < 0.02, "seeds should agree statistically");
    }

    #[test]
    fn mc_outside_codomain() {
        let cfg = LabelingOpsConfig {
            mc_samples: 10_000,
            ..LabelingOpsConfig::default()
        };
        assert_eq!(ops_labeling_mc(LabelingMetricKind::F1, -0.1, 0.5, &cfg), 0.0);
        assert_eq!(ops_labeling_mc(LabelingMetricKind::F1, 1.5, 0.5, &cfg), 1.0);
    }

    #[test]
    fn shared_draws_make_affine_images_agree_exactly() {
        // M2 = 2*M1 + 0.25 with shared randomness: identical counts.
        let draws = uniform_error_draws(50_000, 9);
        let pi = 0.3;
        let recall = |alpha: f64, beta: f64| LabelingMetricKind::Recall.eval(pi, alpha, beta);
        let scaled = |alpha: f64, beta: f64| 2.0 * recall(alpha, beta) + 0.25;
        for mu in [0.1, 0.37, 0.62, 0.9] {
            let a = ops_mc_with_draws(recall, mu, &draws);
            let b = ops_mc_with_draws(scaled, 2.0 * mu + 0.25, &draws);
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn precision_and_lift_agree_on_shared_draws() {
        // Lift = precision / pi, so their o-values coincide after rescaling
        // the query value, even though the two formulas are evaluated
        // independently.
        let draws = uniform_error_draws(50_000, 11);
        for pi in [0.1, 0.3, 0.5] {
            let precision =
                |alpha: f64, beta: f64| LabelingMetricKind::Precision.eval(pi, alpha, beta);
            let lift = move |alpha: f64, beta: f64| {
                let x = pi * (1.0 - beta) + (1.0 - pi) * alpha;
                if x == 0.0 {
                    1.0 / pi // same convention as precision = 1, rescaled
                } else {
                    (1.0 - beta) / x
                }
            };
            for v in [0.2, 0.45, 0.7] {
                let a = ops_mc_with_draws(precision, v, &draws);
                let b = ops_mc_with_draws(lift, v / pi, &draws);
                assert_eq!(a.to_bits(), b.to_bits(), "pi = {pi}, v = {v}");
            }
        }
    }

    #[test]
    fn draw_stream_is_alpha_then_beta() {
        let draws = uniform_error_draws(3, 5);
        let mut rng = UnitRng::seed_from_u64(5);
        for &(alpha, beta) in &draws {
            assert_eq!(alpha.to_bits(), rng.next_unit().to_bits());
            assert_eq!(beta.to_bits(), rng.next_unit().to_bits());
        }
    }
}
