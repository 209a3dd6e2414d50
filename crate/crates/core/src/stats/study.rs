//! Mean footprint-reduction sweeps over seeded random sub-interval
//! populations.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ttest::{t_test_two_sample, SampleGroup, TTestResult, Tail};
use crate::catalog::FunctionSpec;
use crate::error::{Error, Result};
use crate::segmentation::{plan, split, Acceptance, Algorithm, Partition, SplitConfig};
use crate::spacing::{self, footprint_reduction, CountRule};

/// Random draws allowed per interval before giving up.
const MAX_REDRAWS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub function: FunctionSpec,
    pub lo: f64,
    pub hi: f64,
    pub population_size: usize,
    pub omega_grid: Vec<f64>,
    pub ea: f64,
    /// Sweep step as a fraction of each sub-interval's length.
    pub epsilon_fraction: f64,
    /// Shortest accepted sub-interval as a fraction of `hi - lo`.
    pub min_length_fraction: f64,
    pub acceptance: Acceptance,
    /// Footprint estimate used while searching for split points.
    pub count_rule: CountRule,
    pub seed: u64,
}

impl StudyConfig {
    /// 100 intervals, thresholds 0.01..=0.30.
    pub fn new(function: FunctionSpec, lo: f64, hi: f64, ea: f64, seed: u64) -> Self {
        StudyConfig {
            function,
            lo,
            hi,
            population_size: 100,
            omega_grid: omega_range(0.01, 0.30, 0.01),
            ea,
            epsilon_fraction: 1e-3,
            min_length_fraction: 0.01,
            acceptance: Acceptance::Reduction,
            count_rule: CountRule::Covering,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::Argument(format!(
                "study interval [{}, {}) is empty or not finite",
                self.lo, self.hi
            )));
        }
        if self.population_size < 2 {
            return Err(Error::Argument(format!(
                "population size must be at least 2, got {}",
                self.population_size
            )));
        }
        if self.omega_grid.is_empty() || self.omega_grid.iter().any(|w| !(*w > 0.0 && *w <= 1.0)) {
            return Err(Error::Argument(
                "every reduction threshold must lie in (0, 1]".into(),
            ));
        }
        if !(self.epsilon_fraction > 0.0 && self.epsilon_fraction < 1.0) {
            return Err(Error::Argument(format!(
                "sweep step fraction must lie in (0, 1), got {}",
                self.epsilon_fraction
            )));
        }
        if !(self.min_length_fraction > 0.0 && self.min_length_fraction <= 1.0) {
            return Err(Error::Argument(format!(
                "minimum length fraction must lie in (0, 1], got {}",
                self.min_length_fraction
            )));
        }
        spacing::check_error_target(self.ea)?;
        self.function.check_interval(self.lo, self.hi)
    }
}

/// `start, start + step, ...` up to `end` inclusive, without accumulated drift.
pub fn omega_range(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|k| ((start + k as f64 * step) * 1e9).round() / 1e9)
        .collect()
}

/// Seeded population of sub-intervals `[a, b)` of the configured interval.
pub fn draw_intervals(cfg: &StudyConfig) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let min_len = cfg.min_length_fraction * (cfg.hi - cfg.lo);
    let mut out = Vec::with_capacity(cfg.population_size);
    for k in 0..cfg.population_size {
        let mut drawn = None;
        for _ in 0..MAX_REDRAWS {
            let u: f64 = rng.gen_range(cfg.lo..cfg.hi);
            let v: f64 = rng.gen_range(cfg.lo..cfg.hi);
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if b - a >= min_len && cfg.function.check_interval(a, b).is_ok() {
                drawn = Some((a, b));
                break;
            }
        }
        out.push(drawn.ok_or_else(|| {
            Error::Argument(format!(
                "could not draw interval {k} of length >= {min_len} in [{}, {})",
                cfg.lo, cfg.hi
            ))
        })?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyResult {
    pub function: String,
    pub omega_grid: Vec<f64>,
    pub intervals: Vec<(f64, f64)>,
    /// Binary, hierarchical, sequential; one mean reduction per threshold.
    pub groups: Vec<SampleGroup>,
    /// Mean number of sub-intervals, same layout as `groups`.
    pub mean_segments: Vec<Vec<f64>>,
}

/// Per-interval outcome: `[algorithm][omega] -> (reduction %, segments)`.
type IntervalRow = Vec<Vec<(f64, usize)>>;

fn evaluate_interval(cfg: &StudyConfig, a: f64, b: f64) -> Result<IntervalRow> {
    let f = &cfg.function;
    let reference = plan(f, cfg.ea, &Partition::whole(a, b)?)?.total_footprint;
    let eps = (b - a) * cfg.epsilon_fraction;
    Algorithm::ALL
        .iter()
        .map(|&alg| {
            cfg.omega_grid
                .iter()
                .map(|&omega| {
                    let sc = SplitConfig::new(omega, cfg.ea)
                        .with_epsilon(eps)
                        .with_acceptance(cfg.acceptance)
                        .with_count_rule(cfg.count_rule);
                    let p = split(alg, f, &sc, a, b)?;
                    let total = plan(f, cfg.ea, &p)?.total_footprint;
                    Ok((footprint_reduction(reference, total), p.segment_count()))
                })
                .collect()
        })
        .collect()
}

pub fn mean_reduction_study(cfg: &StudyConfig) -> Result<StudyResult> {
    let intervals = draw_intervals(cfg)?;
    let rows: Vec<IntervalRow> = intervals
        .par_iter()
        .map(|&(a, b)| evaluate_interval(cfg, a, b))
        .collect::<Result<_>>()?;

    let n = rows.len() as f64;
    let mut groups = Vec::with_capacity(3);
    let mut mean_segments = Vec::with_capacity(3);
    for (ai, &alg) in Algorithm::ALL.iter().enumerate() {
        let mut red = Vec::with_capacity(cfg.omega_grid.len());
        let mut seg = Vec::with_capacity(cfg.omega_grid.len());
        for wi in 0..cfg.omega_grid.len() {
            // Sums run in interval order so reruns are bit-identical.
            let (mut r, mut s) = (0.0, 0.0);
            for row in &rows {
                r += row[ai][wi].0;
                s += row[ai][wi].1 as f64;
            }
            red.push(r / n);
            seg.push(s / n);
        }
        groups.push(SampleGroup {
            algorithm: alg,
            samples: red,
        });
        mean_segments.push(seg);
    }
    Ok(StudyResult {
        function: cfg.function.id().to_string(),
        omega_grid: cfg.omega_grid.clone(),
        intervals,
        groups,
        mean_segments,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseTest {
    pub g1: Algorithm,
    pub g2: Algorithm,
    pub right: TTestResult,
    pub left: TTestResult,
    /// `g2` yields significantly larger reductions than `g1`.
    pub g2_outperforms: bool,
}

/// Right- and left-tailed tests for (binary, hierarchical),
/// (binary, sequential) and (hierarchical, sequential).
pub fn pairwise_tests(result: &StudyResult, alpha: f64) -> Result<Vec<PairwiseTest>> {
    let mut out = Vec::new();
    for i in 0..result.groups.len() {
        for j in i + 1..result.groups.len() {
            let (g1, g2) = (&result.groups[i], &result.groups[j]);
            let right = t_test_two_sample(&g1.samples, &g2.samples, Tail::Right, alpha)?;
            let left = t_test_two_sample(&g1.samples, &g2.samples, Tail::Left, alpha)?;
            out.push(PairwiseTest {
                g1: g1.algorithm,
                g2: g2.algorithm,
                right,
                left,
                g2_outperforms: !right.reject_h0 && left.reject_h0,
            });
        }
    }
    Ok(out)
}

impl StudyResult {
    /// `omega,algorithm,mean_reduction_pct,mean_segments`
    pub fn to_csv(&self) -> String {
        let mut s = String::from("omega,algorithm,mean_reduction_pct,mean_segments\n");
        for (wi, omega) in self.omega_grid.iter().enumerate() {
            for (g, segs) in self.groups.iter().zip(&self.mean_segments) {
                let _ = writeln!(
                    s,
                    "{omega},{},{:.6},{:.4}",
                    g.algorithm, g.samples[wi], segs[wi]
                );
            }
        }
        s
    }
}

/// One row per pair and tail; `reject` uses the 0/1 convention.
pub fn tests_to_csv(tests: &[PairwiseTest]) -> String {
    let mut s = String::from(
        "g1,g2,tail,t_statistic,degrees_of_freedom,critical_value,p_value,alpha,reject,variance\n",
    );
    for t in tests {
        for r in [&t.right, &t.left] {
            let _ = writeln!(
                s,
                "{},{},{},{:.6},{},{:.6},{:.6e},{},{},pooled",
                t.g1,
                t.g2,
                r.tail,
                r.t_statistic,
                r.degrees_of_freedom,
                r.critical_value,
                r.p_value,
                r.alpha,
                u8::from(r.reject_h0)
            );
        }
    }
    s
}
