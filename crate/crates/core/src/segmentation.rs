//! Interval splitting: binary (midpoint), hierarchical (best sweep point per
//! level) and sequential (single left-to-right sweep) partitioning, plus the
//! conversion of a partition into per-segment spacings and counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::FunctionSpec;
use crate::error::{Error, Result};
use crate::spacing::{self, CountRule, SpacingResult};

/// Number of sweep candidates used when no sweep step is configured.
pub const DEFAULT_SWEEP_CANDIDATES: f64 = 1000.0;

/// Predicate deciding whether a split of a `kappa_p`-entry interval into
/// `k1 + k2` entries is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceptance {
    /// The split must save at least a fraction `omega`: `k1 + k2 < (1 - omega) * kappa_p`.
    #[default]
    Reduction,
    /// The split must shrink the footprint below `omega * kappa_p`.
    Literal,
}

impl Acceptance {
    pub fn accepts(self, k1: usize, k2: usize, kappa_p: usize, omega: f64) -> bool {
        let sum = (k1 + k2) as f64;
        match self {
            Acceptance::Reduction => sum < (1.0 - omega) * kappa_p as f64,
            Acceptance::Literal => sum < omega * kappa_p as f64,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Acceptance::Reduction => "reduction (k1+k2 < (1-omega)*kp)",
            Acceptance::Literal => "literal (k1+k2 < omega*kp)",
        }
    }
}

impl FromStr for Acceptance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduction" => Ok(Acceptance::Reduction),
            "literal" => Ok(Acceptance::Literal),
            _ => Err(Error::Argument(format!(
                "unknown acceptance predicate `{s}` (expected reduction|literal)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Binary,
    Hierarchical,
    Sequential,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Binary,
        Algorithm::Hierarchical,
        Algorithm::Sequential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Binary => "binary",
            Algorithm::Hierarchical => "hierarchical",
            Algorithm::Sequential => "sequential",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Algorithm::Binary),
            "hierarchical" => Ok(Algorithm::Hierarchical),
            "sequential" => Ok(Algorithm::Sequential),
            _ => Err(Error::Argument(format!(
                "unknown algorithm `{s}` (expected binary|hierarchical|sequential)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    /// Reduction threshold in `(0, 1]`.
    pub omega: f64,
    /// Sweep step; `None` means `(hi - lo) / 1000`.
    pub epsilon: Option<f64>,
    pub ea: f64,
    pub acceptance: Acceptance,
    /// Counting rule used when comparing candidate footprints. Plans are
    /// always sized with [`CountRule::Covering`].
    pub count_rule: CountRule,
}

impl SplitConfig {
    pub fn new(omega: f64, ea: f64) -> Self {
        SplitConfig {
            omega,
            epsilon: None,
            ea,
            acceptance: Acceptance::Reduction,
            count_rule: CountRule::Covering,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn with_acceptance(mut self, acceptance: Acceptance) -> Self {
        self.acceptance = acceptance;
        self
    }

    pub fn with_count_rule(mut self, rule: CountRule) -> Self {
        self.count_rule = rule;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega <= 1.0) {
            return Err(Error::Argument(format!(
                "reduction threshold must lie in (0, 1], got {}",
                self.omega
            )));
        }
        spacing::check_error_target(self.ea)
    }

    fn sweep_step(&self, lo: f64, hi: f64) -> Result<f64> {
        let eps = self.epsilon.unwrap_or((hi - lo) / DEFAULT_SWEEP_CANDIDATES);
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::Argument(format!(
                "sweep step must be positive, got {eps}"
            )));
        }
        if eps >= hi - lo {
            return Err(Error::Argument(format!(
                "sweep step {eps} is not smaller than the interval length {}",
                hi - lo
            )));
        }
        Ok(eps)
    }
}

/// Strictly increasing segment boundaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<f64>);

impl Partition {
    pub fn new(boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::Argument(
                "a partition needs at least two boundaries".into(),
            ));
        }
        if boundaries.iter().any(|b| !b.is_finite()) {
            return Err(Error::Argument(
                "partition boundaries must be finite".into(),
            ));
        }
        if boundaries.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Argument(format!(
                "partition boundaries are not strictly increasing: {boundaries:?}"
            )));
        }
        Ok(Partition(boundaries))
    }

    pub fn whole(lo: f64, hi: f64) -> Result<Self> {
        Partition::new(vec![lo, hi])
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.0
    }

    pub fn segment_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn lo(&self) -> f64 {
        self.0[0]
    }

    pub fn hi(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Per-segment spacing and breakpoint count for a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentPlan {
    pub partition: Partition,
    pub ea: f64,
    pub spacings: Vec<f64>,
    pub counts: Vec<usize>,
    pub max_f2: Vec<f64>,
    pub total_footprint: usize,
}

/// Sizes every sub-interval of `partition` with its own uniform spacing.
pub fn plan(f: &FunctionSpec, ea: f64, partition: &Partition) -> Result<SegmentPlan> {
    let mut spacings = Vec::with_capacity(partition.segment_count());
    let mut counts = Vec::with_capacity(partition.segment_count());
    let mut max_f2 = Vec::with_capacity(partition.segment_count());
    for (lo, hi) in partition.segments() {
        let s = spacing::uniform_spacing(f, ea, lo, hi)?;
        spacings.push(s.delta);
        counts.push(s.kappa);
        max_f2.push(s.max_f2);
    }
    Ok(SegmentPlan {
        partition: partition.clone(),
        ea,
        spacings,
        total_footprint: counts.iter().sum(),
        counts,
        max_f2,
    })
}

/// Runs one of the splitting algorithms.
pub fn split(
    algorithm: Algorithm,
    f: &FunctionSpec,
    cfg: &SplitConfig,
    lo: f64,
    hi: f64,
) -> Result<Partition> {
    match algorithm {
        Algorithm::Binary => binary_split(f, cfg, lo, hi),
        Algorithm::Hierarchical => hierarchical_split(f, cfg, lo, hi),
        Algorithm::Sequential => sequential_split(f, cfg, lo, hi),
    }
}

/// Shared per-interval sizing for the splitters.
struct Sizer<'a> {
    f: &'a FunctionSpec,
    cfg: &'a SplitConfig,
}

impl Sizer<'_> {
    fn size(&self, lo: f64, hi: f64) -> Result<SpacingResult> {
        spacing::uniform_spacing_with(self.f, self.cfg.ea, lo, hi, self.cfg.count_rule)
    }

    fn kappa(&self, lo: f64, hi: f64) -> Result<usize> {
        Ok(self.size(lo, hi)?.kappa)
    }

    fn accepts(&self, k1: usize, k2: usize, kappa_p: usize) -> bool {
        self.cfg.acceptance.accepts(k1, k2, kappa_p, self.cfg.omega)
    }
}

fn too_narrow(lo: f64, hi: f64) -> bool {
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    hi - lo < 4.0 * f64::EPSILON * scale
}

/// Recursive midpoint splitting.
pub fn binary_split(f: &FunctionSpec, cfg: &SplitConfig, lo: f64, hi: f64) -> Result<Partition> {
    cfg.validate()?;
    f.check_interval(lo, hi)?;
    let sizer = Sizer { f, cfg };
    let mut out = vec![lo];
    binary_rec(&sizer, lo, hi, &mut out)?;
    Partition::new(out)
}

/// Appends the boundaries of `(lo, hi]` to `out`, left to right.
fn binary_rec(sizer: &Sizer<'_>, lo: f64, hi: f64, out: &mut Vec<f64>) -> Result<()> {
    if !too_narrow(lo, hi) {
        let mid = lo + (hi - lo) / 2.0;
        if mid > lo && mid < hi {
            let whole = sizer.size(lo, hi)?;
            let left = sizer.size(lo, mid)?;
            let right = sizer.size(mid, hi)?;
            if left.delta != right.delta && sizer.accepts(left.kappa, right.kappa, whole.kappa) {
                binary_rec(sizer, lo, mid, out)?;
                return binary_rec(sizer, mid, hi, out);
            }
        }
    }
    out.push(hi);
    Ok(())
}

/// Recursive splitting at the sweep point with the smallest combined
/// footprint.
pub fn hierarchical_split(
    f: &FunctionSpec,
    cfg: &SplitConfig,
    lo: f64,
    hi: f64,
) -> Result<Partition> {
    cfg.validate()?;
    f.check_interval(lo, hi)?;
    let eps = cfg.sweep_step(lo, hi)?;
    let sizer = Sizer { f, cfg };
    let mut out = vec![lo];
    hierarchical_rec(&sizer, eps, lo, hi, &mut out)?;
    Partition::new(out)
}

/// Best split point of `[lo, hi]` on the grid `lo + j*eps`, `1 <= j < j_max`,
/// as `(sp, k_left, k_right)`. Ties go to the smallest `j`.
fn best_sweep_point(
    sizer: &Sizer<'_>,
    eps: f64,
    lo: f64,
    hi: f64,
) -> Result<Option<(f64, usize, usize)>> {
    let j_max = ((hi - lo) / eps).floor() as usize;
    let mut best: Option<(f64, usize, usize)> = None;
    for j in 1..j_max {
        let sp = lo + j as f64 * eps;
        if !(sp > lo && sp < hi) {
            continue;
        }
        let k1 = sizer.kappa(lo, sp)?;
        let k2 = sizer.kappa(sp, hi)?;
        if best.is_none_or(|(_, b1, b2)| k1 + k2 < b1 + b2) {
            best = Some((sp, k1, k2));
        }
    }
    Ok(best)
}

fn hierarchical_rec(
    sizer: &Sizer<'_>,
    eps: f64,
    lo: f64,
    hi: f64,
    out: &mut Vec<f64>,
) -> Result<()> {
    if let Some((sp, k1, k2)) = best_sweep_point(sizer, eps, lo, hi)? {
        let kappa_p = sizer.kappa(lo, hi)?;
        if sizer.accepts(k1, k2, kappa_p) {
            hierarchical_rec(sizer, eps, lo, sp, out)?;
            return hierarchical_rec(sizer, eps, sp, hi, out);
        }
    }
    out.push(hi);
    Ok(())
}

/// The first accepted split of the hierarchical algorithm, if any, as
/// `(sp, k_left, k_right)`.
pub fn hierarchical_first_split(
    f: &FunctionSpec,
    cfg: &SplitConfig,
    lo: f64,
    hi: f64,
) -> Result<Option<(f64, usize, usize)>> {
    cfg.validate()?;
    f.check_interval(lo, hi)?;
    let eps = cfg.sweep_step(lo, hi)?;
    let sizer = Sizer { f, cfg };
    let Some((sp, k1, k2)) = best_sweep_point(&sizer, eps, lo, hi)? else {
        return Ok(None);
    };
    Ok(sizer
        .accepts(k1, k2, sizer.kappa(lo, hi)?)
        .then_some((sp, k1, k2)))
}

/// Single left-to-right sweep. Each candidate `sp` splits the not yet
/// partitioned tail `[x_p, hi]`; accepted candidates become boundaries.
pub fn sequential_split(
    f: &FunctionSpec,
    cfg: &SplitConfig,
    lo: f64,
    hi: f64,
) -> Result<Partition> {
    Ok(sequential_trace(f, cfg, lo, hi)?.0)
}

/// Accepted sweep candidates as `(sp, k_left, k_right)`.
pub type SweepTrace = Vec<(f64, usize, usize)>;

/// [`sequential_split`] that also returns the accepted candidates.
pub fn sequential_trace(
    f: &FunctionSpec,
    cfg: &SplitConfig,
    lo: f64,
    hi: f64,
) -> Result<(Partition, SweepTrace)> {
    cfg.validate()?;
    f.check_interval(lo, hi)?;
    let eps = cfg.sweep_step(lo, hi)?;
    let sizer = Sizer { f, cfg };

    let mut out = vec![lo];
    let mut trace = Vec::new();
    let mut x_p = lo;
    let mut kappa_p = sizer.kappa(lo, hi)?;
    let i_max = ((hi - lo) / eps).floor() as usize;
    for i in 1..=i_max {
        let sp = lo + i as f64 * eps;
        if !(sp > x_p && sp < hi) {
            continue;
        }
        let k1 = sizer.kappa(x_p, sp)?;
        let k2 = sizer.kappa(sp, hi)?;
        if sizer.accepts(k1, k2, kappa_p) {
            out.push(sp);
            trace.push((sp, k1, k2));
            x_p = sp;
            kappa_p = k2;
        }
    }
    out.push(hi);
    Ok((Partition::new(out)?, trace))
}
