//! Uniform breakpoint spacing under a maximum absolute error, and the
//! footprint metrics built on it.

use serde::{Deserialize, Serialize};

use crate::catalog::FunctionSpec;
use crate::error::{Error, Result};

/// Worst-case linear interpolation error between breakpoints `delta` apart
/// when `|f''| <= max_f2`.
pub fn segment_error_bound(delta: f64, max_f2: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Argument(format!(
            "spacing must be positive, got {delta}"
        )));
    }
    if !(max_f2 >= 0.0) {
        return Err(Error::Argument(format!(
            "curvature bound must be non-negative, got {max_f2}"
        )));
    }
    Ok(delta * delta * max_f2 / 8.0)
}

/// How many breakpoints a uniform grid needs to cover an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRule {
    /// `ceil(len / delta) + 1`: the last breakpoint always reaches the upper
    /// end of the interval.
    #[default]
    Covering,
    /// `floor(len / delta) + 1`: breakpoints at `lo + m*delta <= hi` only.
    /// Undercounts by one whenever the grid does not land on `hi`; only
    /// useful as a search-time footprint estimate.
    Floor,
}

impl CountRule {
    pub fn count(self, delta: f64, len: f64) -> usize {
        let ratio = len / delta;
        let n = match self {
            CountRule::Covering => ratio.ceil(),
            CountRule::Floor => ratio.floor(),
        };
        (n as usize + 1).max(2)
    }

    pub fn name(self) -> &'static str {
        match self {
            CountRule::Covering => "covering",
            CountRule::Floor => "floor",
        }
    }
}

/// Breakpoint count for a uniform grid of spacing `delta` over `[lo, hi]`.
pub fn breakpoint_count(delta: f64, lo: f64, hi: f64) -> usize {
    CountRule::Covering.count(delta, hi - lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingResult {
    pub delta: f64,
    pub kappa: usize,
    pub max_f2: f64,
}

/// Largest uniform spacing meeting `ea` on `[lo, hi]`.
pub fn uniform_spacing(f: &FunctionSpec, ea: f64, lo: f64, hi: f64) -> Result<SpacingResult> {
    uniform_spacing_with(f, ea, lo, hi, CountRule::Covering)
}

pub fn uniform_spacing_with(
    f: &FunctionSpec,
    ea: f64,
    lo: f64,
    hi: f64,
    rule: CountRule,
) -> Result<SpacingResult> {
    check_error_target(ea)?;
    let max_f2 = f.max_abs_second_derivative(lo, hi)?;
    let len = hi - lo;
    let delta = if max_f2 > 0.0 {
        (8.0 * ea / max_f2).sqrt().min(len)
    } else {
        len
    };
    Ok(SpacingResult {
        delta,
        kappa: rule.count(delta, len),
        max_f2,
    })
}

pub(crate) fn check_error_target(ea: f64) -> Result<()> {
    if ea > 0.0 && ea.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "maximum absolute error must be positive and finite, got {ea}"
        )))
    }
}

/// Relative footprint saving of a partitioned table, in percent.
pub fn footprint_reduction(mf_ref: usize, mf_part: usize) -> f64 {
    assert!(mf_ref > 0, "reference footprint must be positive");
    (mf_ref as f64 - mf_part as f64) / mf_ref as f64 * 100.0
}
