//! Pooled-variance two-sample Student t-test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::segmentation::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// H0: mu1 = mu2.
    Two,
    /// H0: mu1 <= mu2.
    Right,
    /// H0: mu1 >= mu2.
    Left,
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Two => "two",
            Tail::Right => "right",
            Tail::Left => "left",
        })
    }
}

impl FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two" => Ok(Tail::Two),
            "right" => Ok(Tail::Right),
            "left" => Ok(Tail::Left),
            _ => Err(Error::Argument(format!(
                "unknown tail `{s}` (expected two|right|left)"
            ))),
        }
    }
}

/// Mean footprint reductions of one algorithm, one sample per threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleGroup {
    pub algorithm: Algorithm,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub tail: Tail,
    pub alpha: f64,
    /// `+-inf` when both groups have zero variance and different means.
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    pub critical_value: f64,
    pub p_value: f64,
    pub reject_h0: bool,
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, ss)
}

pub fn t_test_two_sample(g1: &[f64], g2: &[f64], tail: Tail, alpha: f64) -> Result<TTestResult> {
    if g1.is_empty() || g2.is_empty() {
        return Err(Error::Argument(
            "both sample groups must be non-empty".into(),
        ));
    }
    if g1.len() + g2.len() < 3 {
        return Err(Error::Argument(
            "at least three samples in total are needed for a pooled variance".into(),
        ));
    }
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::Argument(format!(
            "significance level must lie in (0, 0.5], got {alpha}"
        )));
    }
    if g1.iter().chain(g2).any(|x| !x.is_finite()) {
        return Err(Error::Argument("samples must be finite".into()));
    }

    let (n1, n2) = (g1.len() as f64, g2.len() as f64);
    let (m1, ss1) = mean_var(g1);
    let (m2, ss2) = mean_var(g2);
    let df = n1 + n2 - 2.0;
    let pooled = (ss1 + ss2) / df;
    let se = (pooled * (1.0 / n1 + 1.0 / n2)).sqrt();
    let diff = m1 - m2;
    let t = if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    };

    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| {
        Error::Argument(format!("t distribution with {df} degrees of freedom: {e}"))
    })?;
    let (critical_value, p_value, reject_h0) = match tail {
        Tail::Two => {
            let c = dist.inverse_cdf(1.0 - alpha / 2.0);
            (c, 2.0 * dist.sf(t.abs()), t.abs() > c)
        }
        Tail::Right => {
            let c = dist.inverse_cdf(1.0 - alpha);
            (c, dist.sf(t), t > c)
        }
        Tail::Left => {
            let c = dist.inverse_cdf(1.0 - alpha);
            (c, dist.cdf(t), t < -c)
        }
    };
    Ok(TTestResult {
        tail,
        alpha,
        t_statistic: t,
        degrees_of_freedom: df,
        critical_value,
        p_value,
        reject_h0,
    })
}

/// `g2` outperforms `g1`: the right-tailed test keeps H0 and the left-tailed
/// test rejects it.
pub fn outperforms(g1: &[f64], g2: &[f64], alpha: f64) -> Result<bool> {
    let right = t_test_two_sample(g1, g2, Tail::Right, alpha)?;
    let left = t_test_two_sample(g1, g2, Tail::Left, alpha)?;
    Ok(!right.reject_h0 && left.reject_h0)
}
