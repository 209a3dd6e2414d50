//! Evaluable function definitions with exact second derivatives.
//!
//! Catalog entries carry closed-form `f''` together with the interior
//! critical points of `|f''|`, which makes the curvature bound over an
//! interval an exact endpoint-and-hint comparison. User-supplied functions
//! without hints fall back to dense sampling plus golden-section refinement.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Number of grid points used when no extrema hint is available.
pub const DEFAULT_SAMPLE_POINTS: usize = 4097;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real interval with independently open or closed ends. Infinite ends are
/// always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Domain {
    pub const REAL_LINE: Domain = Domain {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_open: true,
        hi_open: true,
    };

    pub fn open(lo: f64, hi: f64) -> Self {
        Domain {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Domain {
            lo,
            hi,
            lo_open: !lo.is_finite(),
            hi_open: !hi.is_finite(),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_open {
            x > self.lo
        } else {
            x >= self.lo
        };
        let below = if self.hi_open {
            x < self.hi
        } else {
            x <= self.hi
        };
        above && below
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// A function to approximate, together with its second derivative.
#[derive(Clone)]
pub struct FunctionSpec {
    id: String,
    domain: Domain,
    f: RealFn,
    f2: RealFn,
    f2_extrema_hint: Option<Vec<f64>>,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("f2_extrema_hint", &self.f2_extrema_hint)
            .finish_non_exhaustive()
    }
}

impl FunctionSpec {
    /// Builds a user-defined function. Without a hint, curvature bounds are
    /// found by sampling.
    pub fn new<F, F2>(id: impl Into<String>, domain: Domain, f: F, f2: F2) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        FunctionSpec {
            id: id.into(),
            domain,
            f: Arc::new(f),
            f2: Arc::new(f2),
            f2_extrema_hint: None,
        }
    }

    /// Declares the complete set of interior critical points of `|f''|`.
    /// An empty list means `|f''|` is monotone on every sub-interval free of
    /// sign changes, so endpoints suffice.
    pub fn with_extrema_hint(mut self, points: Vec<f64>) -> Self {
        self.f2_extrema_hint = Some(points);
        self
    }

    /// `f(x) = slope * x + intercept` on the whole real line.
    pub fn affine(slope: f64, intercept: f64) -> Self {
        FunctionSpec::new(
            "affine",
            Domain::REAL_LINE,
            move |x| slope * x + intercept,
            |_| 0.0,
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn extrema_hint(&self) -> Option<&[f64]> {
        self.f2_extrema_hint.as_deref()
    }

    /// Evaluates `f` without a domain check.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Evaluates `f''` without a domain check.
    #[inline]
    pub fn second_derivative(&self, x: f64) -> f64 {
        (self.f2)(x)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.value(x))
    }

    pub(crate) fn check_point(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} is outside the domain {} of {}",
                x, self.domain, self.id
            )))
        }
    }

    pub(crate) fn check_interval(&self, lo: f64, hi: f64) -> Result<()> {
        if !(lo < hi) {
            return Err(Error::Argument(format!("empty interval [{lo}, {hi}]")));
        }
        if !self.domain.contains(lo) || !self.domain.contains(hi) {
            return Err(Error::Domain(format!(
                "interval [{lo}, {hi}] is not contained in the domain {} of {}",
                self.domain, self.id
            )));
        }
        Ok(())
    }

    /// Upper bound of `max |f''(x)|` over the closed interval `[lo, hi]`.
    pub fn max_abs_second_derivative(&self, lo: f64, hi: f64) -> Result<f64> {
        self.check_interval(lo, hi)?;
        Ok(match &self.f2_extrema_hint {
            Some(hint) => self.max_from_hint(hint, lo, hi),
            None => self.max_by_sampling(lo, hi, DEFAULT_SAMPLE_POINTS),
        })
    }

    fn max_from_hint(&self, hint: &[f64], lo: f64, hi: f64) -> f64 {
        let f2 = |x: f64| self.second_derivative(x).abs();
        hint.iter()
            .copied()
            .filter(|&c| c > lo && c < hi)
            .map(f2)
            .fold(f2(lo).max(f2(hi)), f64::max)
    }

    /// Dense grid search followed by golden-section refinement around the
    /// best grid point.
    pub fn max_by_sampling(&self, lo: f64, hi: f64, points: usize) -> f64 {
        let points = points.max(2);
        let f2 = |x: f64| self.second_derivative(x).abs();
        let step = (hi - lo) / (points - 1) as f64;
        let at = |k: usize| {
            if k == points - 1 {
                hi
            } else {
                lo + k as f64 * step
            }
        };

        let (mut best_k, mut best) = (0, f2(lo));
        for k in 1..points {
            let v = f2(at(k));
            if v > best {
                best = v;
                best_k = k;
            }
        }

        let a = at(best_k.saturating_sub(1));
        let b = at((best_k + 1).min(points - 1));
        best.max(golden_section_max(f2, a, b))
    }
}

/// Maximizes a unimodal function on `[a, b]`.
fn golden_section_max(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    let mut best = gc.max(gd);
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
        best = best.max(gc).max(gd);
    }
    best
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn sigmoid_f2(x: f64) -> f64 {
    let s = sigmoid(x);
    s * (1.0 - s) * (1.0 - 2.0 * s)
}

/// Points where `|σ''|` peaks: `±ln(2 + √3)`.
fn logistic_peaks() -> Vec<f64> {
    let p = (2.0 + 3f64.sqrt()).ln();
    vec![-p, p]
}

pub fn tan() -> FunctionSpec {
    FunctionSpec::new("tan", Domain::open(-FRAC_PI_2, FRAC_PI_2), f64::tan, |x| {
        let t = x.tan();
        2.0 * t * (1.0 + t * t)
    })
    .with_extrema_hint(vec![])
}

pub fn log() -> FunctionSpec {
    FunctionSpec::new("log", Domain::open(0.0, f64::INFINITY), f64::ln, |x| {
        -1.0 / (x * x)
    })
    .with_extrema_hint(vec![])
}

pub fn exp() -> FunctionSpec {
    // e^x overflows past ln(f64::MAX) ~ 709.78.
    FunctionSpec::new(
        "exp",
        Domain::closed(f64::NEG_INFINITY, 709.0),
        f64::exp,
        f64::exp,
    )
    .with_extrema_hint(vec![])
}

pub fn tanh() -> FunctionSpec {
    // |f''| = 2|tanh|·sech² peaks where tanh² = 1/3.
    let p = (1.0 / 3f64.sqrt()).atanh();
    FunctionSpec::new("tanh", Domain::REAL_LINE, f64::tanh, |x| {
        let t = x.tanh();
        -2.0 * t * (1.0 - t * t)
    })
    .with_extrema_hint(vec![-p, p])
}

/// `e^(-x²/2)`.
pub fn gauss() -> FunctionSpec {
    let r3 = 3f64.sqrt();
    FunctionSpec::new(
        "gauss",
        Domain::REAL_LINE,
        |x| (-0.5 * x * x).exp(),
        |x| (x * x - 1.0) * (-0.5 * x * x).exp(),
    )
    .with_extrema_hint(vec![-r3, 0.0, r3])
}

/// `1 / (1 + e^(-x))`.
pub fn logistic() -> FunctionSpec {
    FunctionSpec::new("logistic", Domain::REAL_LINE, sigmoid, sigmoid_f2)
        .with_extrema_hint(logistic_peaks())
}

/// `1 / (1 + e^x)`, the mirrored logistic.
pub fn logistic_neg() -> FunctionSpec {
    FunctionSpec::new(
        "logistic_neg",
        Domain::REAL_LINE,
        |x| sigmoid(-x),
        |x| sigmoid_f2(-x),
    )
    .with_extrema_hint(logistic_peaks())
}

/// Identifiers accepted by [`lookup`].
pub const CATALOG_IDS: [&str; 7] = [
    "tan",
    "log",
    "exp",
    "tanh",
    "gauss",
    "logistic",
    "logistic_neg",
];

/// Resolves a catalog entry by its string id.
pub fn lookup(id: &str) -> Result<FunctionSpec> {
    Ok(match id {
        "tan" => tan(),
        "log" => log(),
        "exp" => exp(),
        "tanh" => tanh(),
        "gauss" => gauss(),
        "logistic" => logistic(),
        "logistic_neg" => logistic_neg(),
        _ => {
            return Err(Error::Argument(format!(
                "unknown function id `{id}` (expected one of {})",
                CATALOG_IDS.join(", ")
            )))
        }
    })
}

/// Every catalog entry, in [`CATALOG_IDS`] order.
pub fn all() -> Vec<FunctionSpec> {
    CATALOG_IDS.iter().map(|id| lookup(id).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_f2(f: &FunctionSpec, x: f64) -> f64 {
        let h = 1e-4 * x.abs().max(1.0);
        (f.value(x + h) - 2.0 * f.value(x) + f.value(x - h)) / (h * h)
    }

    fn brute_max(f: &FunctionSpec, lo: f64, hi: f64, n: usize) -> f64 {
        (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .map(|x| f.second_derivative(x).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn eval_identities() {
        assert_eq!(log().eval(1.0).unwrap(), 0.0);
        assert_eq!(tanh().eval(0.0).unwrap(), 0.0);
        // e^5 = 148.4131591025766034... (independent series evaluation)
        let series: f64 = {
            let mut term = 1.0f64;
            let mut sum = 1.0f64;
            for k in 1..60 {
                term *= 5.0 / k as f64;
                sum += term;
            }
            sum
        };
        let e5 = exp().eval(5.0).unwrap();
        assert!((e5 - 148.413_159_102_576_6).abs() < 1e-12);
        assert!((e5 - series).abs() < 1e-11);
    }

    #[test]
    fn eval_outside_domain_is_rejected() {
        assert!(matches!(log().eval(0.0), Err(Error::Domain(_))));
        assert!(matches!(log().eval(-1.0), Err(Error::Domain(_))));
        assert!(matches!(tan().eval(2.0), Err(Error::Domain(_))));
        assert!(matches!(exp().eval(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn second_derivatives_match_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ranges = [
            ("tan", -1.4, 1.4),
            ("log", 0.2, 20.0),
            ("exp", -5.0, 5.0),
            ("tanh", -4.0, 4.0),
            ("gauss", -5.0, 5.0),
            ("logistic", -8.0, 8.0),
            ("logistic_neg", -8.0, 8.0),
        ];
        for (id, lo, hi) in ranges {
            let f = lookup(id).unwrap();
            for _ in 0..200 {
                let x: f64 = rng.gen_range(lo..hi);
                let exact = f.second_derivative(x);
                let approx = central_f2(&f, x);
                // central differences carry ~1e-8 absolute rounding noise
                assert!(
                    (exact - approx).abs() <= 1e-5 * exact.abs() + 1e-7,
                    "{id} at {x}: {exact} vs {approx}"
                );
            }
        }
    }

    #[test]
    fn hints_are_critical_points() {
        for f in all() {
            for &c in f.extrema_hint().unwrap() {
                let h = 1e-5;
                let d3 = (f.second_derivative(c + h) - f.second_derivative(c - h)) / (2.0 * h);
                assert!(d3.abs() < 1e-6, "{} at {c}: f''' = {d3}", f.id());
            }
        }
    }

    #[test]
    fn log_curvature_peaks_at_left_end() {
        let m = log().max_abs_second_derivative(0.625, 15.625).unwrap();
        assert!((m - 2.56).abs() < 1e-12);
        let oracle = brute_max(&log(), 0.625, 15.625, 100_001);
        assert!((m - oracle).abs() / oracle < 1e-9);
    }

    #[test]
    fn tan_curvature_at_left_end() {
        let m = tan().max_abs_second_derivative(-1.5, 0.0).unwrap();
        let oracle = brute_max(&tan(), -1.5, 0.0, 100_001);
        assert!((m - oracle).abs() / oracle < 1e-9);
        assert!((m - 5636.3).abs() < 1.0, "{m}");
    }

    #[test]
    fn affine_has_no_curvature() {
        let f = FunctionSpec::affine(1.0, 0.0);
        assert_eq!(f.max_abs_second_derivative(-3.0, 7.0).unwrap(), 0.0);
    }

    #[test]
    fn sampling_fallback_finds_interior_peak() {
        // Same function as the catalog gauss, stripped of its hint.
        let g = gauss();
        let f = FunctionSpec::new(
            "gauss_nohint",
            Domain::REAL_LINE,
            move |x| g.value(x),
            |x| (x * x - 1.0) * (-0.5 * x * x).exp(),
        );
        let m = f.max_abs_second_derivative(1.2, 4.0).unwrap();
        let exact = 2.0 * (-1.5f64).exp();
        assert!(m >= exact * (1.0 - 1e-9), "{m} vs {exact}");
        assert!(m <= exact * (1.0 + 1e-9));
    }

    #[test]
    fn interval_errors() {
        assert!(matches!(
            log().max_abs_second_derivative(2.0, 2.0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            log().max_abs_second_derivative(-1.0, 2.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(lookup("sqrt"), Err(Error::Argument(_))));
    }
}
