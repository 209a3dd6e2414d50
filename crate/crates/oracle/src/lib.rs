//! Straight-line reference implementations used as test oracles. Nothing
//! here depends on `lutsplit`: curvature comes from separately written
//! closed forms and the splitters follow the plain step lists on `f64`
//! boundaries.

use std::f64::consts::PI;

/// Closed-form `f''` written independently of the catalog.
pub fn f2(id: &str, x: f64) -> f64 {
    match id {
        "tan" => 2.0 * x.sin() / x.cos().powi(3),
        "log" => -x.powi(-2),
        "exp" => x.exp(),
        "tanh" => -2.0 * x.sinh() / x.cosh().powi(3),
        "gauss" => (x * x - 1.0) * (-x * x / 2.0).exp(),
        "logistic" => {
            let e = (-x).exp();
            e * (e - 1.0) / (1.0 + e).powi(3)
        }
        "logistic_neg" => {
            let e = x.exp();
            e * (e - 1.0) / (1.0 + e).powi(3)
        }
        _ => panic!("no oracle for {id}"),
    }
}

/// Interior points where `|f''|` can peak.
fn critical_points(id: &str) -> Vec<f64> {
    let r3 = 3f64.sqrt();
    match id {
        "tanh" => {
            // tanh^2 = 1/3
            let p = 0.5 * ((1.0 + 1.0 / r3) / (1.0 - 1.0 / r3)).ln();
            vec![-p, p]
        }
        "gauss" => vec![-r3, 0.0, r3],
        "logistic" | "logistic_neg" => {
            let p = (2.0 + r3).ln();
            vec![-p, p]
        }
        _ => vec![],
    }
}

pub fn max_f2(id: &str, lo: f64, hi: f64) -> f64 {
    let mut m = f2(id, lo).abs().max(f2(id, hi).abs());
    for c in critical_points(id) {
        if c > lo && c < hi {
            m = m.max(f2(id, c).abs());
        }
    }
    m
}

/// Largest `|f''|` on a dense grid, for cross-checking `max_f2`.
pub fn brute_max_f2(id: &str, lo: f64, hi: f64, n: usize) -> f64 {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .map(|x| f2(id, x).abs())
        .fold(0.0, f64::max)
}

pub fn spacing(id: &str, ea: f64, lo: f64, hi: f64) -> f64 {
    let m = max_f2(id, lo, hi);
    if m == 0.0 {
        hi - lo
    } else {
        (8.0 * ea / m).sqrt().min(hi - lo)
    }
}

/// Breakpoints for `[lo, hi]`; `floor` selects the search-time estimate.
pub fn count(id: &str, ea: f64, lo: f64, hi: f64, floor: bool) -> usize {
    let d = spacing(id, ea, lo, hi);
    let r = (hi - lo) / d;
    let n = if floor { r.floor() } else { r.ceil() } as usize;
    (n + 1).max(2)
}

#[derive(Clone, Copy)]
pub struct Params<'a> {
    pub id: &'a str,
    pub ea: f64,
    pub omega: f64,
    pub eps: f64,
    pub floor: bool,
}

fn keep(k1: usize, k2: usize, kp: usize, omega: f64) -> bool {
    ((k1 + k2) as f64) < (1.0 - omega) * kp as f64
}

/// Midpoint splitting with an explicit work stack.
pub fn binary(p: Params<'_>, lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![lo];
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let m = a + (b - a) / 2.0;
        let kp = count(p.id, p.ea, a, b, p.floor);
        let (d1, d2) = (spacing(p.id, p.ea, a, m), spacing(p.id, p.ea, m, b));
        let k1 = count(p.id, p.ea, a, m, p.floor);
        let k2 = count(p.id, p.ea, m, b, p.floor);
        if m > a && m < b && d1 != d2 && keep(k1, k2, kp, p.omega) {
            // right half is handled after the left one
            stack.push((m, b));
            stack.push((a, m));
        } else {
            out.push(b);
        }
    }
    out
}

pub fn hierarchical(p: Params<'_>, lo: f64, hi: f64) -> Vec<f64> {
    let jmax = ((hi - lo) / p.eps).floor() as usize;
    let mut best: Option<(usize, f64)> = None;
    for j in 1..jmax {
        let sp = lo + j as f64 * p.eps;
        if sp <= lo || sp >= hi {
            continue;
        }
        let total = count(p.id, p.ea, lo, sp, p.floor) + count(p.id, p.ea, sp, hi, p.floor);
        if best.is_none_or(|(t, _)| total < t) {
            best = Some((total, sp));
        }
    }
    if let Some((_, sp)) = best {
        let kp = count(p.id, p.ea, lo, hi, p.floor);
        let k1 = count(p.id, p.ea, lo, sp, p.floor);
        let k2 = count(p.id, p.ea, sp, hi, p.floor);
        if keep(k1, k2, kp, p.omega) {
            let mut left = hierarchical(p, lo, sp);
            let right = hierarchical(p, sp, hi);
            left.pop();
            left.extend(right);
            return left;
        }
    }
    vec![lo, hi]
}

pub fn sequential(p: Params<'_>, lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![lo];
    let mut xp = lo;
    let mut kp = count(p.id, p.ea, lo, hi, p.floor);
    let imax = ((hi - lo) / p.eps).floor() as usize;
    for i in 1..=imax {
        let sp = lo + i as f64 * p.eps;
        if sp <= xp || sp >= hi {
            continue;
        }
        let k1 = count(p.id, p.ea, xp, sp, p.floor);
        let k2 = count(p.id, p.ea, sp, hi, p.floor);
        if keep(k1, k2, kp, p.omega) {
            out.push(sp);
            xp = sp;
            kp = count(p.id, p.ea, xp, hi, p.floor);
        }
    }
    out.push(hi);
    out
}

/// Segment holding `x` by scanning the boundaries; the last segment is closed.
pub fn linear_scan(boundaries: &[f64], x: f64) -> usize {
    let n = boundaries.len() - 1;
    (0..n).find(|&j| x < boundaries[j + 1]).unwrap_or(n - 1)
}

/// Pooled two-sample statistic, degrees of freedom.
pub fn pooled_t(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (ma, mb) = (mean(a), mean(b));
    let ssa: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let ssb: f64 = b.iter().map(|x| (x - mb).powi(2)).sum();
    let df = (a.len() + b.len() - 2) as f64;
    let sp2 = (ssa + ssb) / df;
    let se = (sp2 * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt();
    ((ma - mb) / se, df)
}

/// `P(T > t)` for Student's t with `df` degrees of freedom, by Simpson
/// quadrature of the density after substituting `t = tan(theta)`.
pub fn t_upper_tail(t: f64, df: f64) -> f64 {
    let g = |theta: f64| {
        let x = theta.tan();
        (1.0 + x * x / df).powf(-(df + 1.0) / 2.0) / theta.cos().powi(2)
    };
    let simpson = |a: f64, b: f64, n: usize| {
        let h = (b - a) / n as f64;
        let mut s = g(a) + g(b);
        for k in 1..n {
            s += g(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    // The integrand vanishes at +-pi/2 for df >= 1.
    let edge = PI / 2.0 - 1e-12;
    let total = simpson(-edge, edge, 40_000);
    let theta = t.atan();
    simpson(theta, edge, 40_000) / total
}
