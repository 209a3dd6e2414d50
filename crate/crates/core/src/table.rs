//! Segmented lookup tables: breakpoint storage, a balanced comparator tree
//! selecting the segment, per-segment address generation and linear
//! interpolation, both in `f64` and as a bit-accurate fixed-point datapath.

use crate::catalog::FunctionSpec;
use crate::error::{Error, Result};
use crate::fixed::{shift_round_even, FixedPointFormat};
use crate::segmentation::SegmentPlan;

/// One uniformly sampled sub-interval `[x_start, x_end]` of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub x_start: f64,
    pub x_end: f64,
    pub delta: f64,
    pub inv_delta: f64,
    pub count: usize,
    pub base_address: usize,
}

impl Segment {
    /// Builds a segment whose `count` breakpoints tile `[x_start, x_end]`
    /// exactly, the last one landing on `x_end`.
    pub fn tiling(x_start: f64, x_end: f64, count: usize, base_address: usize) -> Result<Self> {
        if !(x_start < x_end) || count < 2 {
            return Err(Error::Argument(format!(
                "segment [{x_start}, {x_end}] with {count} breakpoints is degenerate"
            )));
        }
        let len = x_end - x_start;
        let steps = (count - 1) as f64;
        let mut delta = len / steps;
        while delta * steps < len {
            delta = delta.next_up();
        }
        Ok(Segment {
            x_start,
            x_end,
            delta,
            inv_delta: 1.0 / delta,
            count,
            base_address,
        })
    }

    /// Location of breakpoint `m`. The last breakpoint is pinned to `x_end`.
    pub fn breakpoint(&self, m: usize) -> f64 {
        if m + 1 >= self.count {
            self.x_end
        } else {
            self.x_start + m as f64 * self.delta
        }
    }

    /// Index of the left breakpoint of the cell containing `x`, clamped so
    /// that `i + 1` is always addressable.
    pub fn breakpoint_index(&self, x: f64) -> usize {
        let last = self.count - 2;
        let raw = ((x - self.x_start) * self.inv_delta).floor();
        let mut i = if raw <= 0.0 {
            0
        } else {
            (raw as usize).min(last)
        };
        // Settle multiply-vs-divide rounding at cell edges.
        if i < last && x >= self.breakpoint(i + 1) {
            i += 1;
        } else if i > 0 && x < self.breakpoint(i) {
            i -= 1;
        }
        i
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(usize),
    /// `x < threshold` goes left. `boundary` indexes the partition.
    Compare {
        boundary: usize,
        threshold: f64,
        threshold_word: i128,
        left: usize,
        right: usize,
    },
    /// Register stage that keeps every root-to-leaf path the same length.
    Pass(usize),
}

/// Balanced comparator tree over the inner partition boundaries. Every path
/// from the root to a leaf passes exactly `depth` stages.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectorTree {
    nodes: Vec<Node>,
    root: usize,
    depth: u32,
    segments: usize,
}

/// One entry of a selector tree preorder listing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectorStep {
    Compare { boundary: usize, threshold: f64 },
    Pass,
    Leaf(usize),
}

impl SelectorTree {
    pub fn build(boundaries: &[f64], in_fmt: &FixedPointFormat) -> Self {
        let segments = boundaries.len() - 1;
        let depth = usize::BITS - (segments - 1).leading_zeros();
        let mut tree = SelectorTree {
            nodes: Vec::with_capacity(2 * segments),
            root: 0,
            depth,
            segments,
        };
        tree.root = tree.grow(boundaries, in_fmt, 0, segments, depth);
        tree
    }

    fn grow(
        &mut self,
        boundaries: &[f64],
        in_fmt: &FixedPointFormat,
        a: usize,
        b: usize,
        levels: u32,
    ) -> usize {
        let node = if levels == 0 {
            debug_assert_eq!(b - a, 1);
            Node::Leaf(a)
        } else if b - a == 1 {
            Node::Pass(self.grow(boundaries, in_fmt, a, b, levels - 1))
        } else {
            let mid = a + (b - a).div_ceil(2);
            let left = self.grow(boundaries, in_fmt, a, mid, levels - 1);
            let right = self.grow(boundaries, in_fmt, mid, b, levels - 1);
            Node::Compare {
                boundary: mid,
                threshold: boundaries[mid],
                threshold_word: in_fmt.quantize_saturating(boundaries[mid]).0,
                left,
                right,
            }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// `ceil(log2(segments))`.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn segments(&self) -> usize {
        self.segments
    }

    /// Segment index for `x` and the number of stages traversed.
    pub fn select(&self, x: f64) -> (usize, u32) {
        self.walk(|threshold, _| x < threshold)
    }

    /// Segment index for a fixed-point input word.
    pub fn select_word(&self, word: i128) -> (usize, u32) {
        self.walk(|_, threshold_word| word < threshold_word)
    }

    fn walk(&self, go_left: impl Fn(f64, i128) -> bool) -> (usize, u32) {
        let mut at = self.root;
        let mut stages = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(j) => return (j, stages),
                Node::Pass(next) => at = next,
                Node::Compare {
                    threshold,
                    threshold_word,
                    left,
                    right,
                    ..
                } => {
                    at = if go_left(threshold, threshold_word) {
                        left
                    } else {
                        right
                    };
                }
            }
            stages += 1;
        }
    }

    pub fn preorder(&self) -> Vec<SelectorStep> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(at) = stack.pop() {
            match self.nodes[at] {
                Node::Leaf(j) => out.push(SelectorStep::Leaf(j)),
                Node::Pass(next) => {
                    out.push(SelectorStep::Pass);
                    stack.push(next);
                }
                Node::Compare {
                    boundary,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    out.push(SelectorStep::Compare {
                        boundary,
                        threshold,
                    });
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }
}

/// Per-segment constants of the fixed-point datapath.
#[derive(Debug, Clone, PartialEq)]
struct FixedSegment {
    /// Reciprocal spacing in input-LSB units, scaled by `2^(2W)`.
    inv_word: i128,
}

/// Result of one fixed-point evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedOutput {
    pub word: i128,
    pub saturated: bool,
}

#[derive(Debug, Clone)]
pub struct SegmentedTable {
    fn_id: String,
    ea: f64,
    boundaries: Vec<f64>,
    segments: Vec<Segment>,
    values: Vec<f64>,
    words: Vec<i128>,
    in_fmt: FixedPointFormat,
    out_fmt: FixedPointFormat,
    selector: SelectorTree,
    fixed: Vec<FixedSegment>,
}

/// Largest total bit growth the `i128` datapath model tolerates.
const DATAPATH_BITS: u32 = 126;

fn bits_of(v: i128) -> u32 {
    128 - v.unsigned_abs().leading_zeros()
}

/// Segments of `plan` laid out back to back, with `f` sampled at every
/// breakpoint in address order.
pub fn sample_plan(f: &FunctionSpec, plan: &SegmentPlan) -> Result<(Vec<Segment>, Vec<f64>)> {
    let mut segments = Vec::with_capacity(plan.counts.len());
    let mut values = Vec::with_capacity(plan.total_footprint);
    let mut base = 0;
    for ((lo, hi), &count) in plan.partition.segments().zip(&plan.counts) {
        let seg = Segment::tiling(lo, hi, count, base)?;
        for m in 0..count {
            let x = seg.breakpoint(m);
            let y = f.eval(x)?;
            if !y.is_finite() {
                return Err(Error::Range(format!(
                    "{}({x}) is not finite (breakpoint {m} of segment [{lo}, {hi}])",
                    f.id()
                )));
            }
            values.push(y);
        }
        base += count;
        segments.push(seg);
    }
    Ok((segments, values))
}

/// Materializes `plan` for `f`.
pub fn build_table(
    f: &FunctionSpec,
    plan: &SegmentPlan,
    in_fmt: FixedPointFormat,
    out_fmt: FixedPointFormat,
) -> Result<SegmentedTable> {
    let (segments, values) = sample_plan(f, plan)?;
    SegmentedTable::assemble(
        f.id().to_string(),
        plan.ea,
        plan.partition.boundaries().to_vec(),
        segments,
        values,
        in_fmt,
        out_fmt,
    )
}

impl SegmentedTable {
    /// Validates stored parts and derives the quantized words, the selector
    /// tree and the fixed-point constants.
    pub fn assemble(
        fn_id: String,
        ea: f64,
        boundaries: Vec<f64>,
        segments: Vec<Segment>,
        values: Vec<f64>,
        in_fmt: FixedPointFormat,
        out_fmt: FixedPointFormat,
    ) -> Result<Self> {
        if segments.is_empty() || boundaries.len() != segments.len() + 1 {
            return Err(Error::Argument(format!(
                "{} boundaries do not describe {} segments",
                boundaries.len(),
                segments.len()
            )));
        }
        let mut base = 0;
        for (j, seg) in segments.iter().enumerate() {
            if seg.x_start != boundaries[j] || seg.x_end != boundaries[j + 1] {
                return Err(Error::Argument(format!(
                    "segment {j} does not span [{}, {}]",
                    boundaries[j],
                    boundaries[j + 1]
                )));
            }
            if seg.base_address != base || seg.count < 2 {
                return Err(Error::Argument(format!(
                    "segment {j} has base address {} and {} entries, expected base {base}",
                    seg.base_address, seg.count
                )));
            }
            if (seg.count - 1) as f64 * seg.delta < seg.x_end - seg.x_start {
                return Err(Error::Argument(format!(
                    "segment {j} does not cover its interval"
                )));
            }
            base += seg.count;
        }
        if values.len() != base {
            return Err(Error::Argument(format!(
                "{} stored values for a footprint of {base}",
                values.len()
            )));
        }

        let (lo, hi) = (boundaries[0], boundaries[boundaries.len() - 1]);
        if lo < in_fmt.min_value() || hi > in_fmt.max_value() {
            return Err(Error::Range(format!(
                "interval [{lo}, {hi}] exceeds the input format {in_fmt} range [{}, {}]",
                in_fmt.min_value(),
                in_fmt.max_value()
            )));
        }

        let mut words = Vec::with_capacity(values.len());
        for seg in &segments {
            for m in 0..seg.count {
                let y = values[seg.base_address + m];
                let word = out_fmt.quantize(y).map_err(|_| {
                    Error::Range(format!(
                        "value {y} at breakpoint x = {} (address {}) overflows output format {out_fmt}",
                        seg.breakpoint(m),
                        seg.base_address + m
                    ))
                })?;
                words.push(word);
            }
        }

        let two_w = 2 * in_fmt.width();
        let mut fixed = Vec::with_capacity(segments.len());
        for seg in &segments {
            let scale = ((two_w as i32 - in_fmt.frac() as i32) as f64).exp2();
            let inv_word = (scale * seg.inv_delta).round() as i128;
            let residual = (seg.delta / in_fmt.lsb()).ceil() as i128 + 2;
            let span = words[seg.base_address..seg.base_address + seg.count]
                .windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .max()
                .unwrap_or(0);
            let reach = ((seg.x_end - seg.x_start) / in_fmt.lsb()).ceil() as i128 + 2;
            if bits_of(residual) + bits_of(inv_word) + bits_of(span) > DATAPATH_BITS
                || bits_of(reach) + bits_of(inv_word) > DATAPATH_BITS
            {
                return Err(Error::Argument(format!(
                    "formats {in_fmt} -> {out_fmt} exceed the {DATAPATH_BITS}-bit datapath model"
                )));
            }
            fixed.push(FixedSegment { inv_word });
        }

        let selector = SelectorTree::build(&boundaries, &in_fmt);
        Ok(SegmentedTable {
            fn_id,
            ea,
            boundaries,
            segments,
            values,
            words,
            in_fmt,
            out_fmt,
            selector,
            fixed,
        })
    }

    pub fn fn_id(&self) -> &str {
        &self.fn_id
    }

    pub fn ea(&self) -> f64 {
        self.ea
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Real-valued master copy of the stored breakpoint values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Stored values quantized to the output format.
    pub fn words(&self) -> &[i128] {
        &self.words
    }

    pub fn in_fmt(&self) -> FixedPointFormat {
        self.in_fmt
    }

    pub fn out_fmt(&self) -> FixedPointFormat {
        self.out_fmt
    }

    pub fn selector(&self) -> &SelectorTree {
        &self.selector
    }

    /// Total number of stored entries.
    pub fn footprint(&self) -> usize {
        self.values.len()
    }

    pub fn lo(&self) -> f64 {
        self.boundaries[0]
    }

    pub fn hi(&self) -> f64 {
        self.boundaries[self.boundaries.len() - 1]
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if x >= self.lo() && x <= self.hi() {
            Ok(())
        } else {
            Err(Error::Range(format!(
                "input {x} is outside the table interval [{}, {}]",
                self.lo(),
                self.hi()
            )))
        }
    }

    pub fn select_segment(&self, x: f64) -> Result<usize> {
        self.check_range(x)?;
        Ok(self.selector.select(x).0)
    }

    /// Segment index and left breakpoint address for `x`.
    pub fn address(&self, x: f64) -> Result<(usize, usize)> {
        let j = self.select_segment(x)?;
        let seg = &self.segments[j];
        Ok((j, seg.base_address + seg.breakpoint_index(x)))
    }

    pub fn evaluate_real(&self, x: f64) -> Result<f64> {
        let j = self.select_segment(x)?;
        let seg = &self.segments[j];
        let i = seg.breakpoint_index(x);
        let (x0, x1) = (seg.breakpoint(i), seg.breakpoint(i + 1));
        let y0 = self.values[seg.base_address + i];
        let y1 = self.values[seg.base_address + i + 1];
        if x == x0 {
            return Ok(y0);
        }
        if x == x1 {
            return Ok(y1);
        }
        Ok(y0 + (x - x0) * seg.inv_delta * (y1 - y0))
    }

    /// Bit-accurate model of the selector, address generator and
    /// interpolator. Intermediate products are kept exact; the only rounding
    /// after the table lookup is the final round-to-nearest-even into the
    /// output format.
    pub fn evaluate_fixed(&self, xi: i128) -> Result<FixedOutput> {
        if !self.in_fmt.contains_word(xi) {
            return Err(Error::Range(format!(
                "word {xi} is not representable in input format {}",
                self.in_fmt
            )));
        }
        self.check_range(self.in_fmt.to_real(xi))?;

        let (j, _) = self.selector.select_word(xi);
        let seg = &self.segments[j];
        let inv = self.fixed[j].inv_word;
        let two_w = 2 * self.in_fmt.width();

        let start = self.in_fmt.quantize_saturating(seg.x_start).0;
        let last = (seg.count - 2) as i128;
        let i = (((xi - start) * inv) >> two_w).clamp(0, last) as usize;

        let anchor = self.in_fmt.quantize_saturating(seg.breakpoint(i)).0;
        let y0 = self.words[seg.base_address + i];
        let y1 = self.words[seg.base_address + i + 1];
        if xi == anchor {
            return Ok(FixedOutput {
                word: y0,
                saturated: false,
            });
        }
        if xi == self.in_fmt.quantize_saturating(seg.breakpoint(i + 1)).0 {
            return Ok(FixedOutput {
                word: y1,
                saturated: false,
            });
        }

        let r = xi - anchor;
        let product = r * inv * (y1 - y0);
        let (word, saturated) = self.out_fmt.saturate(y0 + shift_round_even(product, two_w));
        Ok(FixedOutput { word, saturated })
    }

    /// Largest `|f(x) - evaluate_real(x)|` over `samples` evenly spaced
    /// points of the table interval.
    pub fn max_observed_error(&self, f: &FunctionSpec, samples: usize) -> Result<f64> {
        if samples < 2 {
            return Err(Error::Argument("at least two samples are required".into()));
        }
        let (lo, hi) = (self.lo(), self.hi());
        let step = (hi - lo) / (samples - 1) as f64;
        let mut worst = 0.0f64;
        for k in 0..samples {
            let x = if k == samples - 1 {
                hi
            } else {
                lo + k as f64 * step
            };
            worst = worst.max((f.value(x) - self.evaluate_real(x)?).abs());
        }
        Ok(worst)
    }

    /// Bound on `|evaluate_fixed(q(x)) - evaluate_real(x)|` for any
    /// representable `x` in the interval: one output LSB for value and final
    /// rounding, the steepest stored slope times the input anchor rounding,
    /// and `ea` for inputs whose quantized comparison picks the neighbouring
    /// segment.
    pub fn fixed_error_budget(&self) -> f64 {
        let slope = self
            .segments
            .iter()
            .flat_map(|seg| {
                let ys = &self.values[seg.base_address..seg.base_address + seg.count];
                ys.windows(2)
                    .map(move |w| (w[1] - w[0]).abs() * seg.inv_delta)
            })
            .fold(0.0, f64::max);
        let magnitude = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.ea
            + self.out_fmt.lsb()
            + 2.0 * slope * self.in_fmt.lsb()
            + 8.0 * f64::EPSILON * magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::segmentation::{binary_split, plan, Partition, SplitConfig};

    const EA_LOG: f64 = 1.0 / 8192.0;

    fn fmt(s: &str) -> FixedPointFormat {
        s.parse().unwrap()
    }

    fn log_binary_table() -> SegmentedTable {
        let f = catalog::log();
        let p = binary_split(&f, &SplitConfig::new(0.3, EA_LOG), 0.625, 15.625).unwrap();
        let pl = plan(&f, EA_LOG, &p).unwrap();
        build_table(&f, &pl, fmt("0:32:27"), fmt("1:32:29")).unwrap()
    }

    #[test]
    fn affine_two_entry_table() {
        let f = FunctionSpec::affine(1.0, 0.0);
        let pl = plan(&f, 1e-3, &Partition::whole(0.0, 1.0).unwrap()).unwrap();
        let t = build_table(&f, &pl, fmt("0:8:4"), fmt("0:8:4")).unwrap();
        assert_eq!(t.values(), &[0.0, 1.0]);
        assert_eq!(t.segments()[0].base_address, 0);
        assert_eq!(t.words(), &[0, 16]);
    }

    #[test]
    fn log_binary_table_layout() {
        let t = log_binary_table();
        assert_eq!(t.footprint(), 182);
        assert_eq!(t.values()[0], 0.625f64.ln());
        let last = t.segments().last().unwrap();
        assert_eq!(last.base_address + last.count - 1, t.footprint() - 1);
        let bases: Vec<usize> = t.segments().iter().map(|s| s.base_address).collect();
        assert_eq!(bases, vec![0, 97, 122, 151]);
        assert_eq!(t.select_segment(5.0).unwrap(), 2);
        assert_eq!(t.select_segment(0.625).unwrap(), 0);
        assert_eq!(t.select_segment(15.625).unwrap(), 3);
        assert!(matches!(t.select_segment(16.0), Err(Error::Range(_))));
        assert!(matches!(t.evaluate_real(0.5), Err(Error::Range(_))));
    }

    #[test]
    fn breakpoint_index_rules() {
        let s = Segment::tiling(0.625, 0.625 + 0.019_531_25 * 10.0, 11, 0).unwrap();
        assert_eq!(s.breakpoint_index(0.625), 0);
        let s = Segment::tiling(0.0, 1.0, 5, 0).unwrap();
        assert_eq!(s.delta, 0.25);
        assert_eq!(s.breakpoint_index(0.74), 2);
        assert_eq!(s.breakpoint_index(1.0), 3);
        assert_eq!(s.breakpoint_index(-0.1), 0);
    }

    #[test]
    fn tiling_covers_its_interval() {
        for (lo, hi, n) in [(0.625, 8.125, 385), (-1.5, 1.5, 81_544), (0.1, 0.3, 3)] {
            let s = Segment::tiling(lo, hi, n, 0).unwrap();
            assert!((n - 1) as f64 * s.delta >= hi - lo);
            assert_eq!(s.breakpoint(n - 1), hi);
        }
    }

    #[test]
    fn breakpoints_evaluate_exactly() {
        let t = log_binary_table();
        for seg in t.segments() {
            for m in 0..seg.count {
                let x = seg.breakpoint(m);
                assert_eq!(t.evaluate_real(x).unwrap(), x.ln());
            }
        }
    }

    #[test]
    fn affine_interpolation_is_exact() {
        let f = FunctionSpec::affine(2.0, 0.0);
        let pl = plan(&f, 1e-6, &Partition::new(vec![0.0, 0.5, 2.0]).unwrap()).unwrap();
        let t = build_table(&f, &pl, fmt("0:16:12"), fmt("0:16:10")).unwrap();
        for k in 0..=200 {
            let x = 2.0 * k as f64 / 200.0;
            assert!((t.evaluate_real(x).unwrap() - 2.0 * x).abs() < 1e-14);
        }
        assert!(t.max_observed_error(&f, 1000).unwrap() < 1e-14);
    }

    #[test]
    fn reference_log_error_at_one() {
        let f = catalog::log();
        let pl = plan(&f, EA_LOG, &Partition::whole(0.625, 15.625).unwrap()).unwrap();
        let t = build_table(&f, &pl, fmt("0:32:27"), fmt("1:32:29")).unwrap();
        assert!(t.evaluate_real(1.0).unwrap().abs() <= EA_LOG);
    }

    #[test]
    fn selector_depth_is_balanced() {
        for n in 1..=40usize {
            let b: Vec<f64> = (0..=n).map(|k| k as f64).collect();
            let tree = SelectorTree::build(&b, &fmt("1:16:8"));
            let expect = (n as f64).log2().ceil() as u32;
            assert_eq!(tree.depth(), expect, "n = {n}");
            for j in 0..n {
                let (sel, stages) = tree.select(j as f64 + 0.5);
                assert_eq!(sel, j);
                assert_eq!(stages, expect);
            }
            assert_eq!(tree.select(n as f64).0, n - 1);
        }
    }

    #[test]
    fn fixed_path_hits_stored_words_at_breakpoints() {
        let t = log_binary_table();
        let inf = t.in_fmt();
        for seg in t.segments() {
            for m in 0..seg.count {
                let xi = inf.quantize(seg.breakpoint(m)).unwrap();
                if inf.to_real(xi) < t.lo() || inf.to_real(xi) > t.hi() {
                    continue;
                }
                let out = t.evaluate_fixed(xi).unwrap();
                assert_eq!(out.word, t.words()[seg.base_address + m]);
            }
        }
    }

    #[test]
    fn fixed_path_tracks_real_path() {
        let t = log_binary_table();
        let inf = t.in_fmt();
        let budget = t.fixed_error_budget();
        let lo = inf.quantize(t.lo()).unwrap();
        let hi = inf.quantize(t.hi()).unwrap();
        let step = ((hi - lo) / 20_011).max(1);
        let mut xi = lo;
        while xi <= hi {
            let fixed = t.out_fmt().to_real(t.evaluate_fixed(xi).unwrap().word);
            let real = t.evaluate_real(inf.to_real(xi)).unwrap();
            assert!((fixed - real).abs() <= budget, "at {xi}: {fixed} vs {real}");
            xi += step;
        }
    }

    #[test]
    fn value_overflow_names_breakpoint() {
        let f = catalog::exp();
        let pl = plan(&f, 1e-3, &Partition::whole(0.0, 5.0).unwrap()).unwrap();
        let err = build_table(&f, &pl, fmt("0:16:12"), fmt("0:16:10")).unwrap_err();
        match err {
            Error::Range(msg) => assert!(msg.contains("breakpoint x ="), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fixed_input_out_of_interval() {
        let t = log_binary_table();
        let below = t.in_fmt().quantize(0.5).unwrap();
        assert!(matches!(t.evaluate_fixed(below), Err(Error::Range(_))));
        assert!(matches!(t.evaluate_fixed(-1), Err(Error::Range(_))));
    }
}
