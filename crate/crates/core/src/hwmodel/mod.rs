//! Resource and timing model of the table circuit: power-of-two BRAM
//! allocation and the fixed-latency evaluation pipeline.

mod export;

pub use export::{export_descriptor, export_mem_init, load_descriptor, Descriptor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::SegmentedTable;

/// BRAM18 aspect ratios: `(entry width in bits, entries per block)`.
pub const BRAM18_CONFIGS: [(u32, usize); 6] = [
    (1, 16_384),
    (2, 8_192),
    (4, 4_096),
    (9, 2_048),
    (18, 1_024),
    (32, 1_024),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BramLayout {
    pub entry_width: u32,
    pub entries_per_bram: usize,
    pub bram_count: usize,
    pub address_bits: u32,
}

fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Blocks needed when the table is addressed with `ceil(log2(mf))` bits and
/// every block contributes `log2(depth)` of them.
pub fn bram_count(mf: usize, entry_width: u32) -> Result<BramLayout> {
    if mf == 0 {
        return Err(Error::Argument("a table needs at least one entry".into()));
    }
    let &(_, depth) = BRAM18_CONFIGS
        .iter()
        .find(|(w, _)| *w == entry_width)
        .ok_or_else(|| {
            Error::Argument(format!(
                "unsupported BRAM entry width {entry_width} (expected one of 1, 2, 4, 9, 18, 32)"
            ))
        })?;
    let address_bits = ceil_log2(mf);
    let block_bits = depth.trailing_zeros();
    Ok(BramLayout {
        entry_width,
        entries_per_bram: depth,
        bram_count: 1 << address_bits.saturating_sub(block_bits),
        address_bits,
    })
}

/// Layout for `width`-bit entries, using the narrowest block configuration
/// that holds them. `None` when entries are wider than 32 bits.
pub fn layout_for_width(mf: usize, width: u32) -> Option<BramLayout> {
    let &(rung, _) = BRAM18_CONFIGS.iter().find(|(w, _)| *w >= width)?;
    bram_count(mf, rung).ok().map(|layout| BramLayout {
        entry_width: width,
        ..layout
    })
}

pub const SELECTOR_ADDRESS_CYCLES: u32 = 3;
pub const BRAM_READ_CYCLES: u32 = 1;
pub const INTERPOLATION_CYCLES: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub latency_cycles: u32,
    pub selector_address_cycles: u32,
    pub bram_read_cycles: u32,
    pub interpolation_cycles: u32,
    pub initiation_interval: u32,
    pub clock_mhz: f64,
    pub eval_time_ns: f64,
    /// Results per microsecond once the pipeline is full.
    pub throughput_per_us: f64,
}

/// Latency of the pipelined evaluator. Independent of the table contents.
pub fn latency_report(_table: &SegmentedTable, clock_mhz: f64) -> Result<PipelineReport> {
    pipeline_at(clock_mhz)
}

pub fn pipeline_at(clock_mhz: f64) -> Result<PipelineReport> {
    if !(clock_mhz > 0.0) || !clock_mhz.is_finite() {
        return Err(Error::Argument(format!(
            "clock frequency must be positive, got {clock_mhz} MHz"
        )));
    }
    let latency = SELECTOR_ADDRESS_CYCLES + BRAM_READ_CYCLES + INTERPOLATION_CYCLES;
    Ok(PipelineReport {
        latency_cycles: latency,
        selector_address_cycles: SELECTOR_ADDRESS_CYCLES,
        bram_read_cycles: BRAM_READ_CYCLES,
        interpolation_cycles: INTERPOLATION_CYCLES,
        initiation_interval: 1,
        clock_mhz,
        eval_time_ns: latency as f64 * 1000.0 / clock_mhz,
        throughput_per_us: clock_mhz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bram_plateau() {
        assert_eq!(bram_count(15_644, 32).unwrap().bram_count, 16);
        assert_eq!(bram_count(8_798, 32).unwrap().bram_count, 16);
        assert_eq!(bram_count(1_024, 32).unwrap().bram_count, 1);
        assert_eq!(bram_count(1_025, 32).unwrap().bram_count, 2);
        assert_eq!(bram_count(1, 32).unwrap().bram_count, 1);
        assert_eq!(bram_count(1, 32).unwrap().address_bits, 0);
        assert_eq!(bram_count(81_543, 32).unwrap().bram_count, 128);
        assert_eq!(bram_count(16_384, 1).unwrap().bram_count, 1);
        assert_eq!(bram_count(16_385, 1).unwrap().bram_count, 2);
    }

    #[test]
    fn bram_errors() {
        assert!(matches!(bram_count(10, 16), Err(Error::Argument(_))));
        assert!(matches!(bram_count(0, 32), Err(Error::Argument(_))));
        assert_eq!(layout_for_width(2000, 16).unwrap().entries_per_bram, 1024);
        assert!(layout_for_width(2000, 33).is_none());
    }

    #[test]
    fn latency() {
        let r = pipeline_at(87.5).unwrap();
        assert_eq!(r.latency_cycles, 9);
        assert!((r.eval_time_ns - 102.857).abs() < 1e-3);
        assert_eq!(pipeline_at(1000.0).unwrap().eval_time_ns, 9.0);
        assert!(pipeline_at(0.0).is_err());
    }

    proptest! {
        #[test]
        fn brams_monotone_and_banded(a in 1usize..200_000, b in 1usize..200_000) {
            let (lo, hi) = (a.min(b), a.max(b));
            let x = bram_count(lo, 32).unwrap();
            let y = bram_count(hi, 32).unwrap();
            prop_assert!(x.bram_count <= y.bram_count);
            if x.address_bits == y.address_bits {
                prop_assert_eq!(x.bram_count, y.bram_count);
            }
            prop_assert_eq!(x.address_bits, (lo as f64).log2().ceil() as u32);
        }
    }
}
