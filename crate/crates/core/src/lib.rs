//! Memory-minimized piecewise-uniform lookup tables for evaluating
//! elementary functions in hardware.
//!
//! A table approximates `f` on an interval by linear interpolation between
//! uniformly spaced breakpoints. Splitting the interval into sub-intervals,
//! each with its own spacing, lets flat regions use few entries while the
//! maximum absolute error stays below a target.
//!
//! The usual pipeline is [`segmentation::split`] to pick boundaries,
//! [`segmentation::plan`] to size each segment, [`build_table`] to sample and
//! quantize, then [`hwmodel`] for BRAM layout, latency and export.

pub mod catalog;
pub mod error;
pub mod fixed;
pub mod hwmodel;
pub mod segmentation;
pub mod spacing;
pub mod stats;
pub mod table;

pub use catalog::FunctionSpec;
pub use error::{Error, Result};
pub use fixed::FixedPointFormat;
pub use segmentation::{Algorithm, Partition, SegmentPlan, SplitConfig};
pub use table::{build_table, sample_plan, SegmentedTable};
