//! Comparative statistics over random interval populations.

mod study;
mod ttest;

pub use study::{
    draw_intervals, mean_reduction_study, omega_range, pairwise_tests, tests_to_csv, PairwiseTest,
    StudyConfig, StudyResult,
};
pub use ttest::{outperforms, t_test_two_sample, SampleGroup, TTestResult, Tail};
