//! Verification campaigns: partitioned sweeps on `[0, 200]`, the ratio
//! witness search and the large-value comparison.

pub mod large_value;
pub mod sweep;
pub mod witness;

pub use large_value::{large_value_comparison, LargeValueRecord, LargeValueReport};
pub use sweep::{
    verify_range, verify_subinterval, PartitionSpec, RunInfo, SubintervalRecord, SweepOptions,
    SweepSummary, SweepVerdict, Threshold, VerificationReport, DEFAULT_RETRIES,
};
pub use witness::{search_ratio_witness, WitnessConfig, WitnessReport, WITNESS_TARGET};
