//! A third-derivative van der Corput lemma with explicit constants, each
//! inequality of its proof as a separate function, and brute-force checks.

pub mod lemma;
pub mod oracle;

pub use lemma::{
    a_process_bound, alpha, beta, composed_chain, second_deriv_test_bound, shift_count,
    vdc_square_bound, weighted_sum_bounds, weighted_sums_exact, ComposedChain, VdcParams,
    WeightedSums,
};
pub use oracle::{
    brute_force_shift_sum, brute_force_sum, check_instance, check_weighted_sums, random_instances,
    BruteSum, OracleInstance, OracleOutcome, PhaseModel, WeightedSumCheck,
};
