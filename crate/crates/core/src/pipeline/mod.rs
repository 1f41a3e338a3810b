//! Bounds on `|ζ(1/2+it)|` for `t ≥ 200` and the proofs that tie them to
//! `0.63 t^{1/6} log t`.

pub mod bounds;
pub mod constants;
pub mod crossover;
pub mod partial_sum;

pub use bounds::{
    c0, c0_bound, lehman_bound, power_log_bound, support_constants, vdc_zeta_bound,
    SupportConstants,
};
pub use constants::{
    alpha_r, beta_r, calb_bound, derive_vdc_constants, eta0, i_term, k_rule, lambda_r, r_rule,
    round_outward_decimal, scan_r0, w_r, w_r_floor, DerivedConstants, PipelineConstants, R0Row,
    R0Scan, PUBLISHED_DIGITS, R0_DEFAULT, T0,
};
pub use crossover::{
    barrier_derivative_proxy, barrier_min, barrier_ratio, crossover_verify, prove_lehman_vs_c0,
    prove_vdc_vs_c0, BarrierReport, BisectionConfig, CrossoverReport, TailDominance, TailOutcome,
    Verdict, BARRIER_TAIL_START,
};
pub use partial_sum::{partial_sum_log_ineq, partial_sum_sweep, PartialSumCheck, PartialSumSweep};
