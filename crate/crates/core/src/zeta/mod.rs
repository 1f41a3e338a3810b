//! Certified evaluation of `ζ(1/2 + it)`.
//!
//! [`em`] encloses zeta over t-intervals by Euler–Maclaurin summation with a
//! rigorous remainder; [`riemann_siegel`] provides the main sum
//! `Σ_{n ≤ n₁} n^{-1/2+it}` and the remainder `𝓡(t)` used for `t ≥ 200`.

mod bernoulli;
pub mod em;
mod jet;
pub mod riemann_siegel;

pub use bernoulli::{bernoulli_even, correction_coefficient};
pub use em::{
    em_zeta, em_zeta_enclosure, em_zeta_with, EmConfig, EmEnclosure, MainSumRule, TermTable,
    MAX_CORRECTIONS,
};
pub use riemann_siegel::{
    rs_main_sum, rs_main_sum_length, rs_main_sum_with, rs_remainder, rs_upper_bound,
    rs_upper_bound_with, RsConstants,
};
