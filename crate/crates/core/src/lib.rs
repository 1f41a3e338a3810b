//! Certified bounds for `|ζ(1/2 + it)|` of van der Corput type.
//!
//! The crate is organised bottom-up:
//!
//! * [`interval`]: outward-rounded real and complex interval arithmetic.
//! * [`zeta`]: Euler–Maclaurin enclosures of `ζ(1/2 + it)` over t-intervals,
//!   the Riemann–Siegel main sum and its remainder constants.
//! * [`vdc`]: a third-derivative van der Corput lemma and each inequality in its
//!   proof, plus brute-force oracles for log phases.
//! * [`pipeline`]: the Riemann–Siegel–Lehman bound, the constant derivation for
//!   `a₁ t^{1/6} log t + a₂ t^{1/6} + a₃`, crossover proofs and the barrier.
//! * [`harness`]: partitioned verification sweeps on `[0, 200]`, the ratio
//!   witness search and the large-value comparison.
//! * [`report`]: JSON/CSV report structures shared with the command-line tool.

pub mod error;
pub mod exec;
pub mod harness;
pub mod interval;
pub mod pipeline;
pub mod report;
pub mod vdc;
pub mod zeta;

pub use error::{Error, Result};
pub use exec::Execution;
pub use interval::{ComplexInterval, Interval};
