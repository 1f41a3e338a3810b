//! `Σ_{r=r₀}^{R} 1/√(r(r+1)) ≤ log(R/(r₀−1))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::Interval;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartialSumCheck {
    pub r0: u64,
    pub r: u64,
    pub sum: Interval,
    pub log_bound: Interval,
    pub holds: bool,
}

fn term(r: u64) -> Result<Interval> {
    (Interval::from_int(r) * Interval::from_int(r + 1))
        .sqrt()?
        .recip()
}

fn check_args(r0: u64, r: u64) -> Result<()> {
    if r0 < 2 || r < r0 {
        return Err(Error::Hypothesis(format!(
            "need 2 <= r0 <= R, got r0 = {r0}, R = {r}"
        )));
    }
    Ok(())
}

/// Direct summation against a certified logarithm.
pub fn partial_sum_log_ineq(r0: u64, r: u64) -> Result<PartialSumCheck> {
    check_args(r0, r)?;
    let mut sum = Interval::ZERO;
    for k in r0..=r {
        sum = sum + term(k)?;
    }
    let log_bound = Interval::from_int(r)
        .div(Interval::from_int(r0 - 1))?
        .ln()?;
    Ok(PartialSumCheck {
        r0,
        r,
        sum,
        log_bound,
        holds: sum.hi() <= log_bound.lo(),
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartialSumSweep {
    pub r_max: u64,
    pub pairs: u64,
    pub failures: u64,
    /// Smallest certified gap `log.lo − sum.hi` and where it occurs.
    pub min_gap: f64,
    pub min_gap_at: (u64, u64),
}

/// Every pair `2 ≤ r₀ ≤ R ≤ r_max`, using prefix sums of the terms and of
/// `log r`.
pub fn partial_sum_sweep(r_max: u64, exec: Execution) -> Result<PartialSumSweep> {
    check_args(2, r_max)?;
    // prefix[k] = Σ_{r=1}^{k} 1/√(r(r+1)); logs[k] = log k
    let mut prefix = Vec::with_capacity(r_max as usize + 1);
    prefix.push(Interval::ZERO);
    for r in 1..=r_max {
        let last = *prefix.last().expect("nonempty");
        prefix.push(last + term(r)?);
    }
    let logs: Vec<Interval> = (0..=r_max)
        .map(|k| {
            if k == 0 {
                Ok(Interval::ZERO)
            } else {
                Interval::from_int(k).ln()
            }
        })
        .collect::<Result<_>>()?;

    let per_r0 = exec.map_range(2..r_max + 1, |r0| {
        let mut failures = 0u64;
        let mut best = (f64::INFINITY, (r0, r0));
        for r in r0..=r_max {
            let sum = prefix[r as usize] - prefix[(r0 - 1) as usize];
            let bound = logs[r as usize] - logs[(r0 - 1) as usize];
            let gap = bound.lo() - sum.hi();
            if gap < 0.0 {
                failures += 1;
            }
            if gap < best.0 {
                best = (gap, (r0, r));
            }
        }
        (failures, best)
    });

    let mut out = PartialSumSweep {
        r_max,
        pairs: (r_max - 1) * r_max / 2,
        failures: 0,
        min_gap: f64::INFINITY,
        min_gap_at: (2, 2),
    };
    for (f, (gap, at)) in per_r0 {
        out.failures += f;
        if gap < out.min_gap {
            out.min_gap = gap;
            out.min_gap_at = at;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r0_five_to_hundred() {
        let c = partial_sum_log_ineq(5, 100).unwrap();
        assert!(c.holds);
        assert!(c.sum.contains(3.006_510_011_004_003));
        assert!(c.log_bound.contains(3.218_875_824_868_201));
    }

    #[test]
    fn single_term() {
        let c = partial_sum_log_ineq(2, 2).unwrap();
        assert!(c.holds);
        assert!((c.sum.mid() - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!((c.log_bound.mid() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn bad_arguments() {
        assert!(partial_sum_log_ineq(1, 5).is_err());
        assert!(partial_sum_log_ineq(6, 5).is_err());
    }

    #[test]
    fn small_sweep_matches_direct_checks() {
        let s = partial_sum_sweep(60, Execution::Sequential).unwrap();
        assert_eq!(s.failures, 0);
        assert_eq!(s.pairs, 59 * 60 / 2);
        let (r0, r) = s.min_gap_at;
        let direct = partial_sum_log_ineq(r0, r).unwrap();
        assert!((direct.log_bound.mid() - direct.sum.mid() - s.min_gap).abs() < 1e-9);
    }
}
