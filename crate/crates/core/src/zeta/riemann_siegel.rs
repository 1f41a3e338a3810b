//! Riemann–Siegel main sum and remainder for `t ≥ 200`.
//!
//! With `n₁ = ⌊√(t/2π)⌋`,
//! `|ζ(1/2+it)| ≤ 2|Σ_{n≤n₁} n^{-1/2+it}| + 𝓡(t)` where
//! `𝓡(t) = 1.48 t^{-1/4} + 0.127 t^{-3/4}`. The theta function never enters:
//! only the modulus of the main sum is used.

use super::em::TermTable;
use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Interval};

/// Remainder constants for the Riemann–Siegel bound.
#[derive(Clone, Copy, Debug)]
pub struct RsConstants {
    /// Coefficient of `t^{-1/4}`.
    pub c_main: Interval,
    /// Coefficient of `t^{-3/4}` (bound on the first Riemann–Siegel error term).
    pub c_tail: Interval,
    /// `cos(π/8)`, the sharp value of Gabcke's constant.
    pub gabcke_beta: Interval,
    /// Validity floor.
    pub t_min: f64,
}

impl RsConstants {
    pub fn standard() -> Self {
        let eighth_pi = Interval::pi().div_f64(8.0).expect("nonzero");
        RsConstants {
            c_main: Interval::from_ratio(148, 100),
            c_tail: Interval::from_ratio(127, 1000),
            gabcke_beta: eighth_pi.cos().expect("small argument"),
            t_min: 200.0,
        }
    }

    /// `𝓡(t)`; decreasing in `t`, so `hi()` comes from `t.lo()`.
    pub fn remainder(&self, t: Interval) -> Result<Interval> {
        if t.lo() < self.t_min {
            return Err(Error::Hypothesis(format!(
                "Riemann-Siegel remainder needs t >= {}, got {}",
                self.t_min,
                t.lo()
            )));
        }
        let quarter = t.nth_root(4)?.recip()?; // t^{-1/4}
        let three_quarter = quarter.powi(3)?;
        Ok(self.c_main * quarter + self.c_tail * three_quarter)
    }
}

impl Default for RsConstants {
    fn default() -> Self {
        RsConstants::standard()
    }
}

/// `n₁ = ⌊√(t/2π)⌋`, or [`Error::AmbiguousInteger`] when the floor is not
/// determined by the enclosure of `t`.
pub fn rs_main_sum_length(t: Interval) -> Result<u64> {
    let v = t.div(Interval::two_pi())?.sqrt()?;
    let n = v.floor_exact()?;
    Ok(n.max(0) as u64)
}

/// Enclosure of `Σ_{n=1}^{n₁} n^{-1/2+it}`.
pub fn rs_main_sum(t: Interval) -> Result<ComplexInterval> {
    let n1 = rs_main_sum_length(t)?;
    rs_main_sum_with(t, &TermTable::new(n1))
}

/// [`rs_main_sum`] with precomputed `log n` and `n^{-1/2}`.
pub fn rs_main_sum_with(t: Interval, table: &TermTable) -> Result<ComplexInterval> {
    let rs = RsConstants::standard();
    if t.lo() < rs.t_min {
        return Err(Error::Hypothesis(format!(
            "main sum needs t >= {}, got {}",
            rs.t_min,
            t.lo()
        )));
    }
    let n1 = rs_main_sum_length(t)?;
    let mut acc = ComplexInterval::ONE;
    for n in 2..=n1 {
        let phase = ComplexInterval::unit_phase(t * table.log(n))?;
        acc = acc + phase.scale(table.inv_sqrt(n));
    }
    Ok(acc)
}

/// `𝓡(t) = 1.48 t^{-1/4} + 0.127 t^{-3/4}` for `t ≥ 200`.
pub fn rs_remainder(t: Interval) -> Result<Interval> {
    RsConstants::standard().remainder(t)
}

/// `2|Σ_{n≤n₁} n^{-1/2+it}| + 𝓡(t)`; its upper endpoint bounds `|ζ(1/2+it)|`.
pub fn rs_upper_bound(t: Interval) -> Result<Interval> {
    let main = rs_main_sum(t)?.modulus();
    Ok(main * 2.0 + rs_remainder(t)?)
}

/// [`rs_upper_bound`] with precomputed terms.
pub fn rs_upper_bound_with(t: Interval, table: &TermTable) -> Result<Interval> {
    let main = rs_main_sum_with(t, table)?.modulus();
    Ok(main * 2.0 + rs_remainder(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_at_200_is_five() {
        assert_eq!(rs_main_sum_length(Interval::point(200.0)).unwrap(), 5);
    }

    #[test]
    fn length_transition_at_square() {
        // √(t/2π) = 5 exactly at t = 50π.
        let t = Interval::pi() * 50.0;
        assert!(matches!(
            rs_main_sum_length(t),
            Err(Error::AmbiguousInteger { .. })
        ));
        let below = (Interval::pi() * 50.0).lo() - 1e-9;
        let above = (Interval::pi() * 50.0).hi() + 1e-9;
        assert_eq!(rs_main_sum_length(Interval::point(below)).unwrap(), 4);
        assert_eq!(rs_main_sum_length(Interval::point(above)).unwrap(), 5);
    }

    #[test]
    fn main_sum_at_200_obeys_triangle_inequality() {
        let s = rs_main_sum(Interval::point(200.0)).unwrap().modulus();
        let cap: f64 = (1..=5).map(|n| 1.0 / (n as f64).sqrt()).sum();
        assert!(s.hi() <= cap + 1e-12);
        // 30-digit reference: |Σ_{n≤5} n^{-1/2+200i}| = 2.79641722898652619...
        assert!(s.contains(2.796_417_228_986_526));
    }

    #[test]
    fn remainder_values() {
        assert!(rs_remainder(Interval::point(200.0)).unwrap().hi() < 0.4);
        assert!(rs_remainder(Interval::point(9.3e7)).unwrap().hi() < 0.016);
        let r = rs_remainder(Interval::new(300.0, 400.0).unwrap()).unwrap();
        let at_lo = rs_remainder(Interval::point(300.0)).unwrap();
        assert_eq!(r.hi(), at_lo.hi());
        assert!(rs_remainder(Interval::point(199.0)).is_err());
    }

    #[test]
    fn upper_bound_at_200_is_below_crude_cap() {
        let b = rs_upper_bound(Interval::point(200.0)).unwrap();
        assert!(b.hi() <= 2.0 * 3.2317 + 0.4);
        // |ζ(1/2+200i)| = 5.5897836231501...
        assert!(b.hi() >= 5.589_783_623_150_11);
    }

    #[test]
    fn gabcke_constant() {
        let rs = RsConstants::standard();
        assert!(rs.gabcke_beta.hi() < 0.93);
        assert!(rs.gabcke_beta.contains(0.923_879_532_511_286_7));
    }
}
