//! Closed-form bounds on `|ζ(1/2+it)|` for large `t` and the numerical
//! facts behind the Riemann–Siegel–Lehman estimate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::zeta::{rs_remainder, RsConstants};

/// `0.63`.
pub fn c0() -> Interval {
    Interval::from_ratio(63, 100)
}

/// `2.08`, the constant subtracted in the Lehman form.
pub fn lehman_offset() -> Interval {
    Interval::from_ratio(208, 100)
}

fn require_at_least(t: Interval, floor: f64, what: &str) -> Result<()> {
    if !(t.lo() >= floor) {
        return Err(Error::Hypothesis(format!(
            "{what} needs t >= {floor}, got {}",
            t.lo()
        )));
    }
    Ok(())
}

/// `4 (t/2π)^{1/4} − 2.08` for `t ≥ 200`.
pub fn lehman_bound(t: Interval) -> Result<Interval> {
    require_at_least(t, 200.0, "lehman_bound")?;
    let q = t.div(Interval::two_pi())?.nth_root(4)?;
    Ok(q * 4.0 - lehman_offset())
}

/// `c · t^{1/6} log t` for `t > 1`.
pub fn power_log_bound(c: Interval, t: Interval) -> Result<Interval> {
    if !(t.lo() > 1.0) {
        return Err(Error::Hypothesis(format!(
            "t^(1/6) log t needs t > 1, got {}",
            t.lo()
        )));
    }
    Ok(c * t.nth_root(6)? * t.ln()?)
}

/// `0.63 · t^{1/6} log t`.
pub fn c0_bound(t: Interval) -> Result<Interval> {
    power_log_bound(c0(), t)
}

/// `a₁ t^{1/6} log t + a₂ t^{1/6} + a₃` for `t ≥ t_floor`.
pub fn vdc_zeta_bound(t: Interval, a: [Interval; 3], t_floor: f64) -> Result<Interval> {
    require_at_least(t, t_floor, "vdc_zeta_bound")?;
    let s = t.nth_root(6)?;
    Ok(a[0] * s * t.ln()? + a[1] * s + a[2])
}

/// Numerical inequalities used in the Lehman argument.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SupportConstants {
    /// `2 Σ_{n≤5} n^{-1/2} − 4√5`, below `−2.48`.
    pub two_forty_eight: Interval,
    /// `𝓡(200)`, below `0.4`.
    pub rem_cap: Interval,
    /// `cos(π/8) (2π)^{1/4}`, below `1.48`.
    pub gabcke: Interval,
}

impl SupportConstants {
    pub fn all_hold(&self) -> bool {
        self.two_forty_eight.hi() < -2.48 && self.rem_cap.hi() < 0.4 && self.gabcke.hi() < 1.48
    }
}

pub fn support_constants() -> Result<SupportConstants> {
    let mut partial = Interval::ZERO;
    for n in 1..=5u64 {
        partial = partial + Interval::from_int(n).sqrt()?.recip()?;
    }
    let two_forty_eight = partial * 2.0 - Interval::point(5.0).sqrt()? * 4.0;
    let gabcke = RsConstants::standard().gabcke_beta * Interval::two_pi().nth_root(4)?;
    Ok(SupportConstants {
        two_forty_eight,
        rem_cap: rs_remainder(Interval::point(200.0))?,
        gabcke,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lehman_at_200() {
        let b = lehman_bound(Interval::point(200.0)).unwrap();
        assert!(b.contains(7.421_070_116_973_193), "{b:?}");
        assert!(b.width() < 1e-13);
        assert!(lehman_bound(Interval::point(199.0)).is_err());
    }

    #[test]
    fn lehman_is_monotone() {
        let a = lehman_bound(Interval::point(1e3)).unwrap();
        let b = lehman_bound(Interval::point(1e4)).unwrap();
        assert!(a.certainly_lt(b));
    }

    #[test]
    fn lehman_below_c0_at_t0() {
        let t0 = Interval::point(9.3e7);
        let l = lehman_bound(t0).unwrap();
        let c = c0_bound(t0).unwrap();
        assert!(l.certainly_lt(c), "{l:?} vs {c:?}");
    }

    #[test]
    fn support_values() {
        let s = support_constants().unwrap();
        assert!(s.all_hold());
        assert!(s.two_forty_eight.contains(-2.480_930_618_246_896));
        assert!(s.gabcke.contains(1.462_717_013_905_375));
        assert!(s.rem_cap.contains(0.395_941_879_338_039));
    }

    #[test]
    fn power_log_domain() {
        assert!(c0_bound(Interval::point(1.0)).is_err());
        assert!(vdc_zeta_bound(Interval::point(10.0), [Interval::ONE; 3], 100.0).is_err());
    }
}
