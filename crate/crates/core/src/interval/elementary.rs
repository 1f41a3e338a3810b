//! Elementary functions on [`Interval`].
//!
//! `sqrt` relies on IEEE correct rounding. `exp`, `ln` and `powf` rely on the
//! platform libm staying within one ulp of the exact value; endpoints are pushed
//! [`LIBM_SLACK_ULPS`] ulps outward to cover that. Rational roots are verified
//! independently of libm by cubing/powering the candidate endpoints.

use super::real::{down, down_n, up, up_n, Interval};
use crate::error::{Error, Result};

/// Outward slack applied to libm results, in ulps.
pub const LIBM_SLACK_ULPS: u32 = 2;

impl Interval {
    /// Certified enclosure of π.
    pub fn pi() -> Interval {
        // f64 PI is the nearest double below π.
        Interval::raw(std::f64::consts::PI, up(std::f64::consts::PI))
    }

    pub fn two_pi() -> Interval {
        // Scaling by 2 is exact.
        Interval::raw(2.0 * std::f64::consts::PI, 2.0 * up(std::f64::consts::PI))
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(Error::Domain {
                op: "sqrt",
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let lo = if self.lo() == 0.0 {
            0.0
        } else {
            down(self.lo().sqrt()).max(0.0)
        };
        Ok(Interval::raw(lo, up(self.hi().sqrt())))
    }

    pub fn ln(self) -> Result<Interval> {
        if self.lo() <= 0.0 {
            return Err(Error::Domain {
                op: "log",
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let lo = if self.lo() == 1.0 {
            0.0
        } else {
            down_n(self.lo().ln(), LIBM_SLACK_ULPS)
        };
        let hi = if self.hi() == 1.0 {
            0.0
        } else {
            up_n(self.hi().ln(), LIBM_SLACK_ULPS)
        };
        Ok(Interval::raw(lo, hi))
    }

    pub fn exp(self) -> Interval {
        let lo = if self.lo() == 0.0 {
            1.0
        } else {
            down_n(self.lo().exp(), LIBM_SLACK_ULPS).max(0.0)
        };
        let hi = if self.hi() == 0.0 {
            1.0
        } else {
            up_n(self.hi().exp(), LIBM_SLACK_ULPS)
        };
        Interval::raw(lo, hi)
    }

    /// Integer power with the usual even/odd case split.
    pub fn powi(self, n: i32) -> Result<Interval> {
        if n == 0 {
            return Ok(Interval::ONE);
        }
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut base = self;
        let mut acc = Interval::ONE;
        let mut e = n as u32;
        // Square-and-multiply on |x| keeps even powers nonnegative.
        if n % 2 == 0 {
            base = self.abs();
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = if base.lo() >= 0.0 {
                    base * base
                } else {
                    base.sqr()
                };
            }
        }
        Ok(acc)
    }

    /// `x^p` for a real exponent `p` (taken as the exact binary value of the
    /// argument). Non-integer exponents require `x > 0`.
    pub fn pow_real(self, p: f64) -> Result<Interval> {
        if !p.is_finite() {
            return Err(Error::Hypothesis(format!("non-finite exponent {p}")));
        }
        if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
            return self.powi(p as i32);
        }
        if self.lo() <= 0.0 {
            return Err(Error::Domain {
                op: "pow_real",
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let a = self.lo().powf(p);
        let b = self.hi().powf(p);
        let (lo, hi) = if p > 0.0 { (a, b) } else { (b, a) };
        Ok(Interval::raw(
            down_n(lo, LIBM_SLACK_ULPS).max(0.0),
            up_n(hi, LIBM_SLACK_ULPS),
        ))
    }

    /// Real `n`-th root, `n >= 1`, for `x >= 0`. Endpoints are verified by
    /// raising them back to the `n`-th power in interval arithmetic, so the
    /// result does not depend on libm accuracy.
    pub fn nth_root(self, n: u32) -> Result<Interval> {
        if n == 0 {
            return Err(Error::Hypothesis("zeroth root".into()));
        }
        if n == 1 {
            return Ok(self);
        }
        if n == 2 {
            return self.sqrt();
        }
        if self.lo() < 0.0 {
            return Err(Error::Domain {
                op: "nth_root",
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        let lo = if self.lo() == 0.0 {
            0.0
        } else {
            verified_root_below(self.lo(), n)
        };
        let hi = if self.hi() == f64::INFINITY {
            f64::INFINITY
        } else if self.hi() == 0.0 {
            0.0
        } else {
            verified_root_above(self.hi(), n)
        };
        Ok(Interval::raw(lo, hi))
    }

    pub fn cbrt(self) -> Result<Interval> {
        self.nth_root(3)
    }

    /// `x^(num/den)` for `x > 0` (or `x >= 0` when `num > 0`).
    pub fn pow_ratio(self, num: i32, den: u32) -> Result<Interval> {
        let root = self.nth_root(den)?;
        root.powi(num)
    }
}

fn initial_root(x: f64, n: u32) -> f64 {
    match n {
        3 => x.cbrt(),
        _ => x.powf(1.0 / n as f64),
    }
}

fn pow_hi(y: f64, n: u32) -> f64 {
    Interval::point(y)
        .powi(n as i32)
        .map(|v| v.hi())
        .unwrap_or(f64::INFINITY)
}

fn pow_lo(y: f64, n: u32) -> f64 {
    Interval::point(y)
        .powi(n as i32)
        .map(|v| v.lo())
        .unwrap_or(0.0)
}

/// Largest candidate `y` with certified `y^n <= x`.
fn verified_root_below(x: f64, n: u32) -> f64 {
    let mut y = down(initial_root(x, n));
    let mut step = 0;
    while pow_hi(y, n) > x {
        y = down(y);
        step += 1;
        if step > 64 {
            // Fall back to a crude but certain bound.
            y *= 0.5;
        }
    }
    y.max(0.0)
}

/// Smallest candidate `y` with certified `y^n >= x`.
fn verified_root_above(x: f64, n: u32) -> f64 {
    let mut y = up(initial_root(x, n));
    let mut step = 0;
    while pow_lo(y, n) < x {
        y = up(y);
        step += 1;
        if step > 64 {
            y *= 2.0;
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_one_contains_zero() {
        assert!(Interval::ONE.ln().unwrap().contains(0.0));
    }

    #[test]
    fn sqrt_of_perfect_squares() {
        let r = Interval::new(4.0, 9.0).unwrap().sqrt().unwrap();
        assert!(r.lo() <= 2.0 && r.hi() >= 3.0);
    }

    #[test]
    fn domain_errors() {
        assert!(Interval::new(-1.0, 1.0).unwrap().sqrt().is_err());
        assert!(Interval::new(0.0, 1.0).unwrap().ln().is_err());
        assert!(Interval::new(0.0, 1.0).unwrap().pow_real(0.5).is_err());
        assert!(Interval::new(0.0, 1.0).unwrap().pow_real(2.0).is_ok());
    }

    #[test]
    fn sixth_root_of_t0() {
        // (9.3e7)^(1/6) = 21.285335083299705425... (50-digit reference).
        let t0 = Interval::point(9.3e7);
        let r = t0.nth_root(6).unwrap();
        let reference = 21.285_335_083_299_705;
        assert!(r.lo() <= reference && reference <= r.hi(), "{r:?}");
        assert!(r.width() < 1e-13);
        let p = t0.pow_real(1.0 / 6.0).unwrap();
        assert!(p.contains(reference), "{p:?}");
    }

    #[test]
    fn cbrt_of_exact_cube_is_tight() {
        let r = Interval::point(27.0).cbrt().unwrap();
        assert!(r.contains(3.0));
        assert!(r.width() <= 4.0 * f64::EPSILON * 3.0);
    }

    #[test]
    fn exp_of_unbounded_ranges() {
        let r = Interval::new(f64::NEG_INFINITY, 0.0).unwrap().exp();
        assert_eq!(r.lo(), 0.0);
        assert_eq!(r.hi(), 1.0);
        let l = Interval::new(1.0, f64::INFINITY).unwrap().ln().unwrap();
        assert_eq!(l.hi(), f64::INFINITY);
    }

    #[test]
    fn even_powers_are_nonnegative() {
        let r = Interval::new(-2.0, 1.0).unwrap().powi(2).unwrap();
        assert_eq!(r.lo(), 0.0);
        assert!(r.hi() >= 4.0);
        let c = Interval::new(-2.0, 1.0).unwrap().powi(3).unwrap();
        assert!(c.lo() <= -8.0 && c.hi() >= 1.0);
    }
}
