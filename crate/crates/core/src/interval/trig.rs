//! Interval sine and cosine with certified argument reduction.
//!
//! An argument `x` is written as `x = k·(π/2) + r` where `π/2` is stored as
//! three doubles plus an enclosed tail (about 170 bits in total) and the
//! subtraction is carried out in interval arithmetic, so `r` is an enclosure
//! whose width is a few ulps of `|r|` rather than of `|x|`.

use super::elementary::LIBM_SLACK_ULPS;
use super::real::{down_n, up_n, Interval};
use crate::error::{Error, Result};

// π/2 split into pieces whose products with |k| < 2^20 are exact.
const PIO2_1: f64 = f64::from_bits(0x3FF9_21FB_5440_0000);
const PIO2_2: f64 = f64::from_bits(0x3DD0_B461_1A60_0000);
const PIO2_3: f64 = f64::from_bits(0x3BA3_198A_2E00_0000);
// π/2 − (PIO2_1 + PIO2_2 + PIO2_3) = 8.4784276603688996...e-32.
const PIO2_TAIL_LO: f64 = 8.47e-32;
const PIO2_TAIL_HI: f64 = 8.49e-32;

/// Largest |x| accepted by the reduction (keeps |k| below 2^20).
pub const REDUCTION_LIMIT: f64 = 1.5e6;

/// Reduced argument `x = k·π/2 + r` with `r` enclosed.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Reduced {
    pub k: i64,
    pub r: Interval,
}

pub(crate) fn reduce(x: f64) -> Result<Reduced> {
    if !x.is_finite() || x.abs() > REDUCTION_LIMIT {
        return Err(Error::PrecisionLoss { magnitude: x.abs() });
    }
    let k = (x * std::f64::consts::FRAC_2_PI).round();
    if k == 0.0 {
        return Ok(Reduced {
            k: 0,
            r: Interval::point(x),
        });
    }
    let tail = Interval::raw(PIO2_TAIL_LO, PIO2_TAIL_HI);
    let r = exact_diff(x, exact_product(k, PIO2_1));
    let r = r - exact_product(k, PIO2_2);
    let r = r - exact_product(k, PIO2_3);
    let r = r - Interval::point(k) * tail;
    Ok(Reduced { k: k as i64, r })
}

/// `k·c` as a point when the product is exact, otherwise an enclosure.
fn exact_product(k: f64, c: f64) -> Interval {
    let p = k * c;
    if k.mul_add(c, -p) == 0.0 {
        Interval::point(p)
    } else {
        Interval::point(k) * Interval::point(c)
    }
}

/// `x − p` without widening when the subtraction is exact.
fn exact_diff(x: f64, p: Interval) -> Interval {
    if p.is_point() {
        let d = x - p.lo();
        // TwoSum error term of x + (−p)
        let q = -p.lo();
        let bv = d - x;
        let err = (x - (d - bv)) + (q - bv);
        if err == 0.0 {
            return Interval::point(d);
        }
    }
    Interval::point(x) - p
}

/// sin on a small interval (|r| < π/2), where it is increasing.
fn sin_small(r: Interval) -> Interval {
    let lo = down_n(r.lo().sin(), LIBM_SLACK_ULPS);
    let hi = up_n(r.hi().sin(), LIBM_SLACK_ULPS);
    Interval::raw(lo, hi).clamp_to(-1.0, 1.0)
}

/// cos on a small interval (|r| < π/2): increasing below 0, decreasing above.
fn cos_small(r: Interval) -> Interval {
    let a = r.lo().cos();
    let b = r.hi().cos();
    let hi = if r.contains_zero() {
        1.0
    } else {
        up_n(a.max(b), LIBM_SLACK_ULPS)
    };
    let lo = down_n(a.min(b), LIBM_SLACK_ULPS);
    Interval::raw(lo, hi).clamp_to(-1.0, 1.0)
}

/// Value of sin (phase 0) or cos (phase 1) at a reduced point.
fn eval_reduced(red: Reduced, phase: i64) -> Interval {
    match (red.k + phase).rem_euclid(4) {
        0 => sin_small(red.r),
        1 => cos_small(red.r),
        2 => -sin_small(red.r),
        _ => -cos_small(red.r),
    }
}

/// Shared driver: `phase = 0` gives sin, `phase = 1` gives cos.
///
/// Critical points of `sin(x + phase·π/2)` sit at reduced positions
/// `p = k + r/(π/2)` with `p + phase` odd; `p + phase ≡ 1 (mod 4)` is a
/// maximum, `≡ 3` a minimum.
fn periodic(x: Interval, phase: i64) -> Result<Interval> {
    if !x.is_bounded() {
        return Ok(Interval::raw(-1.0, 1.0));
    }
    if x.hi() - x.lo() >= 6.3 {
        // At least a full period (2π < 6.3 is not needed for soundness,
        // only to skip the quadrant walk).
        reduce(x.lo())?;
        reduce(x.hi())?;
        return Ok(Interval::raw(-1.0, 1.0));
    }
    let a = reduce(x.lo())?;
    let b = reduce(x.hi())?;
    let mut out = eval_reduced(a, phase).hull(eval_reduced(b, phase));
    for c in a.k..=b.k {
        if (c + phase).rem_euclid(2) == 0 {
            continue;
        }
        let after_lo = a.k < c || (a.k == c && a.r.lo() <= 0.0);
        let before_hi = b.k > c || (b.k == c && b.r.hi() >= 0.0);
        if after_lo && before_hi {
            let extremum = if (c + phase).rem_euclid(4) == 1 {
                1.0
            } else {
                -1.0
            };
            out = out.hull(Interval::point(extremum));
        }
    }
    Ok(out.clamp_to(-1.0, 1.0))
}

impl Interval {
    /// Enclosure of `sin` over the interval. Signals [`Error::PrecisionLoss`]
    /// when an endpoint exceeds [`REDUCTION_LIMIT`].
    pub fn sin(self) -> Result<Interval> {
        periodic(self, 0)
    }

    pub fn cos(self) -> Result<Interval> {
        periodic(self, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_multiples_of_half_pi() {
        // 1000·(π/2) rounded to a double: remainder is tiny.
        let x = 1000.0 * std::f64::consts::FRAC_PI_2;
        let red = reduce(x).unwrap();
        assert_eq!(red.k, 1000);
        assert!(red.r.mag() < 1e-12);
    }

    #[test]
    fn quarter_turn() {
        let half_pi = Interval::pi().div_f64(2.0).unwrap();
        let s = half_pi.sin().unwrap();
        let c = half_pi.cos().unwrap();
        assert!(s.contains(1.0));
        assert!(c.contains(0.0));
        assert!(c.width() < 1e-15);
    }

    #[test]
    fn interval_straddling_maximum() {
        let s = Interval::new(1.0, 2.0).unwrap().sin().unwrap();
        assert_eq!(s.hi(), 1.0);
        assert!(s.lo() <= 1.0f64.sin() && s.lo() > 0.8);
    }

    #[test]
    fn large_arguments_stay_tight() {
        let x = Interval::point(1234.5678);
        let s = x.sin().unwrap();
        let c = x.cos().unwrap();
        assert!(s.width() < 1e-14 && c.width() < 1e-14);
        // 30-digit references at the binary value of 1234.5678.
        assert!(s.contains(0.078_033_449_200_020_266));
        assert!(c.contains(-0.996_950_741_414_011_82));
    }

    #[test]
    fn huge_arguments_signal_precision_loss() {
        assert!(matches!(
            Interval::point(1e9).sin(),
            Err(Error::PrecisionLoss { .. })
        ));
    }

    #[test]
    fn full_period_gives_unit_range() {
        let s = Interval::new(0.0, 7.0).unwrap().cos().unwrap();
        assert_eq!((s.lo(), s.hi()), (-1.0, 1.0));
    }
}
