use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Next representable value toward −∞. `next_down(+∞)` is `f64::MAX`, which
/// keeps overflowed lower endpoints valid.
#[inline]
pub(crate) fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
pub(crate) fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
pub(crate) fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

#[inline]
pub(crate) fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// Endpoint product with the interval convention `0 · ∞ = 0`.
#[inline]
fn ep_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

#[inline]
fn ep_div(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn min4(v: [f64; 4]) -> f64 {
    v[0].min(v[1]).min(v[2]).min(v[3])
}

fn max4(v: [f64; 4]) -> f64 {
    v[0].max(v[1]).max(v[2]).max(v[3])
}

/// Closed interval `[lo, hi]` over the extended reals with outward-rounded
/// endpoints.
///
/// Every arithmetic result contains the exact image of its operands. Rounding
/// is emulated: each computed endpoint is pushed one ulp outward, which covers
/// the half-ulp error of round-to-nearest.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Endpoints")]
pub struct Interval {
    #[serde(with = "crate::report::decimal")]
    lo: f64,
    #[serde(with = "crate::report::decimal")]
    hi: f64,
}

/// Unvalidated wire form of an interval.
#[derive(Deserialize)]
struct Endpoints {
    #[serde(with = "crate::report::decimal")]
    lo: f64,
    #[serde(with = "crate::report::decimal")]
    hi: f64,
}

impl TryFrom<Endpoints> for Interval {
    type Error = Error;

    fn try_from(e: Endpoints) -> Result<Self> {
        Interval::new(e.lo, e.hi)
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`. Panics on NaN or infinities.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "point interval from non-finite value {x}");
        Interval { lo: x, hi: x }
    }

    /// Internal constructor; callers guarantee `lo <= hi` and no NaN.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "raw interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Enclosure of `num / den` for integers.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let q = num as f64 / den as f64;
        // Integers above 2^53 are not exact in f64; widen twice in that case.
        let exact_operands = num.unsigned_abs() <= (1 << 53) && den.unsigned_abs() <= (1 << 53);
        let slack = if exact_operands { 1 } else { 3 };
        if exact_operands && num % den == 0 {
            return Interval::point(q);
        }
        Interval::raw(down_n(q, slack), up_n(q, slack))
    }

    /// Enclosure of a decimal literal such as `"9.3e7"` or
    /// `"39246764589894309155251169284104.050622"`. Parsing rounds to nearest,
    /// so the exact decimal lies within one ulp of the parsed value.
    pub fn from_decimal(s: &str) -> Result<Self> {
        let x: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Hypothesis(format!("not a decimal literal: {s:?}")))?;
        if !x.is_finite() {
            return Err(Error::InvalidInterval { lo: x, hi: x });
        }
        // Integral literals below 2^53 are exact in binary.
        if x.fract() == 0.0 && x.abs() < 9_007_199_254_740_992.0 && literal_is_integer(s) {
            return Ok(Interval::point(x));
        }
        Ok(Interval::raw(down(x), up(x)))
    }

    pub fn from_int(n: u64) -> Self {
        let x = n as f64;
        if (x as u64) == n && n <= (1 << 53) {
            Interval::point(x)
        } else {
            Interval::raw(down(x), up(x))
        }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        up(self.hi - self.lo)
    }

    /// Midpoint rounded to nearest (not an enclosure).
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Largest absolute value in the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn is_bounded(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::raw(lo, hi))
    }

    /// Certainly below: every element of `self` is strictly less than every
    /// element of `other`.
    pub fn certainly_lt(self, other: Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_positive(self) -> bool {
        self.lo > 0.0
    }

    pub fn certainly_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval::raw(0.0, self.mag())
        }
    }

    pub fn sqr(self) -> Interval {
        let a = self.abs();
        let lo = if a.lo == 0.0 {
            0.0
        } else {
            down(a.lo * a.lo).max(0.0)
        };
        Interval::raw(lo, up(ep_mul(a.hi, a.hi)))
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval::raw(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    /// Clamp to `[lo, hi]`; used where the exact range of a function is known.
    pub(crate) fn clamp_to(self, lo: f64, hi: f64) -> Interval {
        let l = self.lo.max(lo).min(hi);
        let h = self.hi.min(hi).max(lo);
        Interval::raw(l, h)
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.div(self)
    }

    /// Interval quotient. Signals a domain error when the divisor contains 0.
    pub fn div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero {
                lo: rhs.lo,
                hi: rhs.hi,
            });
        }
        let q = [
            ep_div(self.lo, rhs.lo),
            ep_div(self.lo, rhs.hi),
            ep_div(self.hi, rhs.lo),
            ep_div(self.hi, rhs.hi),
        ];
        Ok(Interval::raw(down(min4(q)), up(max4(q))))
    }

    pub fn div_f64(self, rhs: f64) -> Result<Interval> {
        self.div(Interval::point(rhs))
    }

    /// Bisect at the midpoint.
    pub fn split(self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::raw(self.lo, m), Interval::raw(m, self.hi))
    }

    /// Split an unbounded or very wide positive interval geometrically.
    pub fn split_geometric(self) -> (Interval, Interval) {
        if self.lo > 0.0 && self.hi.is_finite() && self.hi / self.lo > 4.0 {
            let m = (self.lo * self.hi).sqrt().clamp(self.lo, self.hi);
            (Interval::raw(self.lo, m), Interval::raw(m, self.hi))
        } else {
            self.split()
        }
    }

    /// The integer `⌊x⌋` shared by every element, or an ambiguity error.
    pub fn floor_exact(self) -> Result<i64> {
        let a = self.lo.floor();
        let b = self.hi.floor();
        if a != b || !a.is_finite() {
            return Err(Error::AmbiguousInteger {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(a as i64)
    }

    /// The integer `⌈x⌉` shared by every element, or an ambiguity error.
    pub fn ceil_exact(self) -> Result<i64> {
        let a = self.lo.ceil();
        let b = self.hi.ceil();
        if a != b || !a.is_finite() {
            return Err(Error::AmbiguousInteger {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(a as i64)
    }
}

/// True when a decimal literal denotes an integer (e.g. `"9.3e7"`).
fn literal_is_integer(s: &str) -> bool {
    let lit = s.trim().trim_start_matches(['+', '-']);
    let (mant, exp) = match lit.find(['e', 'E']) {
        Some(i) => match lit[i + 1..].parse::<i64>() {
            Ok(e) => (&lit[..i], e),
            Err(_) => return false,
        },
        None => (lit, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if exp >= 0 {
        let shift = (exp as usize).min(frac_part.len());
        frac_part[shift..].bytes().all(|b| b == b'0')
    } else {
        let k = exp.unsigned_abs() as usize;
        let digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).collect();
        let keep = int_part.len().saturating_sub(k);
        digits[keep..].iter().all(|&b| b == b'0')
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(down(self.lo + rhs.lo), up(self.hi + rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(down(self.lo - rhs.hi), up(self.hi - rhs.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            ep_mul(self.lo, rhs.lo),
            ep_mul(self.lo, rhs.hi),
            ep_mul(self.hi, rhs.lo),
            ep_mul(self.hi, rhs.hi),
        ];
        let lo = min4(p);
        let hi = max4(p);
        // Products with a zero factor are exact.
        let lo = if lo == 0.0 && p.iter().all(|&v| v >= 0.0) {
            0.0
        } else {
            down(lo)
        };
        let hi = if hi == 0.0 && p.iter().all(|&v| v <= 0.0) {
            0.0
        } else {
            up(hi)
        };
        Interval::raw(lo, hi)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, rhs: f64) -> Interval {
                $tr::$m(self, Interval::point(rhs))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                $tr::$m(Interval::point(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

/// Pairwise summation: the accumulated outward rounding grows with the
/// depth of the tree instead of the number of terms.
pub fn sum_pairwise(items: &[Interval]) -> Interval {
    match items.len() {
        0 => Interval::ZERO,
        1 => items[0],
        n => sum_pairwise(&items[..n / 2]) + sum_pairwise(&items[n / 2..]),
    }
}
