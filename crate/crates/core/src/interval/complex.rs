use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::real::Interval;
use crate::error::Result;

/// Rectangular enclosure `re + i·im` of a set of complex numbers.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };
    pub const I: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ONE,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexInterval {
            re,
            im: Interval::ZERO,
        }
    }

    pub fn point(re: f64, im: f64) -> Self {
        ComplexInterval {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn conj(self) -> Self {
        ComplexInterval {
            re: self.re,
            im: -self.im,
        }
    }

    /// Multiply by `i`.
    pub fn mul_i(self) -> Self {
        ComplexInterval {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn scale(self, k: Interval) -> Self {
        ComplexInterval {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn norm_sqr(self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    /// Enclosure of `|z|` over the rectangle; the lower endpoint is at least 0.
    pub fn modulus(self) -> Interval {
        let n = self.norm_sqr();
        // A sum of squares is nonnegative; drop any rounding below zero.
        let n = Interval::raw(n.lo().max(0.0), n.hi());
        n.sqrt().expect("nonnegative by construction")
    }

    pub fn div(self, rhs: ComplexInterval) -> Result<ComplexInterval> {
        let den = rhs.norm_sqr();
        let num = self * rhs.conj();
        Ok(ComplexInterval {
            re: num.re.div(den)?,
            im: num.im.div(den)?,
        })
    }

    pub fn recip(self) -> Result<ComplexInterval> {
        ComplexInterval::ONE.div(self)
    }

    /// Componentwise inflation by `[-e, e]`.
    pub fn inflate(self, e: f64) -> ComplexInterval {
        let pad = Interval::raw(-e, e);
        ComplexInterval {
            re: self.re + pad,
            im: self.im + pad,
        }
    }

    pub fn hull(self, other: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.hull(other.re),
            im: self.im.hull(other.im),
        }
    }

    pub fn intersect(self, other: ComplexInterval) -> Option<ComplexInterval> {
        Some(ComplexInterval {
            re: self.re.intersect(other.re)?,
            im: self.im.intersect(other.im)?,
        })
    }

    pub fn contains(self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn is_subset_of(self, other: ComplexInterval) -> bool {
        self.re.is_subset_of(other.re) && self.im.is_subset_of(other.im)
    }

    /// Enclosure of `e^{iθ}` for every `θ` in the argument.
    pub fn unit_phase(theta: Interval) -> Result<ComplexInterval> {
        Ok(ComplexInterval {
            re: theta.cos()?,
            im: theta.sin()?,
        })
    }
}

/// Free-function form of [`ComplexInterval::unit_phase`].
pub fn civ_unit_phase(theta: Interval) -> Result<ComplexInterval> {
    ComplexInterval::unit_phase(theta)
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<Interval> for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: Interval) -> ComplexInterval {
        self.scale(rhs)
    }
}

impl std::iter::Sum for ComplexInterval {
    fn sum<I: Iterator<Item = ComplexInterval>>(iter: I) -> ComplexInterval {
        iter.fold(ComplexInterval::ZERO, |a, b| a + b)
    }
}
