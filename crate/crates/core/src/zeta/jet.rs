//! Second-order Taylor jets `(f, f', f''/2)` in the real variable `t` with
//! complex-interval coefficients.
//!
//! Evaluating a jet with interval inputs gives enclosures of each derivative
//! over the whole input interval, which is what the mean-value enclosures in
//! [`super::em`] need.

use std::ops::{Add, Mul};

use crate::error::Result;
use crate::interval::{ComplexInterval, Interval};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Jet {
    pub c: [ComplexInterval; 3],
}

impl Jet {
    pub fn constant(z: ComplexInterval) -> Jet {
        Jet {
            c: [z, ComplexInterval::ZERO, ComplexInterval::ZERO],
        }
    }

    /// `s = 1/2 + i t` shifted by a real constant: `(shift + 1/2) + i t`.
    pub fn s_plus(t: Interval, shift: f64) -> Jet {
        Jet {
            c: [
                ComplexInterval::new(Interval::point(0.5) + Interval::point(shift), t),
                ComplexInterval::I,
                ComplexInterval::ZERO,
            ],
        }
    }

    pub fn scale(self, k: Interval) -> Jet {
        Jet {
            c: [self.c[0].scale(k), self.c[1].scale(k), self.c[2].scale(k)],
        }
    }

    pub fn recip(self) -> Result<Jet> {
        let r0 = self.c[0].recip()?;
        let r1 = -(self.c[1] * r0 * r0);
        let r2 = -((self.c[2] * r0) + (self.c[1] * r1)) * r0;
        Ok(Jet { c: [r0, r1, r2] })
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]],
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        Jet {
            c: [a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_derivatives_of_linear_function() {
        // 1/(1 + t) at t = 1: value 1/2, derivative -1/4, half second derivative 1/8.
        let j = Jet {
            c: [
                ComplexInterval::point(2.0, 0.0),
                ComplexInterval::point(1.0, 0.0),
                ComplexInterval::ZERO,
            ],
        };
        let r = j.recip().unwrap();
        assert!(r.c[0].contains(0.5, 0.0));
        assert!(r.c[1].contains(-0.25, 0.0));
        assert!(r.c[2].contains(0.125, 0.0));
    }
}
