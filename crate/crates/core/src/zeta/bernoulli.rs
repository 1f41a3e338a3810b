//! Bernoulli numbers for the Euler–Maclaurin corrections.

use crate::interval::Interval;

/// `B_{2k}` as `(numerator, denominator)` for `k = 1..=16`.
const BERNOULLI_EVEN: [(i64, i64); 16] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
];

/// Enclosure of `B_{2k}`.
pub fn bernoulli_even(k: u32) -> Interval {
    assert!((1..=16).contains(&k), "B_{{2k}} tabulated for k in 1..=16");
    let (num, den) = BERNOULLI_EVEN[(k - 1) as usize];
    Interval::from_ratio(num, den)
}

/// Enclosure of `B_{2k} / (2k)!`.
pub fn correction_coefficient(k: u32) -> Interval {
    let mut fact = Interval::ONE;
    for j in 2..=(2 * k as u64) {
        fact = fact * Interval::from_int(j);
    }
    bernoulli_even(k).div(fact).expect("factorial is positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        assert!(correction_coefficient(1).contains(1.0 / 12.0));
        assert!(correction_coefficient(2).contains(-1.0 / 720.0));
        assert!(correction_coefficient(3).contains(1.0 / 30240.0));
    }

    #[test]
    fn coefficients_decay_like_two_over_two_pi_power() {
        // |B_{2k}|/(2k)! ≈ 2/(2π)^{2k}
        for k in 4..=16 {
            let c = correction_coefficient(k).mag();
            let approx = 2.0 / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
            let excess = c / approx - 1.0; // ζ(2k) − 1 ≈ 2^{-2k}
            assert!(
                excess > 0.0 && excess < 2f64.powi(1 - 2 * k as i32),
                "k = {k}"
            );
        }
    }
}
