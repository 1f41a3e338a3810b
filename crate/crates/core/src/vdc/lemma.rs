//! The third-derivative van der Corput (AB-process) inequality and the chain of
//! estimates that produces it.
//!
//! For `f` with `1/W ≤ |f'''| ≤ λ/W` on the summation range and any `η > 0`,
//!
//! ```text
//! |Σ_{n=N+1}^{N+L} e^{2πi f(n)}|² ≤ (L W^{-1/3} + η)(α L + β W^{2/3})
//! α = 1/η + (64λ/75)√(η + W^{-1/3}) + λη/W^{1/3} + λ/W^{2/3}
//! β = (64/15)/√η + 3/W^{1/3}
//! ```
//!
//! obtained from Weyl differencing with `M = ⌈η W^{1/3}⌉` shifts, a
//! second-derivative test on each differenced sum, and closed-form bounds on
//! the weighted sums over the shift `m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;

fn check_hypotheses(w: Interval, lambda: Interval, eta: Interval, w_floor: f64) -> Result<()> {
    if !(w.lo() > w_floor) {
        return Err(Error::Hypothesis(format!(
            "W must exceed {w_floor}, got {w:?}"
        )));
    }
    if !(lambda.lo() >= 1.0) {
        return Err(Error::Hypothesis(format!(
            "lambda must be >= 1, got {lambda:?}"
        )));
    }
    if !(eta.lo() > 0.0) {
        return Err(Error::Hypothesis(format!("eta must be > 0, got {eta:?}")));
    }
    Ok(())
}

fn alpha_unchecked(w: Interval, lambda: Interval, eta: Interval) -> Result<Interval> {
    let w13 = w.cbrt()?;
    let w_m13 = w13.recip()?;
    let w_m23 = w_m13.sqr();
    Ok(eta.recip()?
        + Interval::from_ratio(64, 75) * lambda * (eta + w_m13).sqrt()?
        + lambda * eta * w_m13
        + lambda * w_m23)
}

fn beta_unchecked(w: Interval, eta: Interval) -> Result<Interval> {
    let w_m13 = w.cbrt()?.recip()?;
    Ok(Interval::from_ratio(64, 15) * eta.sqrt()?.recip()? + w_m13 * 3.0)
}

/// `α(W, λ, η)`.
pub fn alpha(w: Interval, lambda: Interval, eta: Interval) -> Result<Interval> {
    check_hypotheses(w, lambda, eta, 1.0)?;
    alpha_unchecked(w, lambda, eta)
}

/// `β(W, η)`.
pub fn beta(w: Interval, eta: Interval) -> Result<Interval> {
    check_hypotheses(w, Interval::ONE, eta, 1.0)?;
    beta_unchecked(w, eta)
}

/// Parameter bundle for the lemma.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VdcParams {
    pub l: u64,
    pub w: Interval,
    pub lambda: Interval,
    pub eta: Interval,
    /// Accept `W > 2/π` instead of `W > 1`.
    pub relaxed_w: bool,
    m: u64,
    alpha: Interval,
    beta: Interval,
}

impl VdcParams {
    pub fn new(l: u64, w: Interval, lambda: Interval, eta: Interval) -> Result<Self> {
        Self::build(l, w, lambda, eta, false)
    }

    /// Same as [`VdcParams::new`] but only requires `W > 2/π`.
    pub fn new_relaxed(l: u64, w: Interval, lambda: Interval, eta: Interval) -> Result<Self> {
        Self::build(l, w, lambda, eta, true)
    }

    fn build(l: u64, w: Interval, lambda: Interval, eta: Interval, relaxed: bool) -> Result<Self> {
        if l == 0 {
            return Err(Error::Hypothesis("L must be a positive integer".into()));
        }
        let floor = if relaxed {
            Interval::point(2.0).div(Interval::pi())?.hi()
        } else {
            1.0
        };
        check_hypotheses(w, lambda, eta, floor)?;
        let m = shift_count(w, eta)?;
        Ok(VdcParams {
            l,
            w,
            lambda,
            eta,
            relaxed_w: relaxed,
            m,
            alpha: alpha_unchecked(w, lambda, eta)?,
            beta: beta_unchecked(w, eta)?,
        })
    }

    /// `M = ⌈η W^{1/3}⌉`.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn alpha(&self) -> Interval {
        self.alpha
    }

    pub fn beta(&self) -> Interval {
        self.beta
    }
}

/// `M = ⌈η W^{1/3}⌉`; errors if the ceiling is not determined by the
/// enclosures (then neither neighbour satisfies `ηW^{1/3} ≤ M ≤ ηW^{1/3} + 1`
/// for certain).
pub fn shift_count(w: Interval, eta: Interval) -> Result<u64> {
    let x = eta * w.cbrt()?;
    let m = x.ceil_exact()?;
    Ok(m.max(1) as u64)
}

/// Upper bound `(L W^{-1/3} + η)(α L + β W^{2/3})` on `|Σ e^{2πi f(n)}|²`.
pub fn vdc_square_bound(p: &VdcParams) -> Result<Interval> {
    let l = Interval::from_int(p.l);
    let w13 = p.w.cbrt()?;
    Ok((l * w13.recip()? + p.eta) * (p.alpha * l + p.beta * w13.sqr()))
}

/// Second-derivative test for the differenced sum
/// `S'_m(L) = Σ_{r} e^{2πi(f(r+m) − f(r))}` under `m/W ≤ |g''| ≤ mλ/W`:
/// `8λL√(m/W)/5 + 3λLm/W + 8√(W/m)/5 + 3`.
pub fn second_deriv_test_bound(l: u64, m: u64, w: Interval, lambda: Interval) -> Result<Interval> {
    if m == 0 {
        return Err(Error::Hypothesis("shift m must be >= 1".into()));
    }
    if m >= l {
        return Err(Error::EmptySum { m, l });
    }
    let li = Interval::from_int(l);
    let mi = Interval::from_int(m);
    let m_over_w = mi.div(w)?;
    Ok(Interval::from_ratio(8, 5) * lambda * li * m_over_w.sqrt()?
        + lambda * li * m_over_w * 3.0
        + Interval::from_ratio(8, 5) * m_over_w.recip()?.sqrt()?
        + Interval::point(3.0))
}

/// Weyl differencing (A-process):
/// `(L+M−1)(L/M + (2/M) Σ_{m=1}^{M} (1 − m/M) b_m)` where `b_m ≥ |S'_m(L)|`.
pub fn a_process_bound(l: u64, m_shifts: u64, s_prime_bounds: &[Interval]) -> Result<Interval> {
    if m_shifts == 0 {
        return Err(Error::Hypothesis("M must be >= 1".into()));
    }
    if s_prime_bounds.len() as u64 != m_shifts {
        return Err(Error::LengthMismatch {
            expected: m_shifts as usize,
            got: s_prime_bounds.len(),
        });
    }
    let li = Interval::from_int(l);
    let mi = Interval::from_int(m_shifts);
    let mut weighted = Interval::ZERO;
    for (idx, b) in s_prime_bounds.iter().enumerate() {
        let m = idx as u64 + 1;
        let weight = Interval::ONE - Interval::from_int(m).div(mi)?;
        weighted = weighted + weight * *b;
    }
    let inner = li.div(mi)? + (weighted * 2.0).div(mi)?;
    Ok((li + mi - Interval::ONE) * inner)
}

/// The four weighted sums over `m = 1..M` with weight `1 − m/M`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeightedSums {
    /// `Σ (1 − m/M) √m`
    pub sqrt_m: Interval,
    /// `Σ (1 − m/M) / √m`
    pub inv_sqrt_m: Interval,
    /// `Σ (1 − m/M)`
    pub plain: Interval,
    /// `Σ (1 − m/M) m`
    pub linear: Interval,
}

impl WeightedSums {
    pub fn as_array(&self) -> [Interval; 4] {
        [self.sqrt_m, self.inv_sqrt_m, self.plain, self.linear]
    }
}

/// Closed-form bounds `4M^{3/2}/15`, `4√M/3`, `M/2`, `M²/6`.
pub fn weighted_sum_bounds(m_shifts: u64) -> Result<WeightedSums> {
    if m_shifts == 0 {
        return Err(Error::Hypothesis("M must be >= 1".into()));
    }
    let mi = Interval::from_int(m_shifts);
    let root = mi.sqrt()?;
    Ok(WeightedSums {
        sqrt_m: Interval::from_ratio(4, 15) * mi * root,
        inv_sqrt_m: Interval::from_ratio(4, 3) * root,
        plain: mi * 0.5,
        linear: mi.sqr().div_f64(6.0)?,
    })
}

/// The exact weighted sums, by direct summation.
pub fn weighted_sums_exact(m_shifts: u64) -> Result<WeightedSums> {
    if m_shifts == 0 {
        return Err(Error::Hypothesis("M must be >= 1".into()));
    }
    let mi = Interval::from_int(m_shifts);
    let mut out = WeightedSums {
        sqrt_m: Interval::ZERO,
        inv_sqrt_m: Interval::ZERO,
        plain: Interval::ZERO,
        linear: Interval::ZERO,
    };
    // The m = M term has weight zero.
    for m in 1..m_shifts {
        let x = Interval::from_int(m);
        let weight = Interval::ONE - x.div(mi)?;
        let root = x.sqrt()?;
        out.sqrt_m = out.sqrt_m + weight * root;
        out.inv_sqrt_m = out.inv_sqrt_m + weight * root.recip()?;
        out.plain = out.plain + weight;
        out.linear = out.linear + weight * x;
    }
    Ok(out)
}

/// Intermediate bounds of the lemma's proof for one parameter set.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComposedChain {
    pub m: u64,
    /// A-process with every `|S'_m|` replaced by the second-derivative bound
    /// (empty sums, `m ≥ L`, contribute 0).
    pub a_process: Interval,
    /// After summing over `m` with the closed-form weighted-sum bounds:
    /// `(L+M−1)(L/M + (64λL/75)√(M/W) + λLM/W + (64/15)√(W/M) + 3)`.
    pub after_weighted_sums: Interval,
    /// Final closed form, [`vdc_square_bound`].
    pub final_bound: Interval,
}

pub fn composed_chain(p: &VdcParams) -> Result<ComposedChain> {
    let m_shifts = p.m();
    let bounds: Vec<Interval> = (1..=m_shifts)
        .map(|m| {
            if m >= p.l {
                Ok(Interval::ZERO)
            } else {
                second_deriv_test_bound(p.l, m, p.w, p.lambda)
            }
        })
        .collect::<Result<_>>()?;
    let a_process = a_process_bound(p.l, m_shifts, &bounds)?;

    let li = Interval::from_int(p.l);
    let mi = Interval::from_int(m_shifts);
    let m_over_w = mi.div(p.w)?;
    let inner = li.div(mi)?
        + Interval::from_ratio(64, 75) * p.lambda * li * m_over_w.sqrt()?
        + p.lambda * li * m_over_w
        + Interval::from_ratio(64, 15) * m_over_w.recip()?.sqrt()?
        + Interval::point(3.0);
    let after = (li + mi - Interval::ONE) * inner;

    Ok(ComposedChain {
        m: m_shifts,
        a_process,
        after_weighted_sums: after,
        final_bound: vdc_square_bound(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta0() -> Interval {
        Interval::from_ratio(75, 64).pow_ratio(2, 3).unwrap()
    }

    #[test]
    fn eta0_balances_alpha() {
        // 1/η₀ = (64/75)√η₀ because η₀^{3/2} = 75/64.
        let e = eta0();
        let lhs = e.recip().unwrap();
        let rhs = Interval::from_ratio(64, 75) * e.sqrt().unwrap();
        let diff = lhs - rhs;
        assert!(diff.contains(0.0));
        assert!(diff.width() < 1e-14);
    }

    #[test]
    fn alpha_beta_at_r0_five() {
        let w = Interval::pi() * 216.0;
        let lambda = Interval::from_ratio(216, 125);
        let a = alpha(w, lambda, eta0()).unwrap();
        let b = beta(w, eta0()).unwrap();
        // 40-digit references.
        assert!(a.contains(2.772_868_263_010_882_8), "{a:?}");
        assert!(b.contains(4.388_346_191_403_008), "{b:?}");
        assert!(a.width() < 1e-13 && b.width() < 1e-13);
    }

    #[test]
    fn beta_limit_for_unit_eta() {
        let b = beta(Interval::point(1e30), Interval::ONE).unwrap();
        assert!((b.mid() - 64.0 / 15.0).abs() < 1e-9);
    }

    #[test]
    fn hypotheses_are_checked() {
        assert!(alpha(Interval::point(0.5), Interval::ONE, Interval::ONE).is_err());
        assert!(alpha(Interval::point(2.0), Interval::point(0.5), Interval::ONE).is_err());
        assert!(beta(Interval::point(2.0), Interval::ZERO).is_err());
        assert!(VdcParams::new(10, Interval::point(0.8), Interval::ONE, Interval::ONE).is_err());
        assert!(
            VdcParams::new_relaxed(10, Interval::point(0.8), Interval::ONE, Interval::ONE).is_ok()
        );
    }

    #[test]
    fn single_term_bound_is_at_least_one() {
        let p = VdcParams::new(1, Interval::point(10.0), Interval::ONE, Interval::ONE).unwrap();
        assert!(vdc_square_bound(&p).unwrap().lo() >= 1.0);
    }

    #[test]
    fn a_process_single_shift_is_l_squared() {
        let b = a_process_bound(7, 1, &[Interval::point(123.0)]).unwrap();
        assert!(b.contains(49.0) && b.width() < 1e-12);
    }

    #[test]
    fn a_process_length_mismatch() {
        assert!(matches!(
            a_process_bound(7, 2, &[Interval::ONE]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn second_derivative_test_properties() {
        let w = Interval::point(50.0);
        let b1 = second_deriv_test_bound(100, 3, w, Interval::ONE).unwrap();
        let b2 = second_deriv_test_bound(100, 3, w, Interval::point(2.0)).unwrap();
        assert!(b1.lo() >= 3.0);
        // λ enters only the first two terms linearly.
        let tail = Interval::from_ratio(8, 5) * Interval::point(50.0 / 3.0).sqrt().unwrap() + 3.0;
        assert!(b2.hi() <= 2.0 * b1.hi() - tail.lo() + 1e-9);
        assert!(matches!(
            second_deriv_test_bound(5, 5, w, Interval::ONE),
            Err(Error::EmptySum { .. })
        ));
    }

    #[test]
    fn weighted_sums_small_cases() {
        let exact = weighted_sums_exact(1).unwrap();
        for v in exact.as_array() {
            assert_eq!(v, Interval::ZERO);
        }
        for v in weighted_sum_bounds(1).unwrap().as_array() {
            assert!(v.lo() > 0.0);
        }
        let e100 = weighted_sums_exact(100).unwrap();
        assert!(e100.plain.contains(49.5));
        assert!(e100.plain.hi() < 50.0);
    }

    #[test]
    fn chain_is_ordered() {
        let w = Interval::pi() * 216.0;
        let p = VdcParams::new(500, w, Interval::from_ratio(216, 125), eta0()).unwrap();
        let c = composed_chain(&p).unwrap();
        assert!(c.a_process.hi() <= c.after_weighted_sums.hi());
        assert!(c.after_weighted_sums.hi() <= c.final_bound.hi());
    }
}
