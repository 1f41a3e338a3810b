//! Euler–Maclaurin enclosures of `ζ(1/2 + it)` over t-intervals.
//!
//! For a main-sum length `N` and `ν` correction terms,
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^{-s} + N^{-s}/2 + N^{1-s}/(s-1)
//!        + Σ_{k=1}^{ν} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + E,
//! |E| ≤ |s+2ν+1| / (σ+2ν+1) · |first omitted correction term|.
//! ```
//!
//! Over an interval `T = [t_m − h, t_m + h]` the approximant `F(t)` is enclosed
//! by a second-order mean-value form, `F(t_m) + F'(t_m)·δ + (F''(T)/2)·δ²`,
//! intersected with the direct interval evaluation `F(T)`. The modulus upper
//! bound uses convexity of `δ ↦ |F(t_m) + δ F'(t_m)|`, so it is attained at
//! `δ = ±h`.

use serde::{Deserialize, Serialize};

use super::bernoulli::correction_coefficient;
use super::jet::Jet;
use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Interval};

/// Largest supported number of Bernoulli correction terms.
pub const MAX_CORRECTIONS: u32 = 14;

/// How the main-sum length `N` depends on `t` (evaluated at `|t|` at the
/// upper end of the range).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MainSumRule {
    /// `N = ⌈2t⌉`.
    TwiceT,
    /// `N = ⌈60(t + 1)⌉`.
    SixtyTPlusOne,
    /// Constant `N`.
    Fixed(u64),
    /// `N = ⌈factor · t⌉ + offset`.
    Scaled { factor: f64, offset: u64 },
}

impl MainSumRule {
    pub fn length(self, t: f64) -> u64 {
        let t = t.abs();
        let n = match self {
            MainSumRule::TwiceT => (2.0 * t).ceil() as u64,
            MainSumRule::SixtyTPlusOne => (60.0 * (t + 1.0)).ceil() as u64,
            MainSumRule::Fixed(n) => n,
            MainSumRule::Scaled { factor, offset } => (factor * t).ceil() as u64 + offset,
        };
        n.max(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmConfig {
    pub rule: MainSumRule,
    pub corrections: u32,
    /// Reject enclosures wider than this (in either component).
    pub width_cap: Option<f64>,
}

impl EmConfig {
    /// `⌈2t⌉` terms, one correction: the setting used on `[3, 200]`.
    pub fn twice_t() -> Self {
        EmConfig {
            rule: MainSumRule::TwiceT,
            corrections: 1,
            width_cap: None,
        }
    }

    /// `⌈60(t+1)⌉` terms, one correction: the setting used on `[0, 3]`.
    pub fn sixty_t_plus_one() -> Self {
        EmConfig {
            rule: MainSumRule::SixtyTPlusOne,
            corrections: 1,
            width_cap: None,
        }
    }

    pub fn with_corrections(mut self, nu: u32) -> Self {
        self.corrections = nu;
        self
    }

    /// Main-sum length for a range, with the tail condition `N ≥ |t|/(2π)`
    /// checked at the far end.
    pub fn length_for(&self, t: Interval) -> Result<u64> {
        let t_far = t.mag();
        let n = self.rule.length(t_far);
        let needed = Interval::point(t_far).div(Interval::two_pi())?;
        if n < 2 || (n as f64) < needed.hi() {
            return Err(Error::TailCondition { n, t: t_far });
        }
        Ok(n)
    }

    fn validate(&self) -> Result<()> {
        if self.corrections == 0 || self.corrections > MAX_CORRECTIONS {
            return Err(Error::Hypothesis(format!(
                "corrections must lie in 1..={MAX_CORRECTIONS}, got {}",
                self.corrections
            )));
        }
        Ok(())
    }
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig::twice_t()
    }
}

/// Precomputed `(log n, n^{-1/2})` enclosures shared across evaluations.
#[derive(Clone, Debug)]
pub struct TermTable {
    log_n: Vec<Interval>,
    inv_sqrt_n: Vec<Interval>,
}

impl TermTable {
    pub fn new(n_max: u64) -> Self {
        let mut log_n = Vec::with_capacity(n_max as usize + 1);
        let mut inv_sqrt_n = Vec::with_capacity(n_max as usize + 1);
        log_n.push(Interval::ZERO);
        inv_sqrt_n.push(Interval::ZERO);
        for n in 1..=n_max {
            let x = Interval::from_int(n);
            log_n.push(x.ln().expect("n >= 1"));
            inv_sqrt_n.push(x.sqrt().expect("n >= 1").recip().expect("n >= 1"));
        }
        TermTable { log_n, inv_sqrt_n }
    }

    pub fn capacity(&self) -> u64 {
        self.log_n.len() as u64 - 1
    }

    #[inline]
    pub fn log(&self, n: u64) -> Interval {
        match self.log_n.get(n as usize) {
            Some(v) => *v,
            None => Interval::from_int(n).ln().expect("n >= 1"),
        }
    }

    #[inline]
    pub fn inv_sqrt(&self, n: u64) -> Interval {
        match self.inv_sqrt_n.get(n as usize) {
            Some(v) => *v,
            None => Interval::from_int(n)
                .sqrt()
                .and_then(|r| r.recip())
                .expect("n >= 1"),
        }
    }
}

/// Full result of an Euler–Maclaurin evaluation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EmEnclosure {
    /// Rectangular enclosure of `{ζ(1/2+it) : t ∈ T}`.
    pub value: ComplexInterval,
    /// Enclosure of `{|ζ(1/2+it)| : t ∈ T}`; `modulus.hi()` is the envelope.
    pub modulus: Interval,
    /// Bound on the Euler–Maclaurin remainder used for `value`.
    #[serde(with = "crate::report::decimal")]
    pub error_bound: f64,
    /// Main-sum length `N`.
    pub terms: u64,
}

/// Jet of `n^{-s}` at `s = 1/2 + iT`: `n^{-1/2} e^{-iTL} · (1, −iL, −L²/2)`.
#[inline]
fn term_jet(t: Interval, log_n: Interval, inv_sqrt: Interval) -> Result<Jet> {
    let phase = ComplexInterval::unit_phase(t * log_n)?;
    // e^{-iθ} = cos θ − i sin θ
    let v = ComplexInterval::new(phase.re * inv_sqrt, -(phase.im * inv_sqrt));
    Ok(Jet {
        c: [
            v,
            // −i·L·v
            ComplexInterval::new(v.im * log_n, -(v.re * log_n)),
            v.scale(-(log_n.sqr() * 0.5)),
        ],
    })
}

/// Jet of the Euler–Maclaurin approximant (without remainder) over `t`.
fn approximant_jet(t: Interval, n: u64, nu: u32, table: &TermTable) -> Result<Jet> {
    let mut sum = Jet::constant(ComplexInterval::ONE);
    for k in 2..n {
        let tj = term_jet(t, table.log(k), table.inv_sqrt(k))?;
        sum = sum + tj;
    }
    let big_n = Interval::from_int(n);
    let n_pow = term_jet(t, table.log(n), table.inv_sqrt(n))?; // N^{-s}
    sum = sum + n_pow.scale(Interval::point(0.5));
    // N^{1-s}/(s-1)
    let s_minus_one = Jet::s_plus(t, -1.0);
    sum = sum + (n_pow.scale(big_n) * s_minus_one.recip()?);
    // Bernoulli corrections
    let mut poly = Jet::s_plus(t, 0.0);
    let mut n_shift = big_n.recip()?; // N^{-(2k-1)} for k = 1
    let n_sq_inv = big_n.sqr().recip()?;
    for k in 1..=nu {
        let coeff = correction_coefficient(k);
        sum = sum + (poly * n_pow).scale(coeff * n_shift);
        poly = poly * Jet::s_plus(t, (2 * k - 1) as f64) * Jet::s_plus(t, (2 * k) as f64);
        n_shift = n_shift * n_sq_inv;
    }
    Ok(sum)
}

/// Upper bound for the remainder `E` over the whole range.
fn remainder_bound(t: Interval, n: u64, nu: u32) -> Result<f64> {
    let t2 = t.sqr();
    let abs_shift = |j: f64| (Interval::point(0.5 + j).sqr() + t2).sqrt();
    let mut prod = Interval::ONE;
    for j in 0..=(2 * nu) {
        prod = prod * abs_shift(j as f64)?;
    }
    let coeff = correction_coefficient(nu + 1).abs();
    let exponent = -(2.0 * nu as f64 + 1.5);
    let n_pow = Interval::from_int(n).pow_real(exponent)?;
    let ratio = abs_shift((2 * nu + 1) as f64)?.div_f64(2.0 * nu as f64 + 1.5)?;
    Ok((ratio * coeff * prod * n_pow).hi())
}

/// Evaluate with a caller-supplied term table (which may be shorter than `N`;
/// missing entries are computed on the fly).
pub fn em_zeta_with(t: Interval, cfg: &EmConfig, table: &TermTable) -> Result<EmEnclosure> {
    cfg.validate()?;
    let n = cfg.length_for(t)?;
    let nu = cfg.corrections;
    let err = remainder_bound(t, n, nu)?;

    let (value, modulus) = if t.is_point() {
        let j = approximant_jet(t, n, nu, table)?;
        let m = j.c[0].modulus();
        let e = Interval::point(err);
        let lo = (Interval::point(m.lo()) - e).lo().max(0.0);
        let hi = (Interval::point(m.hi()) + e).hi();
        (j.c[0].inflate(err), Interval::new(lo, hi)?)
    } else {
        let mid = t.mid();
        let centre = approximant_jet(Interval::point(mid), n, nu, table)?;
        let whole = approximant_jet(t, n, nu, table)?;
        let delta = t - Interval::point(mid);
        let taylor = centre.c[0] + centre.c[1].scale(delta) + whole.c[2].scale(delta.sqr());
        let rect = taylor.intersect(whole.c[0]).unwrap_or(taylor);

        let d_lo = Interval::point(delta.lo());
        let d_hi = Interval::point(delta.hi());
        let end_lo = (centre.c[0] + centre.c[1].scale(d_lo)).modulus().hi();
        let end_hi = (centre.c[0] + centre.c[1].scale(d_hi)).modulus().hi();
        let curvature = (whole.c[2].modulus() * delta.sqr()).hi();
        let convex_hi = (Interval::point(end_lo.max(end_hi)) + Interval::point(curvature)).hi();

        let rect_mod = rect.modulus();
        let hi = (Interval::point(convex_hi.min(rect_mod.hi())) + Interval::point(err)).hi();
        let lo = (Interval::point(rect_mod.lo()) - Interval::point(err))
            .lo()
            .max(0.0);
        (rect.inflate(err), Interval::new(lo, hi)?)
    };

    if let Some(cap) = cfg.width_cap {
        let w = value.re.width().max(value.im.width());
        if w > cap {
            return Err(Error::EnclosureTooWide { width: w, cap });
        }
    }
    Ok(EmEnclosure {
        value,
        modulus,
        error_bound: err,
        terms: n,
    })
}

/// Full enclosure record for `ζ(1/2 + it)`, `t ∈ t_range`.
pub fn em_zeta_enclosure(t_range: Interval, cfg: &EmConfig) -> Result<EmEnclosure> {
    let n = cfg.length_for(t_range)?;
    em_zeta_with(t_range, cfg, &TermTable::new(n))
}

/// Rectangular enclosure of `{ζ(1/2+it) : t ∈ t_range}`.
pub fn em_zeta(t_range: Interval, cfg: &EmConfig) -> Result<ComplexInterval> {
    em_zeta_enclosure(t_range, cfg).map(|e| e.value)
}
