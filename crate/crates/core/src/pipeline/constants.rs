//! Derivation of `a₁, a₂, a₃` in
//! `|ζ(1/2+it)| ≤ a₁ t^{1/6} log t + a₂ t^{1/6} + a₃` for `t ≥ t₀`.
//!
//! The main sum `Σ_{n≤n₁} n^{-1/2+it}` is cut into blocks `[rK, (r+1)K)` with
//! `K = ⌈t^{1/3}⌉`. Blocks with `r < r₀` are bounded trivially; the rest go
//! through the van der Corput lemma with `W_r = π(r+1)³K³/t`,
//! `λ_r = ((r+1)/r)³` and `η = η₀ = (75/64)^{2/3}`.

use serde::Serialize;

use super::bounds::{c0, vdc_zeta_bound};
use crate::error::{Error, Result};
use crate::interval::{sum_pairwise, Interval};
use crate::vdc;
use crate::zeta::{rs_main_sum_length, rs_remainder};

/// `t₀ = 9.3·10⁷`.
pub const T0: f64 = 9.3e7;
/// Block index below which the main sum is bounded trivially.
pub const R0_DEFAULT: u64 = 5;
/// Significant digits of the published constants.
pub const PUBLISHED_DIGITS: usize = 13;

/// `η₀ = (75/64)^{2/3}`.
pub fn eta0() -> Interval {
    Interval::from_ratio(75, 64)
        .pow_ratio(2, 3)
        .expect("positive base")
}

/// `λ_r = ((r+1)/r)³`.
pub fn lambda_r(r: u64) -> Result<Interval> {
    if r == 0 {
        return Err(Error::Hypothesis("block index r must be >= 1".into()));
    }
    Interval::from_int(r + 1)
        .div(Interval::from_int(r))?
        .powi(3)
}

/// `π(r+1)³`, the lower bound on `W_r` that holds because `K ≥ t^{1/3}`.
pub fn w_r_floor(r: u64) -> Interval {
    Interval::pi() * Interval::from_int(r + 1).powi(3).expect("positive")
}

/// `α_r = α(π(r+1)³, λ_r, η)`.
pub fn alpha_r(r: u64, eta: Interval) -> Result<Interval> {
    vdc::alpha(w_r_floor(r), lambda_r(r)?, eta)
}

/// `β_r = β(π(r+1)³, η)`.
pub fn beta_r(r: u64, eta: Interval) -> Result<Interval> {
    vdc::beta(w_r_floor(r), eta)
}

/// `K = ⌈t^{1/3}⌉`.
pub fn k_rule(t: Interval) -> Result<u64> {
    Ok(t.cbrt()?.ceil_exact()? as u64)
}

/// `R = ⌊n₁/K⌋`.
pub fn r_rule(t: Interval) -> Result<u64> {
    Ok(rs_main_sum_length(t)? / k_rule(t)?)
}

/// `W_r = π(r+1)³K³/t` with `K = ⌈t^{1/3}⌉`.
pub fn w_r(r: u64, t: Interval) -> Result<Interval> {
    let k = Interval::from_int(k_rule(t)?);
    (w_r_floor(r) * k.powi(3)?).div(t)
}

/// Upper bound for
/// `𝓑_r ≤ α_r + ηα_rρ/(√2 π^{1/6} t^{1/6}) + β_rρ²/(2π^{1/3}) + ηβ_rρ³/(2^{3/2}√π t^{1/6})`
/// with `t` replaced by `t_floor`.
pub fn calb_bound(r: u64, eta: Interval, rho: Interval, t_floor: Interval) -> Result<Interval> {
    if !(rho.lo() >= 1.0) {
        return Err(Error::Hypothesis(format!("rho must be >= 1, got {rho:?}")));
    }
    if !(t_floor.lo() >= T0) {
        return Err(Error::Hypothesis(format!(
            "t_floor must be >= {T0}, got {}",
            t_floor.lo()
        )));
    }
    let a = alpha_r(r, eta)?;
    let b = beta_r(r, eta)?;
    let pi = Interval::pi();
    let t16 = t_floor.nth_root(6)?;
    let sqrt2 = Interval::point(2.0).sqrt()?;
    let term2 = (eta * a * rho).div(sqrt2 * pi.nth_root(6)? * t16)?;
    let term3 = (b * rho.sqr()).div(pi.cbrt()? * 2.0)?;
    let term4 = (eta * b * rho.powi(3)?).div(sqrt2 * 2.0 * pi.sqrt()? * t16)?;
    Ok(a + term2 + term3 + term4)
}

/// `𝓘(r₀, t₀) = 2 Σ_{n=1}^{N} n^{-1/2} − 4√N` with `N = ⌈r₀ t₀^{1/3}⌉ − 1`,
/// summed term by term. Returns the value and `N`.
pub fn i_term(r0: u64, t0: Interval) -> Result<(Interval, u64)> {
    let n = (Interval::from_int(r0) * t0.cbrt()?).ceil_exact()? as u64 - 1;
    let terms: Vec<Interval> = (1..=n)
        .map(|k| Interval::from_int(k).sqrt()?.recip())
        .collect::<Result<_>>()?;
    let sum = sum_pairwise(&terms);
    Ok((sum * 2.0 - Interval::from_int(n).sqrt()? * 4.0, n))
}

/// Inputs to the derivation and the quantities fixed by `t₀`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PipelineConstants {
    pub t0: Interval,
    pub c0: Interval,
    pub r0: u64,
    pub eta: Interval,
    /// `R₀ = ⌈(√(t₀/2π) − 1)/(t₀^{1/3} + 1) − 1⌉`, a lower bound for `R`.
    pub cap_r0: u64,
    /// `ρ₀ = (1 + 1/R₀)(1 + t₀^{-1/3})`.
    pub rho0: Interval,
    pub i_term: Interval,
    /// Number of terms `⌈r₀ t₀^{1/3}⌉ − 1` summed in `𝓘`.
    pub i_terms: u64,
    /// `𝓡(t₀)`.
    pub rem_term: Interval,
}

impl PipelineConstants {
    pub fn standard() -> Result<Self> {
        Self::new(T0, c0(), R0_DEFAULT, eta0())
    }

    pub fn with_r0(r0: u64) -> Result<Self> {
        Self::new(T0, c0(), r0, eta0())
    }

    pub fn new(t0: f64, c0: Interval, r0: u64, eta: Interval) -> Result<Self> {
        let t0i = Interval::point(t0);
        if t0 < T0 {
            return Err(Error::Hypothesis(format!("t0 must be >= {T0}")));
        }
        let t13 = t0i.cbrt()?;
        let num = t0i.div(Interval::two_pi())?.sqrt()? - Interval::ONE;
        let cap = (num.div(t13 + Interval::ONE)? - Interval::ONE).ceil_exact()?;
        if cap <= 0 {
            return Err(Error::Hypothesis(format!("R0 = {cap} must be positive")));
        }
        let cap_r0 = cap as u64;
        if r0 < 2 || r0 > cap_r0 {
            return Err(Error::Hypothesis(format!(
                "r0 must lie in 2..={cap_r0}, got {r0}"
            )));
        }
        let rho0 = (Interval::ONE + Interval::from_int(cap_r0).recip()?)
            * (Interval::ONE + t13.recip()?);
        let (i_val, i_terms) = i_term(r0, t0i)?;
        Ok(PipelineConstants {
            t0: t0i,
            c0,
            r0,
            eta,
            cap_r0,
            rho0,
            i_term: i_val,
            i_terms,
            rem_term: rs_remainder(t0i)?,
        })
    }
}

/// Result of the derivation, with every intermediate quantity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivedConstants {
    pub r0: u64,
    pub alpha: Interval,
    pub beta: Interval,
    pub calb: Interval,
    /// `(2/π^{1/6}) √𝓑`.
    pub prefactor: Interval,
    /// `log(1/(√(2π)(r₀−1)))`.
    pub log_offset: Interval,
    /// `4√(r₀(1 + t₀^{-1/3}))`.
    pub trivial_part: Interval,
    /// Tight enclosures of `a₁, a₂, a₃`.
    pub tight: [Interval; 3],
    /// The same, rounded outward to 13 significant decimal digits.
    pub published: [Interval; 3],
}

impl DerivedConstants {
    /// Constants to use in the bound (the published enclosures).
    pub fn a(&self) -> [Interval; 3] {
        self.published
    }
}

pub fn derive_vdc_constants(cfg: &PipelineConstants) -> Result<DerivedConstants> {
    let calb = calb_bound(cfg.r0, cfg.eta, cfg.rho0, cfg.t0)?;
    let pi = Interval::pi();
    let prefactor = Interval::point(2.0).div(pi.nth_root(6)?)? * calb.sqrt()?;
    let a1 = prefactor.div_f64(6.0)?;
    let denom = Interval::two_pi().sqrt()? * Interval::from_int(cfg.r0 - 1);
    let log_offset = denom.recip()?.ln()?;
    let trivial_part =
        (Interval::from_int(cfg.r0) * (Interval::ONE + cfg.t0.cbrt()?.recip()?)).sqrt()? * 4.0;
    let a2 = prefactor * log_offset + trivial_part;
    let a3 = cfg.i_term + cfg.rem_term;
    let tight = [a1, a2, a3];
    let mut published = [Interval::ZERO; 3];
    for (p, t) in published.iter_mut().zip(tight) {
        *p = round_outward_decimal(t, PUBLISHED_DIGITS)?;
    }
    Ok(DerivedConstants {
        r0: cfg.r0,
        alpha: alpha_r(cfg.r0, cfg.eta)?,
        beta: beta_r(cfg.r0, cfg.eta)?,
        calb,
        prefactor,
        log_offset,
        trivial_part,
        tight,
        published,
    })
}

/// Smallest enclosure of `x` whose endpoints are decimals with `sig`
/// significant digits.
pub fn round_outward_decimal(x: Interval, sig: usize) -> Result<Interval> {
    let lo = decimal_neighbour(x.lo(), sig, false)?;
    let hi = decimal_neighbour(x.hi(), sig, true)?;
    Ok(lo.hull(hi))
}

/// Enclosure of a `sig`-digit decimal `D` with `D ≥ v` (upward) or `D ≤ v`.
fn decimal_neighbour(v: f64, sig: usize, upward: bool) -> Result<Interval> {
    if !v.is_finite() || sig == 0 {
        return Err(Error::Hypothesis(format!(
            "cannot round {v} to {sig} digits"
        )));
    }
    let s = format!("{:.*e}", sig - 1, v);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let mut m: i64 = mant.replace('.', "").parse().expect("digits");
    let e: i32 = exp.parse::<i32>().expect("exponent") - (sig as i32 - 1);
    loop {
        let lit = format!("{m}e{e}");
        let d = Interval::from_decimal(&lit)?;
        // The literal D rounds to p; p > v (resp. p < v) forces D > v (D < v)
        // because v is itself a double.
        let p: f64 = lit.parse().expect("decimal literal");
        if (upward && (d.lo() >= v || p > v)) || (!upward && (d.hi() <= v || p < v)) {
            return Ok(d);
        }
        m += if upward { 1 } else { -1 };
    }
}

/// One row of the `r₀` scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct R0Row {
    pub r0: u64,
    pub a: [Interval; 3],
    /// The resulting bound at `t = t₀`.
    pub bound_at_t0: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct R0Scan {
    pub rows: Vec<R0Row>,
    pub argmin_a1: u64,
    pub argmin_bound_at_t0: u64,
}

/// Derive the constants for every admissible `r₀` (`2 ≤ r₀ ≤ R₀`) and record
/// which one minimizes `a₁` and which minimizes the bound at `t₀`.
pub fn scan_r0() -> Result<R0Scan> {
    let cap = PipelineConstants::standard()?.cap_r0;
    let mut rows = Vec::new();
    for r0 in 2..=cap {
        let cfg = PipelineConstants::with_r0(r0)?;
        let d = derive_vdc_constants(&cfg)?;
        rows.push(R0Row {
            r0,
            a: d.tight,
            bound_at_t0: vdc_zeta_bound(cfg.t0, d.tight, T0)?,
        });
    }
    let argmin = |key: fn(&R0Row) -> f64| {
        rows.iter()
            .min_by(|a, b| key(a).total_cmp(&key(b)))
            .map(|r| r.r0)
            .unwrap_or(R0_DEFAULT)
    };
    Ok(R0Scan {
        argmin_a1: argmin(|r| r.a[0].mid()),
        argmin_bound_at_t0: argmin(|r| r.bound_at_t0.mid()),
        rows,
    })
}
