//! Brute-force exponential sums for checking the lemma on concrete phases.
//!
//! Sums are accumulated in plain `f64` and carry an explicit rounding budget,
//! so a comparison `(|S| + budget)² ≤ bound` is a certified statement about
//! the exact sum. Nothing here calls the closed-form bounds of
//! [`super::lemma`].

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lemma::{self, ComposedChain, VdcParams};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::Interval;

const EPS: f64 = f64::EPSILON;
/// Per-term slack on top of the rounding analysis.
const TERM_SLACK: f64 = 1.0 / (1u64 << 45) as f64;

/// Phase function `f` sampled at `x = 0, 1, …`.
#[derive(Clone, Debug, Serialize)]
pub enum PhaseModel {
    /// `f(x) = (t/2π) log(base + x)`.
    Log { t: f64, base: u64 },
    /// Explicit values `f(0), f(1), …`, taken as exact.
    Tabulated(Vec<f64>),
}

impl PhaseModel {
    /// The block phase used by the constant derivation: terms
    /// `n ∈ [rK, rK + K)` of `n^{-it}`.
    pub fn log_block(t: f64, r: u64, k: u64) -> Self {
        PhaseModel::Log { t, base: r * k }
    }

    /// `f(x + m) − f(x)` together with an absolute error bound on the
    /// computed value.
    fn difference(&self, x: u64, m: u64) -> (f64, f64) {
        match self {
            PhaseModel::Log { t, base } => {
                let u = m as f64 / (*base + x) as f64;
                let v = t / (2.0 * PI) * u.ln_1p();
                (v, 8.0 * EPS * v.abs())
            }
            PhaseModel::Tabulated(values) => {
                let v = values[(x + m) as usize] - values[x as usize];
                (v, 2.0 * EPS * v.abs())
            }
        }
    }

    fn len_limit(&self) -> u64 {
        match self {
            PhaseModel::Log { .. } => u64::MAX,
            PhaseModel::Tabulated(values) => values.len() as u64,
        }
    }

    /// Range of `|f'''|` over `x ∈ [0, len − 1]`, for the log phase.
    pub fn third_derivative_range(&self, len: u64) -> Option<(f64, f64)> {
        match self {
            PhaseModel::Log { t, base } if *base > 0 && len > 0 => {
                let lo = *base as f64;
                let hi = (*base + len - 1) as f64;
                Some((t / (PI * hi.powi(3)), t / (PI * lo.powi(3))))
            }
            _ => None,
        }
    }
}

/// A computed exponential sum with its certified error radius.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BruteSum {
    pub modulus: f64,
    pub budget: f64,
    pub terms: u64,
}

impl BruteSum {
    /// Certified upper bound on the exact modulus (never above the term count).
    pub fn upper(&self) -> f64 {
        (self.modulus + self.budget).min(self.terms as f64)
    }
}

/// `Σ_{x=0}^{len−m−1} e^{2πi (f(x+m) − f(x))}`; with `m = 0` replaced by the
/// undifferenced sum `Σ_{x<len} e^{2πi (f(x) − f(0))}`.
fn accumulate(phase: &PhaseModel, len: u64, m: u64) -> Result<BruteSum> {
    if len > phase.len_limit() {
        return Err(Error::LengthMismatch {
            expected: phase.len_limit() as usize,
            got: len as usize,
        });
    }
    let terms = len.saturating_sub(m);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let mut budget = 0.0f64;
    for x in 0..terms {
        let (p, p_err) = if m == 0 {
            phase.difference(0, x)
        } else {
            phase.difference(x, m)
        };
        let frac = p - p.floor();
        let (s, c) = (2.0 * PI * frac).sin_cos();
        re += c;
        im += s;
        // phase error in radians, then libm sin/cos, then the two additions
        let angle_err = 2.0 * PI * (p_err + 2.0 * EPS * (1.0 + frac));
        budget += angle_err + 3.0 * EPS + 2.0 * EPS * (x + 1) as f64 + TERM_SLACK;
    }
    let modulus = re.hypot(im);
    budget += 2.0 * EPS * modulus;
    Ok(BruteSum {
        modulus,
        budget,
        terms,
    })
}

/// `|Σ_{x=0}^{len−1} e^{2πi f(x)}|`.
pub fn brute_force_sum(phase: &PhaseModel, len: u64) -> Result<BruteSum> {
    accumulate(phase, len, 0)
}

/// `|S'_m| = |Σ_{x=0}^{len−m−1} e^{2πi (f(x+m) − f(x))}|`.
pub fn brute_force_shift_sum(phase: &PhaseModel, len: u64, m: u64) -> Result<BruteSum> {
    if m == 0 {
        return Err(Error::Hypothesis("shift m must be >= 1".into()));
    }
    accumulate(phase, len, m)
}

/// A log-phase block: `t`, block index `r`, block length `K`, and the summed
/// length `len ≤ K`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OracleInstance {
    pub t: f64,
    pub r: u64,
    pub k: u64,
    pub len: u64,
}

impl OracleInstance {
    pub fn phase(&self) -> PhaseModel {
        PhaseModel::log_block(self.t, self.r, self.k)
    }

    /// `W = π (r+1)³ K³ / t`, `λ = ((r+1)/r)³`, so that
    /// `1/W ≤ |f'''| ≤ λ/W` on the whole block.
    pub fn params(&self, eta: Interval) -> Result<VdcParams> {
        let rp1 = Interval::from_int(self.r + 1);
        let kk = Interval::from_int(self.k);
        let w = (Interval::pi() * (rp1 * kk).powi(3)?).div(Interval::point(self.t))?;
        let lambda = rp1.div(Interval::from_int(self.r))?.powi(3)?;
        VdcParams::new(self.len, w, lambda, eta)
    }
}

/// Random blocks with `t` log-uniform in `[t_min, t_max]`, `K = ⌈t^{1/3}⌉`,
/// `r` between 1 and `max(1, ⌊√(t/2π)/K⌋)`, and `1 ≤ len ≤ K`.
pub fn random_instances(seed: u64, count: usize, t_min: f64, t_max: f64) -> Vec<OracleInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (t_min.ln(), t_max.ln());
    (0..count)
        .map(|_| {
            let t = rng.gen_range(a..=b).exp();
            let k = t.cbrt().ceil() as u64;
            let n1 = (t / (2.0 * PI)).sqrt().floor() as u64;
            let r_max = (n1 / k).max(1);
            let r = rng.gen_range(1..=r_max);
            let len = rng.gen_range(1..=k);
            OracleInstance { t, r, k, len }
        })
        .collect()
}

/// Every check made on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct OracleOutcome {
    pub instance: OracleInstance,
    pub m: u64,
    pub sum: BruteSum,
    pub square_bound: Interval,
    /// `|S|² ≤ (L W^{-1/3} + η)(αL + βW^{2/3})`.
    pub lemma_holds: bool,
    /// A-process evaluated on the brute-force `|S'_m|`.
    pub weyl_bound: Interval,
    pub weyl_holds: bool,
    pub shifts_checked: usize,
    /// `|S'_m| ≤` second-derivative bound for every checked shift.
    pub second_deriv_holds: bool,
    pub chain: ComposedChain,
    pub chain_ordered: bool,
}

impl OracleOutcome {
    pub fn holds(&self) -> bool {
        self.lemma_holds && self.weyl_holds && self.second_deriv_holds && self.chain_ordered
    }
}

pub fn check_instance(inst: &OracleInstance, eta: Interval) -> Result<OracleOutcome> {
    let params = inst.params(eta)?;
    let phase = inst.phase();
    let l = inst.len;
    let m_shifts = params.m();

    let sum = brute_force_sum(&phase, l)?;
    let square_bound = lemma::vdc_square_bound(&params)?;
    let s_hi = sum.upper();
    let lemma_holds = s_hi * s_hi <= square_bound.hi();

    // |S'_m| for m = 1..M plus the longest and a middle shift.
    let mut shift_set: Vec<u64> = (1..=m_shifts.min(l.saturating_sub(1))).collect();
    for extra in [l.saturating_sub(1), l / 2] {
        if extra >= 1 && extra < l && !shift_set.contains(&extra) {
            shift_set.push(extra);
        }
    }
    let mut second_deriv_holds = true;
    let mut exact = vec![Interval::ZERO; m_shifts as usize];
    for &m in &shift_set {
        let s = brute_force_shift_sum(&phase, l, m)?;
        let b = lemma::second_deriv_test_bound(l, m, params.w, params.lambda)?;
        second_deriv_holds &= s.upper() <= b.hi();
        if m <= m_shifts {
            exact[(m - 1) as usize] = Interval::point(s.upper());
        }
    }
    let weyl_bound = lemma::a_process_bound(l, m_shifts, &exact)?;
    let weyl_holds = s_hi * s_hi <= weyl_bound.hi();

    let chain = lemma::composed_chain(&params)?;
    let chain_ordered = chain.a_process.hi() <= chain.after_weighted_sums.hi()
        && chain.after_weighted_sums.hi() <= chain.final_bound.hi();

    Ok(OracleOutcome {
        instance: *inst,
        m: m_shifts,
        sum,
        square_bound,
        lemma_holds,
        weyl_bound,
        weyl_holds,
        shifts_checked: shift_set.len(),
        second_deriv_holds,
        chain,
        chain_ordered,
    })
}

/// Exhaustive comparison of the weighted sums with their closed-form bounds.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedSumCheck {
    pub m_max: u64,
    /// Values of `M` where some exact sum is not certified below its bound.
    pub failures: Vec<u64>,
}

impl WeightedSumCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every `M` in `1..=m_max`.
pub fn check_weighted_sums(m_max: u64, exec: Execution) -> Result<WeightedSumCheck> {
    let rows = exec.map_range(1..m_max + 1, |m| -> Result<(u64, bool)> {
        let exact = lemma::weighted_sums_exact(m)?.as_array();
        let bound = lemma::weighted_sum_bounds(m)?.as_array();
        Ok((m, exact.iter().zip(&bound).all(|(e, b)| e.hi() <= b.lo())))
    });
    let mut failures = Vec::new();
    for row in rows {
        let (m, ok) = row?;
        if !ok {
            failures.push(m);
        }
    }
    Ok(WeightedSumCheck { m_max, failures })
}
