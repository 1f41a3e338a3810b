//! Certified "no crossover" proofs by adaptive bisection, with a derivative
//! argument for unbounded ranges, and the branch-and-bound minimum of the
//! Riemann–Siegel barrier ratio.

use serde::Serialize;

use super::bounds::{c0, c0_bound, lehman_bound, lehman_offset, vdc_zeta_bound};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::Interval;

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Proved,
    Undecided,
}

#[derive(Clone, Copy, Debug)]
pub struct BisectionConfig {
    pub max_depth: u32,
    /// Give up once a level holds more boxes than this.
    pub max_boxes: usize,
    pub exec: Execution,
}

impl Default for BisectionConfig {
    fn default() -> Self {
        BisectionConfig {
            max_depth: 60,
            max_boxes: 1 << 20,
            exec: Execution::Parallel,
        }
    }
}

/// Handles `[T*, ∞)`: the caller supplies a function `G` with
/// `sign G(t) = sign(rhs(t) − lhs(t))` for `t ≥ T*`, and `derivative`
/// encloses `G'` over a t-range (possibly unbounded above, in any monotone
/// reparametrisation of `t`). If `G' > 0` on `[T*, ∞)` and the bisection
/// proves `rhs > lhs` at `T*`, the inequality holds on the whole tail.
pub struct TailDominance<'a> {
    pub threshold: f64,
    pub derivative: &'a (dyn Fn(Interval) -> Result<Interval> + Sync),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TailOutcome {
    #[serde(with = "crate::report::decimal")]
    pub threshold: f64,
    /// Lower endpoint of the derivative enclosure on `[T*, ∞)`.
    #[serde(with = "crate::report::decimal")]
    pub derivative_lo: f64,
    pub certified: bool,
}

impl TailOutcome {
    fn check(tail: &TailDominance<'_>) -> TailOutcome {
        let range = Interval::new(tail.threshold, f64::INFINITY);
        let derivative_lo = range
            .and_then(|r| (tail.derivative)(r))
            .map(|d| d.lo())
            .unwrap_or(f64::NEG_INFINITY);
        TailOutcome {
            threshold: tail.threshold,
            derivative_lo,
            certified: derivative_lo > 0.0,
        }
    }
}

const UNDECIDED_KEEP: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct CrossoverReport {
    #[serde(with = "crate::report::decimal")]
    pub range_lo: f64,
    #[serde(with = "crate::report::decimal")]
    pub range_hi: f64,
    pub verdict: Verdict,
    pub boxes_evaluated: u64,
    pub boxes_discharged: u64,
    pub depth_reached: u32,
    /// Smallest certified margin `rhs.lo − lhs.hi` over discharged boxes.
    #[serde(with = "crate::report::decimal")]
    pub min_margin: f64,
    pub worst_box: Option<Interval>,
    pub undecided_count: u64,
    /// The first few boxes that could not be discharged.
    pub undecided: Vec<Interval>,
    pub tail: Option<TailOutcome>,
}

fn bisect(b: Interval) -> (Interval, Interval) {
    b.split_geometric()
}

/// Prove `lhs(t) < rhs(t)` for every `t` in `range`.
///
/// `range.hi()` may be `+∞`, in which case `tail` is required and the finite
/// window `[range.lo, max(range.lo, T*)]` is bisected.
pub fn crossover_verify<L, R>(
    range: Interval,
    lhs: L,
    rhs: R,
    tail: Option<TailDominance<'_>>,
    cfg: &BisectionConfig,
) -> Result<CrossoverReport>
where
    L: Fn(Interval) -> Result<Interval> + Sync,
    R: Fn(Interval) -> Result<Interval> + Sync,
{
    if !range.lo().is_finite() {
        return Err(Error::Hypothesis(
            "range must have a finite lower end".into(),
        ));
    }
    let (window, tail_outcome) = if range.hi().is_finite() {
        (range, None)
    } else {
        let tail = tail.ok_or_else(|| {
            Error::Hypothesis("unbounded range needs a tail dominance argument".into())
        })?;
        let hi = tail.threshold.max(range.lo());
        if tail.threshold < range.lo() {
            return Err(Error::Hypothesis(format!(
                "tail threshold {} lies below the range start {}",
                tail.threshold,
                range.lo()
            )));
        }
        (
            Interval::new(range.lo(), hi)?,
            Some(TailOutcome::check(&tail)),
        )
    };

    let margin = |b: &Interval| -> f64 {
        match (lhs(*b), rhs(*b)) {
            (Ok(l), Ok(r)) => r.lo() - l.hi(),
            _ => f64::NEG_INFINITY,
        }
    };

    let mut report = CrossoverReport {
        range_lo: range.lo(),
        range_hi: range.hi(),
        verdict: Verdict::Undecided,
        boxes_evaluated: 0,
        boxes_discharged: 0,
        depth_reached: 0,
        min_margin: f64::INFINITY,
        worst_box: None,
        undecided_count: 0,
        undecided: Vec::new(),
        tail: tail_outcome,
    };
    let note_undecided = |report: &mut CrossoverReport, b: Interval| {
        report.undecided_count += 1;
        if report.undecided.len() < UNDECIDED_KEEP {
            report.undecided.push(b);
        }
    };

    let mut work = vec![window];
    let mut depth = 0u32;
    while !work.is_empty() {
        report.depth_reached = depth;
        let margins = cfg.exec.map(&work, margin);
        report.boxes_evaluated += work.len() as u64;
        let mut next = Vec::new();
        for (b, m) in work.iter().zip(margins) {
            if m > 0.0 {
                report.boxes_discharged += 1;
                if m < report.min_margin {
                    report.min_margin = m;
                    report.worst_box = Some(*b);
                }
            } else if depth >= cfg.max_depth || b.is_point() {
                note_undecided(&mut report, *b);
            } else {
                let (x, y) = bisect(*b);
                next.push(x);
                next.push(y);
            }
        }
        if next.len() > cfg.max_boxes {
            for b in next.drain(..) {
                note_undecided(&mut report, b);
            }
        }
        work = next;
        depth += 1;
    }

    let tail_ok = report.tail.map_or(true, |t| t.certified);
    if report.undecided_count == 0 && tail_ok {
        report.verdict = Verdict::Proved;
    }
    Ok(report)
}

/// `4(2π)^{-1/4}`, the coefficient of `t^{1/4}` in the Lehman bound.
fn lehman_coefficient() -> Result<Interval> {
    Ok(Interval::two_pi().nth_root(4)?.recip()? * 4.0)
}

/// `lehman_bound(t) < 0.63 t^{1/6} log t` on a finite range inside `[200, ∞)`.
pub fn prove_lehman_vs_c0(range: Interval, cfg: &BisectionConfig) -> Result<CrossoverReport> {
    if !range.hi().is_finite() {
        return Err(Error::Hypothesis(
            "the Lehman bound overtakes c0 t^(1/6) log t; use a finite range".into(),
        ));
    }
    crossover_verify(range, lehman_bound, c0_bound, None, cfg)
}

/// `a₁ t^{1/6} log t + a₂ t^{1/6} + a₃ < 0.63 t^{1/6} log t` on `[t_start, ∞)`.
///
/// Writing `u = log t`, the difference equals `e^{u/6} g(u)` with
/// `g(u) = (c₀ − a₁)u − a₂ − a₃e^{−u/6}`, and
/// `g'(u) = (c₀ − a₁) + (a₃/6)e^{−u/6}`; the tail starts at `t_start`.
pub fn prove_vdc_vs_c0(
    t_start: f64,
    a: [Interval; 3],
    t_floor: f64,
    cfg: &BisectionConfig,
) -> Result<CrossoverReport> {
    let derivative = move |t: Interval| -> Result<Interval> {
        let u = t.ln()?;
        let decay = (-(u.div_f64(6.0)?)).exp();
        Ok((c0() - a[0]) + a[2].div_f64(6.0)? * decay)
    };
    let tail = TailDominance {
        threshold: t_start,
        derivative: &derivative,
    };
    crossover_verify(
        Interval::new(t_start, f64::INFINITY)?,
        |t| vdc_zeta_bound(t, a, t_floor),
        c0_bound,
        Some(tail),
        cfg,
    )
}

/// `(4(t/2π)^{1/4} − 2.08) / (t^{1/6} log t)`.
pub fn barrier_ratio(t: Interval) -> Result<Interval> {
    if !(t.lo() > 1.0) {
        return Err(Error::Hypothesis(format!(
            "barrier ratio needs t > 1, got {}",
            t.lo()
        )));
    }
    let num = t.div(Interval::two_pi())?.nth_root(4)? * 4.0 - lehman_offset();
    num.div(t.nth_root(6)? * t.ln()?)
}

/// Sign proxy for the derivative of [`barrier_ratio`] in `u = log t`:
/// `c e^{u/12}(u/12 − 1) + 2.08 e^{−u/6}(u/6 + 1)` with `c = 4(2π)^{-1/4}`.
pub fn barrier_derivative_proxy(t: Interval) -> Result<Interval> {
    let u = t.ln()?;
    let c = lehman_coefficient()?;
    let u12 = u.div_f64(12.0)?;
    let u6 = u.div_f64(6.0)?;
    Ok(
        c * u12.exp() * (u12 - Interval::ONE)
            + lehman_offset() * (-u6).exp() * (u6 + Interval::ONE),
    )
}

/// Start of the region where the barrier ratio is certified increasing.
pub const BARRIER_TAIL_START: f64 = 1.0e6;

#[derive(Clone, Debug, Serialize)]
pub struct BarrierReport {
    #[serde(with = "crate::report::decimal")]
    pub t_min: f64,
    #[serde(with = "crate::report::decimal")]
    pub window_hi: f64,
    /// Certified lower bound on the ratio over `[t_min, ∞)`.
    #[serde(with = "crate::report::decimal")]
    pub lower_bound: f64,
    /// Smallest value attained at an evaluated point (upper bound on the minimum).
    #[serde(with = "crate::report::decimal")]
    pub upper_bound: f64,
    pub argmin_box: Interval,
    pub boxes_evaluated: u64,
    pub tail: TailOutcome,
    pub verdict: Verdict,
}

/// Certified lower bound for `min_{t ≥ t_min}` of [`barrier_ratio`].
///
/// Branch and bound on `[t_min, T*]` with `T* = max(10⁶, t_min)`; boxes are
/// retired once their lower bound is within `tolerance` of the best point
/// value. Beyond `T*` the ratio is increasing, so the window minimum covers
/// the tail.
pub fn barrier_min(t_min: f64, tolerance: f64, cfg: &BisectionConfig) -> Result<BarrierReport> {
    if !(t_min >= 3.0) || !t_min.is_finite() {
        return Err(Error::Hypothesis(format!(
            "barrier_min needs t_min >= 3, got {t_min}"
        )));
    }
    let t_star = BARRIER_TAIL_START.max(t_min);
    let tail = TailOutcome::check(&TailDominance {
        threshold: t_star,
        derivative: &barrier_derivative_proxy,
    });

    let point_hi = |x: f64| {
        barrier_ratio(Interval::point(x))
            .map(|r| r.hi())
            .unwrap_or(f64::INFINITY)
    };
    let mut upper = point_hi(t_min).min(point_hi(t_star));
    let mut lower = f64::INFINITY;
    let mut argmin_box = Interval::point(t_min);
    let mut evaluated = 0u64;
    let mut converged = true;

    let mut work = vec![Interval::new(t_min, t_star)?];
    let mut depth = 0u32;
    while !work.is_empty() {
        let evals = cfg.exec.map(&work, |b| {
            let lb = barrier_ratio(*b)
                .map(|r| r.lo())
                .unwrap_or(f64::NEG_INFINITY);
            (lb, point_hi(b.mid()))
        });
        evaluated += work.len() as u64;
        for &(_, mid_hi) in &evals {
            upper = upper.min(mid_hi);
        }
        let mut next = Vec::new();
        for (b, (lb, _)) in work.iter().zip(evals) {
            let settled = lb >= upper - tolerance;
            if settled || depth >= cfg.max_depth || b.is_point() {
                converged &= settled;
                if lb < lower {
                    lower = lb;
                    argmin_box = *b;
                }
            } else {
                let (x, y) = bisect(*b);
                next.push(x);
                next.push(y);
            }
        }
        if next.len() > cfg.max_boxes {
            converged = false;
            for b in &next {
                let lb = barrier_ratio(*b)
                    .map(|r| r.lo())
                    .unwrap_or(f64::NEG_INFINITY);
                if lb < lower {
                    lower = lb;
                    argmin_box = *b;
                }
            }
            next.clear();
        }
        work = next;
        depth += 1;
    }

    let verdict = if converged && tail.certified {
        Verdict::Proved
    } else {
        Verdict::Undecided
    };
    Ok(BarrierReport {
        t_min,
        window_hi: t_star,
        lower_bound: lower,
        upper_bound: upper,
        argmin_box,
        boxes_evaluated: evaluated,
        tail,
        verdict,
    })
}
