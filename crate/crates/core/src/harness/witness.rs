//! Grid search for large values of `|ζ(1/2+it)| / (t^{1/6} log t)`.
//!
//! Every reported ratio is a certified lower bound: the modulus lower
//! endpoint of a point enclosure divided by the upper endpoint of the
//! denominator. Above `t = 200` the Riemann–Siegel upper bound prunes grid
//! points that cannot beat the running best.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::Interval;
use crate::zeta::{
    em_zeta_with, rs_main_sum_length, rs_upper_bound_with, EmConfig, MainSumRule, TermTable,
};

/// The value the supremum is claimed to exceed.
pub const WITNESS_TARGET: f64 = 0.507;
const RS_FLOOR: f64 = 200.0;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WitnessConfig {
    pub coarse_step: f64,
    pub fine_step: f64,
    /// Number of coarse local maxima refined on the fine grid.
    pub refine_top: usize,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            coarse_step: 0.05,
            fine_step: 1e-4,
            refine_top: 8,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WitnessReport {
    pub window_lo: f64,
    pub window_hi: f64,
    pub coarse_step: f64,
    pub fine_step: f64,
    #[serde(with = "crate::report::decimal")]
    pub t_best: f64,
    /// Certified lower bound on the ratio at `t_best`.
    #[serde(with = "crate::report::decimal")]
    pub ratio_best: f64,
    /// Upper endpoint of the same ratio enclosure.
    #[serde(with = "crate::report::decimal")]
    pub ratio_best_upper: f64,
    pub em_evaluations: u64,
    pub rs_evaluations: u64,
    pub pruned: u64,
    pub target: f64,
    pub exceeds_target: bool,
}

/// `t^{1/6} log t`.
fn denominator(t: f64) -> Result<Interval> {
    let ti = Interval::point(t);
    Ok(ti.nth_root(6)? * ti.ln()?)
}

struct Evaluator {
    low: EmConfig,
    high: EmConfig,
    table: TermTable,
    rs_table: TermTable,
}

impl Evaluator {
    fn new(t_max: f64) -> Result<Self> {
        let low = EmConfig::twice_t().with_corrections(4);
        // N ≈ t/π keeps |s|/(2πN) near 1/2, so the remainder decays geometrically in ν.
        let high = EmConfig {
            rule: MainSumRule::Scaled {
                factor: std::f64::consts::FRAC_1_PI,
                offset: 16,
            },
            corrections: 8,
            width_cap: None,
        };
        let t_cap = Interval::point(t_max.min(RS_FLOOR));
        let mut n_max = low.length_for(t_cap)?;
        let mut rs_max = 0;
        if t_max > RS_FLOOR {
            n_max = n_max.max(high.length_for(Interval::point(t_max))?);
            rs_max = rs_main_sum_length(Interval::point(t_max)).unwrap_or(0) + 1;
        }
        Ok(Evaluator {
            low,
            high,
            table: TermTable::new(n_max),
            rs_table: TermTable::new(rs_max),
        })
    }

    /// Ratio enclosure from a point evaluation.
    fn ratio(&self, t: f64) -> Result<Interval> {
        let cfg = if t <= RS_FLOOR { &self.low } else { &self.high };
        let e = em_zeta_with(Interval::point(t), cfg, &self.table)?;
        let d = denominator(t)?;
        e.modulus.div(d)
    }

    /// Upper bound for the ratio from the Riemann–Siegel estimate.
    fn rs_ratio_upper(&self, t: f64) -> Result<f64> {
        let ti = Interval::point(t);
        let u = rs_upper_bound_with(ti, &self.rs_table)?;
        Ok(u.div(denominator(t)?)?.hi())
    }
}

#[derive(Clone, Copy)]
struct GridPoint {
    t: f64,
    ratio: Option<Interval>,
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let n = ((hi - lo) / step).floor() as u64;
    let mut pts: Vec<f64> = (0..=n)
        .map(|k| lo + k as f64 * step)
        .filter(|&t| t <= hi)
        .collect();
    if pts.last().map_or(true, |&t| t < hi) {
        pts.push(hi);
    }
    pts
}

pub fn search_ratio_witness(range: Interval, cfg: &WitnessConfig) -> Result<WitnessReport> {
    if !(range.lo() >= 3.0) || !range.hi().is_finite() {
        return Err(Error::Hypothesis(format!(
            "witness search needs a bounded range above 3, got {range:?}"
        )));
    }
    if !(cfg.coarse_step > 0.0 && cfg.fine_step > 0.0) {
        return Err(Error::Hypothesis("grid steps must be positive".into()));
    }
    let ev = Evaluator::new(range.hi())?;
    let mut em_evals = 0u64;
    let mut rs_evals = 0u64;
    let mut pruned = 0u64;

    let coarse = grid(range.lo(), range.hi(), cfg.coarse_step);
    let (low, high): (Vec<f64>, Vec<f64>) = coarse.iter().partition(|&&t| t <= RS_FLOOR);

    let low_pts: Vec<GridPoint> = cfg.exec.map(&low, |&t| GridPoint {
        t,
        ratio: ev.ratio(t).ok(),
    });
    em_evals += low.len() as u64;
    let best_low = low_pts
        .iter()
        .filter_map(|p| p.ratio.map(|r| r.lo()))
        .fold(0.0f64, f64::max);

    // Above the RS floor, only points whose RS upper bound beats the best so
    // far get a full evaluation.
    let high_pts: Vec<(GridPoint, bool, bool)> = cfg.exec.map(&high, |&t| {
        let upper = ev.rs_ratio_upper(t).unwrap_or(f64::INFINITY);
        if upper < best_low {
            (GridPoint { t, ratio: None }, true, false)
        } else {
            (
                GridPoint {
                    t,
                    ratio: ev.ratio(t).ok(),
                },
                false,
                true,
            )
        }
    });
    rs_evals += high.len() as u64;
    let mut points = low_pts;
    for (p, was_pruned, evaluated) in high_pts {
        pruned += was_pruned as u64;
        em_evals += evaluated as u64;
        points.push(p);
    }

    // coarse local maxima, best first
    let value = |p: &GridPoint| p.ratio.map_or(f64::NEG_INFINITY, |r| r.lo());
    let mut maxima: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let v = value(&points[i]);
            v.is_finite()
                && (i == 0 || v >= value(&points[i - 1]))
                && (i + 1 == points.len() || v >= value(&points[i + 1]))
        })
        .collect();
    maxima.sort_by(|&a, &b| value(&points[b]).total_cmp(&value(&points[a])));
    maxima.truncate(cfg.refine_top);

    let mut best = GridPoint {
        t: range.lo(),
        ratio: None,
    };
    for p in &points {
        if value(p) > value(&best) {
            best = *p;
        }
    }
    for &i in &maxima {
        let centre = points[i].t;
        let lo = (centre - cfg.coarse_step).max(range.lo());
        let hi = (centre + cfg.coarse_step).min(range.hi());
        let fine = grid(lo, hi, cfg.fine_step);
        let refined: Vec<GridPoint> = cfg.exec.map(&fine, |&t| GridPoint {
            t,
            ratio: ev.ratio(t).ok(),
        });
        em_evals += fine.len() as u64;
        for p in refined {
            if value(&p) > value(&best) {
                best = p;
            }
        }
    }

    let (ratio_best, ratio_best_upper) = best
        .ratio
        .map_or((0.0, f64::INFINITY), |r| (r.lo(), r.hi()));
    Ok(WitnessReport {
        window_lo: range.lo(),
        window_hi: range.hi(),
        coarse_step: cfg.coarse_step,
        fine_step: cfg.fine_step,
        t_best: best.t,
        ratio_best,
        ratio_best_upper,
        em_evaluations: em_evals,
        rs_evaluations: rs_evals,
        pruned,
        target: WITNESS_TARGET,
        exceeds_target: ratio_best > WITNESS_TARGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_range() {
        let cfg = WitnessConfig {
            exec: Execution::Sequential,
            ..WitnessConfig::default()
        };
        let r = search_ratio_witness(Interval::point(10.0), &cfg).unwrap();
        assert_eq!(r.t_best, 10.0);
        assert!(r.ratio_best > 0.0 && r.ratio_best <= r.ratio_best_upper);
    }

    #[test]
    fn rejects_small_t() {
        assert!(
            search_ratio_witness(Interval::new(1.0, 5.0).unwrap(), &WitnessConfig::default())
                .is_err()
        );
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = grid(3.0, 3.12, 0.05);
        assert_eq!(g.first(), Some(&3.0));
        assert_eq!(g.last(), Some(&3.12));
        assert_eq!(g.len(), 4);
    }
}
