//! Comparison of the large-`t` bounds with the largest known value of
//! `|ζ(1/2+it)|`.

use serde::Serialize;

use crate::error::Result;
use crate::interval::Interval;
use crate::pipeline::{c0_bound, vdc_zeta_bound, T0};

/// Reference point and modulus, stored as exact decimal strings.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LargeValueRecord {
    pub t: &'static str,
    pub zeta_modulus: &'static str,
}

impl LargeValueRecord {
    pub const REFERENCE: LargeValueRecord = LargeValueRecord {
        t: "39246764589894309155251169284104.050622",
        zeta_modulus: "16244.86526",
    };

    pub fn t_interval(&self) -> Result<Interval> {
        Interval::from_decimal(self.t)
    }

    pub fn modulus_interval(&self) -> Result<Interval> {
        Interval::from_decimal(self.zeta_modulus)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LargeValueReport {
    pub record: LargeValueRecord,
    /// `0.63 T^{1/6} log T`.
    pub c0_bound: Interval,
    /// `a₁ T^{1/6} log T + a₂ T^{1/6} + a₃`.
    pub vdc_bound: Interval,
    pub c0_ratio: Interval,
    pub vdc_ratio: Interval,
    /// Nearest integer to the ratio when the whole enclosure agrees on it.
    pub c0_ratio_rounded: Option<i64>,
    pub vdc_ratio_rounded: Option<i64>,
}

fn rounds_to(x: Interval) -> Option<i64> {
    let (a, b) = (x.lo().round(), x.hi().round());
    (a == b).then_some(a as i64)
}

pub fn large_value_comparison(a: [Interval; 3]) -> Result<LargeValueReport> {
    let record = LargeValueRecord::REFERENCE;
    let t = record.t_interval()?;
    let z = record.modulus_interval()?;
    let c0b = c0_bound(t)?;
    let vdcb = vdc_zeta_bound(t, a, T0)?;
    let c0_ratio = c0b.div(z)?;
    let vdc_ratio = vdcb.div(z)?;
    Ok(LargeValueReport {
        record,
        c0_bound: c0b,
        vdc_bound: vdcb,
        c0_ratio,
        vdc_ratio,
        c0_ratio_rounded: rounds_to(c0_ratio),
        vdc_ratio_rounded: rounds_to(vdc_ratio),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{derive_vdc_constants, PipelineConstants};

    #[test]
    fn c0_bound_at_reference_point() {
        let d = derive_vdc_constants(&PipelineConstants::standard().unwrap()).unwrap();
        let r = large_value_comparison(d.a()).unwrap();
        assert!(r.c0_bound.hi() <= 8_448_744.0);
        assert!(
            r.c0_bound.contains(8_448_743.64) || (r.c0_bound.mid() - 8_448_743.64).abs() < 0.01
        );
        assert_eq!(r.vdc_ratio_rounded, Some(507));
        assert!(r.c0_ratio.contains(520.087) || (r.c0_ratio.mid() - 520.087).abs() < 1e-3);
    }
}
