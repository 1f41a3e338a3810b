use proptest::prelude::*;
use vdc_zeta::pipeline::eta0;
use vdc_zeta::vdc::*;
use vdc_zeta::Interval;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn log_blocks_satisfy_every_inequality(
        log_t in (1e4f64).ln()..(1e8f64).ln(),
        r_frac in 0.0..1.0f64,
        len_frac in 0.0..1.0f64,
    ) {
        let t = log_t.exp();
        let k = t.cbrt().ceil() as u64;
        let n1 = (t / (2.0 * std::f64::consts::PI)).sqrt().floor() as u64;
        let r_max = (n1 / k).max(1);
        let r = 1 + ((r_max - 1) as f64 * r_frac) as u64;
        let len = 1 + ((k - 1) as f64 * len_frac) as u64;
        let inst = OracleInstance { t, r, k, len };
        let o = check_instance(&inst, eta0()).unwrap();
        prop_assert!(o.lemma_holds, "{inst:?}");
        prop_assert!(o.weyl_holds, "{inst:?}");
        prop_assert!(o.second_deriv_holds, "{inst:?}");
        prop_assert!(o.chain_ordered, "{inst:?}");
    }

    #[test]
    fn cubic_phases_respect_the_lemma(
        w in 1.5f64..5e4,
        c2 in -0.5f64..0.5,
        c1 in 0.0f64..1.0,
        len in 1u64..600,
    ) {
        // f''' = 1/W exactly, so λ = 1
        let c3 = 1.0 / (6.0 * w);
        let values: Vec<f64> = (0..len)
            .map(|x| {
                let x = x as f64;
                ((c3 * x + c2) * x + c1) * x
            })
            .collect();
        let phase = PhaseModel::Tabulated(values);
        let params = VdcParams::new(len, Interval::point(w), Interval::ONE, eta0()).unwrap();
        let s = brute_force_sum(&phase, len).unwrap();
        let bound = vdc_square_bound(&params).unwrap();
        prop_assert!(s.upper() * s.upper() <= bound.hi(), "W = {w}, L = {len}");
    }

    #[test]
    fn closed_form_chain_is_ordered(
        l in 1u64..2000,
        w in 1.01f64..1e6,
        lambda in 1.0f64..8.0,
    ) {
        let p = VdcParams::new(l, Interval::point(w), Interval::point(lambda), eta0()).unwrap();
        let c = composed_chain(&p).unwrap();
        prop_assert!(c.a_process.lo() <= c.after_weighted_sums.hi());
        prop_assert!(c.after_weighted_sums.lo() <= c.final_bound.hi());
        prop_assert!(c.final_bound.is_subset_of(vdc_square_bound(&p).unwrap())
            || c.final_bound.intersect(vdc_square_bound(&p).unwrap()).is_some());
    }
}

#[test]
fn seeded_instances_are_reproducible() {
    let a = random_instances(7, 50, 1e4, 1e8);
    let b = random_instances(7, 50, 1e4, 1e8);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    assert!(a
        .iter()
        .all(|i| (1e4..=1e8).contains(&i.t) && i.len >= 1 && i.len <= i.k));
}
