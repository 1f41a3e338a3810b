//! Enclosures against an independent plain-f64 Euler–Maclaurin evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vdc_zeta::zeta::{em_zeta_enclosure, rs_upper_bound, EmConfig};
use vdc_zeta::Interval;

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn scale(self, k: f64) -> C {
        C(self.0 * k, self.1 * k)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C(
            (self.0 * o.0 + self.1 * o.1) / d,
            (self.1 * o.0 - self.0 * o.1) / d,
        )
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// `n^{-s}` for real `n > 0`.
fn npow(n: f64, s: C) -> C {
    let l = n.ln();
    let m = (-s.0 * l).exp();
    let a = -s.1 * l;
    C(m * a.cos(), m * a.sin())
}

/// `ζ(1/2 + it)` by Euler–Maclaurin with `N = ⌈t⌉ + 30` and six corrections.
fn zeta_f64(t: f64) -> C {
    let s = C(0.5, t);
    let n = t.abs().ceil() + 30.0;
    let mut sum = C(0.0, 0.0);
    let mut k = 1.0;
    while k < n {
        sum = sum.add(npow(k, s));
        k += 1.0;
    }
    let one_minus_s = C(1.0 - s.0, -s.1);
    sum = sum.add(npow(n, C(-one_minus_s.0, -one_minus_s.1)).div(C(s.0 - 1.0, s.1)));
    sum = sum.add(npow(n, s).scale(0.5));
    // B_{2k}/(2k)!
    let coeff = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    // (s)_{2k-1} N^{-s-2k+1}
    let mut rising = s;
    let mut pow = npow(n, C(s.0 + 1.0, s.1));
    for (j, c) in coeff.iter().enumerate() {
        sum = sum.add(rising.mul(pow).scale(*c));
        let m = 2.0 * j as f64 + 1.0;
        rising = rising.mul(C(s.0 + m, s.1)).mul(C(s.0 + m + 1.0, s.1));
        pow = pow.scale(1.0 / (n * n));
    }
    sum
}

fn distance(x: Interval, v: f64) -> f64 {
    if x.contains(v) {
        0.0
    } else {
        (x.lo() - v).max(v - x.hi())
    }
}

#[test]
fn reference_values() {
    let z = zeta_f64(0.0);
    assert!((z.0 + 1.4603545088095868).abs() < 1e-12 && z.1.abs() < 1e-14);
    assert!(zeta_f64(14.134725141734693).abs() < 1e-12);
}

#[test]
fn point_enclosures_contain_independent_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = EmConfig::twice_t().with_corrections(4);
    for _ in 0..400 {
        let t = rng.gen_range(3.0..400.0);
        let e = em_zeta_enclosure(Interval::point(t), &cfg).unwrap();
        let z = zeta_f64(t);
        // the reference carries roughly 1e-13 of its own rounding error
        assert!(
            distance(e.value.re, z.0) < 1e-11,
            "re at {t}: {:?} vs {}",
            e.value.re,
            z.0
        );
        assert!(
            distance(e.value.im, z.1) < 1e-11,
            "im at {t}: {:?} vs {}",
            e.value.im,
            z.1
        );
        assert!(distance(e.modulus, z.abs()) < 1e-11);
        assert!(e.modulus.width() < 1e-8);
    }
}

#[test]
fn interval_envelopes_dominate_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (lo, hi, q, cfg) in [
        (0.0, 3.0, 16384.0, EmConfig::sixty_t_plus_one()),
        (3.0, 200.0, 128.0, EmConfig::twice_t()),
    ] {
        for _ in 0..150 {
            let k = rng.gen_range((lo * q) as u64..(hi * q) as u64);
            let piece = Interval::from_ratio(k as i64, q as i64)
                .hull(Interval::from_ratio(k as i64 + 1, q as i64));
            let e = em_zeta_enclosure(piece, &cfg).unwrap();
            for _ in 0..5 {
                let t = rng.gen_range(piece.lo().max(lo)..piece.hi().min(hi));
                let z = zeta_f64(t);
                assert!(z.abs() <= e.modulus.hi() + 1e-11, "t = {t}");
                assert!(e.value.re.contains(z.0) || distance(e.value.re, z.0) < 1e-11);
                assert!(e.value.im.contains(z.1) || distance(e.value.im, z.1) < 1e-11);
            }
        }
    }
}

#[test]
fn riemann_siegel_upper_bound_dominates() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let t = rng.gen_range(200.0..3000.0);
        let u = rs_upper_bound(Interval::point(t)).unwrap();
        assert!(zeta_f64(t).abs() <= u.hi(), "t = {t}");
    }
}

#[test]
fn conjugate_symmetry() {
    let cfg = EmConfig::twice_t().with_corrections(3);
    for t in [5.0, 21.022039638771555, 77.7] {
        let a = em_zeta_enclosure(Interval::point(t), &cfg).unwrap();
        let b = em_zeta_enclosure(Interval::point(-t), &cfg).unwrap();
        assert!(a.value.re.intersect(b.value.re).is_some());
        assert!(a.value.im.intersect(-b.value.im).is_some());
    }
}
