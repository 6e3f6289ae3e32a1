use field_core::{apply_symbol, random_trig, Complex64, ComplexField, FourierSymbol, Grid, Spectrum, ZeroPolicy};
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::new(32, 2.0).unwrap()
}

fn rel(a: &ComplexField, b: &ComplexField) -> f64 {
    a.sub(b).l2() / b.l2().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval(seed in any::<u64>(), band in 1i64..12) {
        let f = random_trig(grid(), band, seed);
        let lhs = f.l2().powi(2);
        let rhs = Spectrum::of(&f).energy();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs);
    }

    #[test]
    fn composition(seed in any::<u64>(), a in 0.1f64..2.0, b in -1.0f64..1.0) {
        let f = random_trig(grid(), 8, seed);
        let m1 = FourierSymbol::new(move |xi| Complex64::new(xi.norm().powf(a), b * xi.re), ZeroPolicy::Regular);
        let m2 = FourierSymbol::new(|xi| xi.conj() / xi, ZeroPolicy::Annihilate);
        let two = apply_symbol(&apply_symbol(&f, &m1), &m2);
        let one = apply_symbol(&f, &m1.product(&m2));
        prop_assert!(rel(&two, &one) <= 1e-10);
    }

    #[test]
    fn linearity(s1 in any::<u64>(), s2 in any::<u64>(), ar in -3.0f64..3.0, bi in -3.0f64..3.0) {
        let f = random_trig(grid(), 6, s1);
        let g = random_trig(grid(), 6, s2);
        let (a, b) = (Complex64::new(ar, 0.5), Complex64::new(0.25, bi));
        let m = FourierSymbol::dbar();
        let lhs = apply_symbol(&f.axpby(a, &g, b), &m);
        let rhs = apply_symbol(&f, &m).axpby(a, &apply_symbol(&g, &m), b);
        prop_assert!(rel(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn roundtrip_spectrum(seed in any::<u64>()) {
        let f = random_trig(grid(), 10, seed);
        let back = Spectrum::of(&f).into_field("back");
        prop_assert!(rel(&back, &f) <= 1e-12);
    }
}
