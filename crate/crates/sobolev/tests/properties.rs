use field_core::{random_trig, Complex64, ComplexField, Grid};
use proptest::prelude::*;
use sobolev::sobolev_norm;

fn grid() -> Grid {
    Grid::new(32, 2.0).unwrap()
}

fn rough(seed: u64) -> ComplexField {
    // trig field plus a jump so that high orders see real growth
    random_trig(grid(), 6, seed).map_with_z(|z, v| if z.norm() < 1.0 { v + 1.0 } else { v })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn monotone_in_order(seed in any::<u64>(), a in 0.0f64..1.9, da in 0.0f64..0.1) {
        let f = rough(seed);
        let lo = sobolev_norm(&f, a).unwrap().value;
        let hi = sobolev_norm(&f, a + da).unwrap().value;
        prop_assert!(hi >= lo * (1.0 - 1e-14));
    }

    #[test]
    fn log_convex_in_order(seed in any::<u64>(), a0 in 0.0f64..1.0, a1 in 1.0f64..2.0, theta in 0.0f64..1.0) {
        let f = rough(seed);
        let n0 = sobolev_norm(&f, a0).unwrap().value;
        let n1 = sobolev_norm(&f, a1).unwrap().value;
        let mid = sobolev_norm(&f, theta * a0 + (1.0 - theta) * a1).unwrap().value;
        let bound = n0.powf(theta) * n1.powf(1.0 - theta);
        prop_assert!(mid <= bound * (1.0 + 1e-10));
    }

    #[test]
    fn lebesgue_interpolation(seed in any::<u64>(), p0 in 0.3f64..2.0, p1 in 2.0f64..12.0) {
        let f = rough(seed).map(|v| v * Complex64::new(0.7, 0.2));
        // 1/2 = θ/p0 + (1−θ)/p1
        let theta = (0.5 - 1.0 / p1) / (1.0 / p0 - 1.0 / p1);
        prop_assume!((0.0..=1.0).contains(&theta));
        let l2 = f.lp_norm(2.0, None);
        let bound = f.lp_norm(p0, None).powf(theta) * f.lp_norm(p1, None).powf(1.0 - theta);
        prop_assert!(l2 <= bound * (1.0 + 1e-10));
    }
}
