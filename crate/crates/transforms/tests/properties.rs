use field_core::{d, random_trig, Complex64, ComplexField, Grid};
use proptest::prelude::*;
use transforms::{beurling, cauchy_periodic, shifted_beurling, shifted_beurling_multiplier};

fn grid() -> Grid {
    Grid::new(32, 2.0).unwrap()
}

fn rel(a: &ComplexField, b: &ComplexField) -> f64 {
    a.sub(b).l2() / b.l2()
}

/// A lattice-aligned k whose shift `n·bridge(k)` stays inside the usable band.
fn lattice_k(g: &Grid, a: i64, b: i64) -> Complex64 {
    // bridge(k) = 2k̄ = (a, b)·π/S
    Complex64::new(a as f64, -(b as f64)) * (g.dxi() / 2.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_of_cauchy_is_beurling(seed in any::<u64>()) {
        let f = random_trig(grid(), 8, seed);
        prop_assert!(d(&cauchy_periodic(&f)).sub(&beurling(&f)).l2() <= 1e-10 * f.l2());
    }

    #[test]
    fn conjugated_action_is_isometric(seed in any::<u64>()) {
        let f = random_trig(grid(), 8, seed);
        prop_assert!((beurling(&f).conj().l2() - f.l2()).abs() <= 1e-12 * f.l2());
    }

    #[test]
    fn shifted_forms_agree(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4, n in 1u32..3) {
        // ξ₀ = n·bridge(k) outside the band, so no mode of f sits at the annihilated frequency
        let m = n as i64 * a.abs().max(b.abs());
        prop_assume!(m > 3 && m <= 8);
        let g = grid();
        let f = random_trig(g, 3, seed);
        let k = lattice_k(&g, a, b);
        let conj_form = shifted_beurling(&f, n, k).unwrap();
        let mult_form = shifted_beurling_multiplier(&f, n, k).unwrap();
        prop_assert!(rel(&conj_form, &mult_form) <= 1e-10);
        prop_assert!((conj_form.l2() / f.l2() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn shifted_commutes_with_d(seed in any::<u64>(), a in -2i64..=2, b in 1i64..=2) {
        let g = grid();
        let f = random_trig(g, 4, seed);
        let k = lattice_k(&g, a, b);
        let lhs = shifted_beurling(&d(&f), 1, k).unwrap();
        let rhs = d(&shifted_beurling(&f, 1, k).unwrap());
        prop_assert!(lhs.sub(&rhs).l2() <= 1e-10 * d(&f).l2());
    }
}
