use dtn::{dtn_distance, DtnMatrix};
use field_core::Complex64;
use proptest::prelude::*;

fn matrix(n_b: usize, vals: &[(f64, f64)]) -> DtnMatrix {
    let mut m = DtnMatrix::zeros(n_b);
    for (e, v) in m.entries.iter_mut().zip(vals) {
        *e = Complex64::new(v.0, v.1);
    }
    m
}

fn entries() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 49)
}

proptest! {
    #[test]
    fn distance_is_a_metric(a in entries(), b in entries(), c in entries(), s in -3.0f64..3.0) {
        let (a, b, c) = (matrix(3, &a), matrix(3, &b), matrix(3, &c));
        let ab = dtn_distance(&a, &b).unwrap();
        prop_assert!((ab - dtn_distance(&b, &a).unwrap()).abs() <= 1e-12 * ab.max(1.0));
        prop_assert!(ab <= dtn_distance(&a, &c).unwrap() + dtn_distance(&c, &b).unwrap() + 1e-12);
        let mut sa = a.clone();
        for e in sa.entries.iter_mut() {
            *e *= s;
        }
        let z = DtnMatrix::zeros(3);
        prop_assert!((dtn_distance(&sa, &z).unwrap() - s.abs() * dtn_distance(&a, &z).unwrap()).abs() <= 1e-10 * (1.0 + ab));
    }
}
