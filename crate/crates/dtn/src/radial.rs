use crate::{DtnMatrix, RadialLayers};
use field_core::Complex64;

/// `λ_n` for piecewise-constant radial layers by transfer of the ratio
/// `b r^{−|n|} / (a r^{|n|})` of the solution `a r^{|n|} + b r^{−|n|}` across interfaces.
pub fn radial_eigenvalue(layers: &RadialLayers, n: i64) -> f64 {
    let m = n.unsigned_abs() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let mut t = 0.0;
    for (i, &r) in layers.radii.iter().enumerate() {
        let q = layers.values[i] / layers.values[i + 1];
        // (P, Q) inner → outer: P' + Q' = P + Q, P' − Q' = q(P − Q)
        let (p1, q1) = (0.5 * ((1.0 + t) + q * (1.0 - t)), 0.5 * ((1.0 + t) - q * (1.0 - t)));
        let next = layers.radii.get(i + 1).copied().unwrap_or(1.0);
        t = q1 / p1 * (r / next).powf(2.0 * m);
    }
    layers.values.last().copied().expect("at least one layer") * m * (1.0 - t) / (1.0 + t)
}

/// Diagonal DtN matrix of radial layers, exact to round-off.
pub fn radial_dtn_oracle(layers: &RadialLayers, n_b: usize) -> DtnMatrix {
    let mut m = DtnMatrix::zeros(n_b);
    for n in -(n_b as i64)..=n_b as i64 {
        m.set(n, n, Complex64::new(radial_eigenvalue(layers, n), 0.0));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_cases() {
        let one = RadialLayers::new(vec![], vec![1.0]).unwrap();
        let flat = RadialLayers::inclusion(0.3, 1.0).unwrap();
        for n in -10..=10i64 {
            assert_eq!(radial_eigenvalue(&one, n), n.abs() as f64);
            assert!((radial_eigenvalue(&flat, n) - n.abs() as f64).abs() < 1e-14);
        }
        let scaled = RadialLayers::new(vec![], vec![2.5]).unwrap();
        assert_eq!(radial_eigenvalue(&scaled, 3), 7.5);
    }

    #[test]
    fn inclusion_closed_form() {
        // λ_n = n(1 − c r0^{2n}) / (1 + c r0^{2n}) with c = (1−A)/(1+A), A the inner value
        let (r0, a) = (0.3f64, 2.0);
        let l = RadialLayers::inclusion(r0, a).unwrap();
        for n in 1..=8 {
            let c = (1.0 - a) / (1.0 + a);
            let x = c * r0.powi(2 * n);
            let exact = n as f64 * (1.0 - x) / (1.0 + x);
            assert!((radial_eigenvalue(&l, n as i64) - exact).abs() < 1e-13 * exact);
        }
    }
}
