use crate::LabError;
use beltrami::PrincipalSolution;
use field_core::{apply_symbol, Complex64, ComplexField, FourierSymbol};

/// `μ∘φ` sampled on the grid of `phi`.
pub fn compose_field(mu: &ComplexField, phi: &PrincipalSolution) -> Result<ComplexField, LabError> {
    compose_values(mu, &phi.phi)
}

/// Bicubic Hermite interpolation of `mu` at the points `phi(z)`, with nodal
/// derivatives taken spectrally. Points farther than `3h` from the support of
/// `mu` give exactly zero; other points must lie in the sampled box.
pub fn compose_values(mu: &ComplexField, phi: &ComplexField) -> Result<ComplexField, LabError> {
    let g = *mu.grid();
    if phi.grid() != &g {
        return Err(LabError::GridMismatch);
    }
    let (n, h, s) = (g.n(), g.h(), g.s());
    let support = (0..g.len()).filter(|&i| mu.samples()[i] != Complex64::new(0.0, 0.0)).map(|i| g.z(i).norm()).fold(0.0, f64::max);
    let fx = apply_symbol(mu, &FourierSymbol::dx());
    let fy = apply_symbol(mu, &FourierSymbol::dy());
    let fxy = apply_symbol(&fx, &FourierSymbol::dy());
    let eps = 1e-9 * h;
    let mut out = Vec::with_capacity(g.len());
    for &w in phi.samples() {
        if w.norm() > support + 3.0 * h {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let (px, py) = ((w.re + s) / h, (w.im + s) / h);
        if !(px >= -eps && py >= -eps && px <= (n - 1) as f64 + eps && py <= (n - 1) as f64 + eps) {
            return Err(LabError::OutOfDomain { x: w.re, y: w.im });
        }
        let (j0, k0) = (px.floor().max(0.0) as usize, py.floor().max(0.0) as usize);
        let (t, u) = (px - j0 as f64, py - k0 as f64);
        let basis = |t: f64| {
            let (t2, t3) = (t * t, t * t * t);
            ([2.0 * t3 - 3.0 * t2 + 1.0, -2.0 * t3 + 3.0 * t2], [t3 - 2.0 * t2 + t, t3 - t2])
        };
        let (vt, dt) = basis(t);
        let (vu, du) = basis(u);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, jj) in [(0usize, j0), (1, (j0 + 1) % n)] {
            for (b, kk) in [(0usize, k0), (1, (k0 + 1) % n)] {
                let i = kk * n + jj;
                acc += mu.samples()[i] * (vt[a] * vu[b])
                    + fx.samples()[i] * (h * dt[a] * vu[b])
                    + fy.samples()[i] * (h * vt[a] * du[b])
                    + fxy.samples()[i] * (h * h * dt[a] * du[b]);
            }
        }
        out.push(acc);
    }
    Ok(ComplexField::from_vec(g, out, format!("{}∘φ", mu.tag()))?)
}
