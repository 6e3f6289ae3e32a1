use crate::CgoSolution;
use field_core::Complex64;

fn cutoff(r: f64) -> f64 {
    // C^∞, equal to 1 on r ≤ 1.2 and 0 on r ≥ 1.8
    let t = (r - 1.2) / 0.6;
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        b / (a + b)
    }
}

/// `‖D^{1+s}(ψf)‖_{L²(𝔻)}` with `ψ` a smooth cutoff equal to 1 near the closed disk.
pub fn regularity_norm(sol: &CgoSolution, s: f64) -> f64 {
    let g = *sol.f.grid();
    let local = sol.f.map_with_z(|z, v| v * cutoff(z.norm()));
    let d = sobolev::frac_deriv(&local, 1.0 + s).expect("order is nonnegative");
    d.lp_norm(2.0, Some(&g.disk_mask(1.0)))
}

/// `∫_𝔻 |∂f|^{−p} dA` with `∂f = ikf·∂φ`.
pub fn inverse_gradient_integral(sol: &CgoSolution, p: f64) -> f64 {
    let g = *sol.f.grid();
    let ik = Complex64::i() * sol.k;
    let w = sol.f.zip_with(&sol.dphi, |f, d| Complex64::new((ik * f * d).norm().powf(-p), 0.0));
    let mask = g.disk_mask(1.0);
    mask.indices().map(|i| w.samples()[i].re).sum::<f64>() * g.h() * g.h()
}


/// Line `log v ≤ log_constant + rate·k + margin` fitted by least squares to
/// `(k, log v)`; `margin` is the largest positive residual.
#[derive(Clone, Copy, Debug)]
pub struct Envelope {
    pub log_constant: f64,
    pub rate: f64,
    pub margin: f64,
}

pub fn exponential_envelope(ks: &[f64], values: &[f64]) -> Option<Envelope> {
    if ks.len() != values.len() || values.iter().any(|v| !(*v > 0.0)) {
        return None;
    }
    let pts: Vec<(f64, f64)> = ks.iter().zip(values).map(|(k, v)| (*k, v.ln())).collect();
    let rate = crate::decay::ls_slope(&pts)?;
    let n = pts.len() as f64;
    let log_constant = pts.iter().map(|p| p.1 - rate * p.0).sum::<f64>() / n;
    let margin = pts.iter().map(|p| p.1 - log_constant - rate * p.0).fold(0.0, f64::max);
    Some(Envelope { log_constant, rate, margin })
}
