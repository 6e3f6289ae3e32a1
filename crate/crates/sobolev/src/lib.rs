//! Fractional smoothness of sampled fields.
//!
//! `frac_deriv` is the homogeneous (Riesz) derivative `|ξ|^a`; `sobolev_norm`
//! is the inhomogeneous Bessel-potential norm `‖(1+|ξ|²)^{a/2} f̂‖`. The Besov
//! seminorm is the double sum over exact periodic grid translations.

use field_core::{apply_symbol, fft2_inplace, Complex64, ComplexField, FourierSymbol, Grid, Spectrum, ZeroPolicy};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SobolevError {
    #[error("smoothness order {0} outside the admissible range")]
    InvalidOrder(f64),
    #[error("exponent {0} must be positive")]
    InvalidExponent(f64),
    #[error("shift radius {y} exceeds the half-width {s}")]
    ShiftTooLarge { y: f64, s: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BesselFourier,
    BesovDoubleIntegral,
}

#[derive(Clone, Debug, Serialize)]
pub struct SobolevReport {
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
    pub value: f64,
    pub method: Method,
    pub n: usize,
    pub s: f64,
    /// Bound on the part of the Besov sum beyond the shift radius.
    pub tail_estimate: Option<f64>,
}

pub fn riesz_symbol(a: f64) -> FourierSymbol {
    FourierSymbol::new(move |xi| Complex64::new(xi.norm().powf(a), 0.0), ZeroPolicy::Annihilate)
}

pub fn bessel_symbol(a: f64) -> FourierSymbol {
    FourierSymbol::new(move |xi| Complex64::new((1.0 + xi.norm_sqr()).powf(0.5 * a), 0.0), ZeroPolicy::Regular)
}

/// `D^a f` with symbol `|ξ|^a`.
pub fn frac_deriv(f: &ComplexField, a: f64) -> Result<ComplexField, SobolevError> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(SobolevError::InvalidOrder(a));
    }
    if a == 0.0 {
        // the zero mode stays: D⁰ is the identity
        return Ok(f.clone());
    }
    Ok(apply_symbol(f, &riesz_symbol(a)))
}

fn weighted_energy(f: &ComplexField, weight: impl Fn(f64) -> f64 + Sync) -> f64 {
    let sp = Spectrum::of(f);
    let g = sp.grid;
    // row sums in parallel, total in fixed order so the value does not depend on the thread count
    let n = g.n();
    let rows: Vec<f64> = sp
        .data
        .par_chunks(n)
        .enumerate()
        .map(|(r, row)| row.iter().enumerate().map(|(j, v)| weight(g.xi(r * n + j).norm_sqr()) * v.norm_sqr()).sum())
        .collect();
    let s: f64 = rows.iter().sum();
    s * g.dxi() * g.dxi() / (4.0 * PI * PI)
}

/// `‖(1+|ξ|²)^{a/2} f̂‖₂` under the Parseval normalization.
pub fn sobolev_norm(f: &ComplexField, a: f64) -> Result<SobolevReport, SobolevError> {
    if !(0.0..=2.0).contains(&a) {
        return Err(SobolevError::InvalidOrder(a));
    }
    let value = weighted_energy(f, |r2| (1.0 + r2).powf(a)).sqrt();
    Ok(SobolevReport {
        alpha: a,
        p: 2.0,
        q: 2.0,
        value,
        method: Method::BesselFourier,
        n: f.grid().n(),
        s: f.grid().s(),
        tail_estimate: None,
    })
}

/// Homogeneous seminorm `‖ |ξ|^a f̂ ‖₂`.
pub fn homogeneous_seminorm(f: &ComplexField, a: f64) -> f64 {
    weighted_energy(f, |r2| if r2 == 0.0 { 0.0 } else { r2.powf(a) }).sqrt()
}

/// Shift set of the Besov sum.
#[derive(Clone, Copy, Debug)]
pub struct ShiftLattice {
    /// Shifts satisfy `0 < |y| ≤ y_max`; `None` means `S/2`.
    pub y_max: Option<f64>,
    pub stride: usize,
}

impl Default for ShiftLattice {
    fn default() -> Self {
        Self { y_max: None, stride: 1 }
    }
}

impl ShiftLattice {
    fn shifts(&self, g: &Grid) -> Result<(Vec<(i64, i64)>, f64), SobolevError> {
        let y = self.y_max.unwrap_or(0.5 * g.s());
        if y > g.s() {
            return Err(SobolevError::ShiftTooLarge { y, s: g.s() });
        }
        let st = self.stride.max(1) as i64;
        let m = (y / g.h()).floor() as i64;
        let mut out = Vec::new();
        for q in (-m..=m).filter(|q| q % st == 0) {
            for p in (-m..=m).filter(|p| p % st == 0) {
                let r = (p as f64).hypot(q as f64) * g.h();
                if (p, q) != (0, 0) && r <= y {
                    out.push((p, q));
                }
            }
        }
        Ok((out, y))
    }
}

fn check_besov(a: f64, p: f64, q: f64) -> Result<(), SobolevError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(SobolevError::InvalidOrder(a));
    }
    for e in [p, q] {
        if !(e > 0.0) || !e.is_finite() {
            return Err(SobolevError::InvalidExponent(e));
        }
    }
    Ok(())
}

/// `(Σ_y ω_p(f)(y)^q |y|^{−(2+aq)} h²)^{1/q}` with `ω_p(f)(y) = ‖f(·+y) − f‖_p`.
pub fn besov_seminorm(f: &ComplexField, a: f64, p: f64, q: f64, lattice: ShiftLattice) -> Result<SobolevReport, SobolevError> {
    check_besov(a, p, q)?;
    let g = *f.grid();
    let (shifts, y_max) = lattice.shifts(&g)?;
    let n = g.n() as i64;
    let h2 = g.h() * g.h();
    let cell = h2 * (lattice.stride.max(1) as f64).powi(2);
    let data = f.samples();
    let terms: Vec<f64> = shifts
        .par_iter()
        .map(|&(sp, sq)| {
            let mut acc = 0.0;
            for k in 0..n {
                let k2 = (k + sq).rem_euclid(n);
                let (row, row2) = ((k * n) as usize, (k2 * n) as usize);
                for j in 0..n {
                    let j2 = (j + sp).rem_euclid(n) as usize;
                    let d = (data[row2 + j2] - data[row + j as usize]).norm();
                    acc += if p == 2.0 { d * d } else { d.powf(p) };
                }
            }
            let omega = (acc * h2).powf(1.0 / p);
            let r = (sp as f64).hypot(sq as f64) * g.h();
            omega.powf(q) * r.powf(-(2.0 + a * q)) * cell
        })
        .collect();
    let sum: f64 = terms.iter().sum();
    let tail = 2.0 * f.lp_norm(p, None) * (2.0 * PI / (a * q * y_max.powf(a * q))).powf(1.0 / q);
    Ok(SobolevReport {
        alpha: a,
        p,
        q,
        value: sum.powf(1.0 / q),
        method: Method::BesovDoubleIntegral,
        n: g.n(),
        s: g.s(),
        tail_estimate: Some(tail),
    })
}

/// `c(a)` in `∫_{ℝ²}(2 − 2cos⟨ξ,y⟩)|y|^{−2−2a} dy = c(a)|ξ|^{2a}`.
pub fn besov_constant(a: f64) -> f64 {
    use statrs::function::gamma::gamma;
    2.0 * PI * gamma(1.0 - a) / (a * 4f64.powf(a) * gamma(1.0 + a))
}

/// The shift-lattice quadrature `c_lat(ξ) = Σ_y (2 − 2cos⟨ξ,y⟩)|y|^{−2−2a} h²`
/// at every frequency of the grid, row-major in FFT order.
pub fn lattice_multiplier(g: &Grid, a: f64, lattice: ShiftLattice) -> Result<Vec<f64>, SobolevError> {
    check_besov(a, 2.0, 2.0)?;
    let (shifts, _) = lattice.shifts(g)?;
    let n = g.n();
    let cell = g.h() * g.h() * (lattice.stride.max(1) as f64).powi(2);
    let mut w = vec![Complex64::new(0.0, 0.0); n * n];
    let mut total = 0.0;
    for &(p, q) in &shifts {
        let r = (p as f64).hypot(q as f64) * g.h();
        let v = r.powf(-2.0 - 2.0 * a) * cell;
        let idx = q.rem_euclid(n as i64) as usize * n + p.rem_euclid(n as i64) as usize;
        w[idx] += v;
        total += v;
    }
    fft2_inplace(&mut w, n, false);
    Ok(w.iter().map(|c| 2.0 * total - 2.0 * c.re).collect())
}

/// `((1/4π²) Σ c_lat(ξ)|f̂(ξ)|² Δξ²)^{1/2}`, the Fourier image of the (2,2) Besov sum.
pub fn besov_fourier(f: &ComplexField, a: f64, lattice: ShiftLattice) -> Result<f64, SobolevError> {
    let c = lattice_multiplier(f.grid(), a, lattice)?;
    let sp = Spectrum::of(f);
    let g = sp.grid;
    let s: f64 = sp.data.iter().zip(&c).map(|(v, w)| w * v.norm_sqr()).sum();
    Ok((s * g.dxi() * g.dxi() / (4.0 * PI * PI)).sqrt())
}
