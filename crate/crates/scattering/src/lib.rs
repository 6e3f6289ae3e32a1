//! Scattering transform `τ(k) = (1/2π)∫_𝔻 ∂_z F dA`, `F = conj(M_μ − M_{−μ})`,
//! and the residual of `∂_k̄u = −iτ(k)ū` for `u = Re f_μ + i Im f_{−μ}`.
//!
//! The prefactor `1/2π` is the one for which the d-bar equation holds with the
//! exponential convention `f = e^{ikz}M`; see the tests.

use cgo::{solve_cgo, u_gamma, CgoError, CgoOptions, CgoSolution};
use field_core::{Complex64, ComplexField};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScatteringError {
    #[error(transparent)]
    Cgo(#[from] CgoError),
    #[error("no sample points given")]
    NoSamples,
    #[error("trace radius {radius} does not fit in the box of half-width {s}")]
    TraceOutsideBox { radius: f64, s: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Grid quadrature of `∂_zF` over the disk.
    Area,
    /// `(i/2)∮F dz̄` on the circle of the given radius, trapezoid rule on
    /// bilinear traces.
    Boundary { radius: f64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Area => write!(f, "area"),
            Method::Boundary { .. } => write!(f, "boundary"),
        }
    }
}

/// Trapezoid nodes on the trace circle.
pub const TRACE_NODES: usize = 4096;

/// `f_μ` and `f_{−μ}` at `k` with `λ = 1`.
pub fn solve_pair(mu: &ComplexField, k: Complex64, opts: &CgoOptions) -> Result<(CgoSolution, CgoSolution), CgoError> {
    let one = Complex64::new(1.0, 0.0);
    let fp = solve_cgo(mu, k, one, opts)?;
    let mut o = opts.clone();
    if let Some(p) = &opts.initial_phi {
        // φ_{−μ} − z ≈ −(φ_μ − z) to first order
        o.initial_phi = Some(p.map_with_z(|z, v| 2.0 * z - v));
    }
    let fm = solve_cgo(&mu.scale(-one), k, one, &o)?;
    Ok((fp, fm))
}

/// `τ` from an already solved `(μ, −μ)` pair.
pub fn tau_from_pair(fp: &CgoSolution, fm: &CgoSolution, method: Method) -> Result<Complex64, ScatteringError> {
    let g = *fp.f.grid();
    match method {
        Method::Area => {
            // ∂̄M = ikM·∂̄φ, and ∂_z conj(G) = conj(∂̄G)
            let ik = Complex64::i() * fp.k;
            let integrand = fp.m.zip_with(&fp.h, |m, h| ik * m * h).sub(&fm.m.zip_with(&fm.h, |m, h| ik * m * h)).conj();
            Ok(integrand.integral() / (2.0 * PI))
        }
        Method::Boundary { radius } => {
            if radius >= g.s() - g.h() {
                return Err(ScatteringError::TraceOutsideBox { radius, s: g.s() });
            }
            let big_f = fp.m.sub(&fm.m).conj();
            let dt = 2.0 * PI / TRACE_NODES as f64;
            let sum: Complex64 = (0..TRACE_NODES)
                .map(|i| {
                    let e = Complex64::from_polar(1.0, i as f64 * dt);
                    // dz̄ = −i r e^{−iθ} dθ
                    big_f.bilinear(radius * e) * (-Complex64::i() * radius * e.conj())
                })
                .sum();
            Ok(Complex64::new(0.0, 0.5) * sum * dt / (2.0 * PI))
        }
    }
}

pub fn tau(mu: &ComplexField, k: Complex64, method: Method, opts: &CgoOptions) -> Result<Complex64, ScatteringError> {
    let (fp, fm) = solve_pair(mu, k, opts)?;
    tau_from_pair(&fp, &fm, method)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TauSample {
    pub k: Complex64,
    pub tau: Complex64,
    pub method: Method,
    /// d-bar residual at this `k` when it was computed.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct ScatteringSamples {
    pub samples: Vec<TauSample>,
}

impl ScatteringSamples {
    /// `τ` on a list of `k`, each solved independently, rows in input order.
    pub fn compute(mu: &ComplexField, ks: &[Complex64], methods: &[Method], opts: &CgoOptions) -> Result<Self, ScatteringError> {
        let rows: Vec<Vec<TauSample>> = ks
            .par_iter()
            .map(|&k| {
                let (fp, fm) = solve_pair(mu, k, opts)?;
                methods
                    .iter()
                    .map(|&method| Ok(TauSample { k, tau: tau_from_pair(&fp, &fm, method)?, method, residual: None }))
                    .collect::<Result<Vec<_>, ScatteringError>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { samples: rows.into_iter().flatten().collect() })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["k_re", "k_im", "tau_re", "tau_im", "method", "residual"])?;
        for s in &self.samples {
            wr.write_record([
                s.k.re.to_string(),
                s.k.im.to_string(),
                s.tau.re.to_string(),
                s.tau.im.to_string(),
                s.method.to_string(),
                s.residual.map(|r| r.to_string()).unwrap_or_default(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DbarReport {
    pub k: Complex64,
    pub delta_k: f64,
    pub tau: Complex64,
    /// `‖∂_k̄u + iτū‖ / ‖τū‖` over the samples, `0` when both sides vanish.
    pub residual: f64,
}

fn u_of(mu: &ComplexField, k: Complex64, opts: &CgoOptions, warm: Option<(&CgoSolution, &CgoSolution)>) -> Result<ComplexField, ScatteringError> {
    let one = Complex64::new(1.0, 0.0);
    let (mut op, mut om) = (opts.clone(), opts.clone());
    if let Some((p, m)) = warm {
        op.initial_phi = Some(p.phi.clone());
        om.initial_phi = Some(m.phi.clone());
    }
    let fp = solve_cgo(mu, k, one, &op)?;
    let fm = solve_cgo(&mu.scale(-one), k, one, &om)?;
    Ok(u_gamma(&fp, &fm)?.u)
}

/// Central difference of `∂_k̄u` against `−iτ(k)ū` at the sample points.
///
/// The difference is taken on `e^{−ikz}u`, which is smooth in `k` uniformly
/// in `z`, and multiplied back by the `k`-holomorphic factor `e^{ikz}`.
pub fn dbar_residual(
    mu: &ComplexField,
    k: Complex64,
    delta_k: f64,
    z_samples: &[Complex64],
    opts: &CgoOptions,
) -> Result<DbarReport, ScatteringError> {
    Ok(dbar_residuals(mu, k, &[delta_k], z_samples, opts)?.remove(0))
}

/// [`dbar_residual`] for several steps, sharing the solve at `k`.
pub fn dbar_residuals(
    mu: &ComplexField,
    k: Complex64,
    delta_ks: &[f64],
    z_samples: &[Complex64],
    opts: &CgoOptions,
) -> Result<Vec<DbarReport>, ScatteringError> {
    if z_samples.is_empty() {
        return Err(ScatteringError::NoSamples);
    }
    let (fp, fm) = solve_pair(mu, k, opts)?;
    let u0 = u_gamma(&fp, &fm)?.u;
    let tau = tau_from_pair(&fp, &fm, Method::Area)?;
    let base: Vec<Complex64> = z_samples.iter().map(|&z| u0.bilinear(z)).collect();
    let mut reports = Vec::with_capacity(delta_ks.len());
    for &delta_k in delta_ks {
        let steps = [Complex64::new(delta_k, 0.0), Complex64::new(-delta_k, 0.0), Complex64::new(0.0, delta_k), Complex64::new(0.0, -delta_k)];
        let us = steps
            .par_iter()
            .map(|s| {
                let kk = k + s;
                let u = u_of(mu, kk, opts, Some((&fp, &fm)))?;
                Ok(u.map_with_z(|z, v| v * (-Complex64::i() * kk * z).exp()))
            })
            .collect::<Result<Vec<_>, ScatteringError>>()?;
        let (mut num, mut den) = (0.0, 0.0);
        for (&z, u) in z_samples.iter().zip(&base) {
            let w: Vec<Complex64> = us.iter().map(|f| f.bilinear(z)).collect();
            let dw = 0.5 * ((w[0] - w[1]) / (2.0 * delta_k) + Complex64::i() * (w[2] - w[3]) / (2.0 * delta_k));
            let lhs = (Complex64::i() * k * z).exp() * dw;
            let rhs = -Complex64::i() * tau * u.conj();
            num += (lhs - rhs).norm_sqr();
            den += rhs.norm_sqr();
        }
        let residual = if den == 0.0 { num.sqrt() } else { (num / den).sqrt() };
        reports.push(DbarReport { k, delta_k, tau, residual });
    }
    Ok(reports)
}

/// Grid nodes with `|z| < r`.
pub fn disk_samples(g: &field_core::Grid, r: f64) -> Vec<Complex64> {
    g.disk_mask(r).indices().map(|i| g.z(i)).collect()
}
