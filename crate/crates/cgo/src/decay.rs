use crate::{solve_cgo, CgoError, CgoOptions};
use beltrami::{principal_solution, BeltramiPair, NeumannOptions, PrincipalSolution};
use field_core::{e_k, Complex64, ComplexField, Spectrum};
use rayon::prelude::*;
use std::io::Write;
use transforms::shifted_beurling;

#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub k: Complex64,
    pub lambda: Complex64,
    pub sup_abs_phi_minus_z: f64,
    pub outer_iterations: usize,
    pub outer_residual: f64,
}

#[derive(Clone, Debug)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
    /// Least-squares slope of `log sup|φ−z|` against `log|k|` over all rows;
    /// `None` when fewer than two rows have a positive sup.
    pub slope: Option<f64>,
}

impl DecayTable {
    /// Ratio of largest to smallest sup over the λ values at each `k`, in row order.
    pub fn lambda_spread(&self) -> Vec<(Complex64, f64)> {
        let mut out: Vec<(Complex64, f64, f64)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(k, _, _)| *k == r.k) {
                Some(e) => {
                    e.1 = e.1.min(r.sup_abs_phi_minus_z);
                    e.2 = e.2.max(r.sup_abs_phi_minus_z);
                }
                None => out.push((r.k, r.sup_abs_phi_minus_z, r.sup_abs_phi_minus_z)),
            }
        }
        out.into_iter().map(|(k, lo, hi)| (k, if hi == 0.0 { 1.0 } else { hi / lo })).collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["k_re", "k_im", "lambda_re", "lambda_im", "sup_abs_phi_minus_z", "outer_iterations", "outer_residual"])?;
        for r in &self.rows {
            wr.write_record([
                r.k.re.to_string(),
                r.k.im.to_string(),
                r.lambda.re.to_string(),
                r.lambda.im.to_string(),
                r.sup_abs_phi_minus_z.to_string(),
                r.outer_iterations.to_string(),
                r.outer_residual.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn ls_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// `sup_z |φ_λ(z,k) − z|` over the product `ks × lambdas`, rows ordered by `k` then `λ`.
pub fn epsilon_decay_table(mu: &ComplexField, ks: &[Complex64], lambdas: &[Complex64], opts: &CgoOptions) -> Result<DecayTable, CgoError> {
    let jobs: Vec<(Complex64, Complex64)> = ks.iter().flat_map(|k| lambdas.iter().map(move |l| (*k, *l))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(k, lambda)| {
            let s = solve_cgo(mu, k, lambda, opts)?;
            Ok(DecayRow {
                k,
                lambda,
                sup_abs_phi_minus_z: s.sup_epsilon(),
                outer_iterations: s.outer_iterations,
                outer_residual: s.outer_residual,
            })
        })
        .collect::<Result<Vec<_>, CgoError>>()?;
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.sup_abs_phi_minus_z > 0.0 && r.k.norm() > 0.0).map(|r| (r.k.norm().ln(), r.sup_abs_phi_minus_z.ln())).collect();
    Ok(DecayTable { slope: ls_slope(&pts), rows })
}

/// Principal solution of `∂̄ψ = (k̄/k)λe_{−k}(z)μ(z)∂ψ`.
pub fn linear_psi(mu: &ComplexField, k: Complex64, lambda: Complex64, opts: NeumannOptions) -> Result<PrincipalSolution, CgoError> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(CgoError::ZeroK);
    }
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(CgoError::InvalidLambda(lambda.norm()));
    }
    let sup = mu.sup();
    if !(sup < 1.0) {
        return Err(CgoError::NotElliptic(sup));
    }
    let rot = lambda * k.conj() / k;
    let coef = mu.map_with_z(|z, m| rot * e_k(-k, z) * m).with_tag("mu_psi");
    let big_k = if sup > 0.0 { (1.0 + sup) / (1.0 - sup) } else { 2.0 };
    Ok(principal_solution(&BeltramiPair::from_mu(coef, big_k)?, opts)?)
}

#[derive(Clone, Debug)]
pub struct NeumannTerms {
    /// `f₀ = μ`, `fₙ = μ·Tₙ(f_{n−1})`.
    pub terms: Vec<ComplexField>,
    /// Radii `|k|/4, |k|/2, |k|` in the spectral-parameter scale.
    pub radii: [f64; 3],
    /// `tails[n][i] = (∫_{|ξ|>Rᵢ}|f̂ₙ|²)^{1/2}`.
    pub tails: Vec<[f64; 3]>,
}

/// Terms of the Neumann series of the linear decay equation and their Fourier tails.
/// The radii are measured in the spectral-parameter scale, i.e. `Rᵢ` corresponds to
/// the angular frequency `2Rᵢ`.
pub fn neumann_term_fn(mu: &ComplexField, k: Complex64, n_max: u32) -> Result<NeumannTerms, CgoError> {
    let kn = k.norm();
    let radii = [kn / 4.0, kn / 2.0, kn];
    let tail = |f: &ComplexField| {
        let sp = Spectrum::of(f);
        radii.map(|r| sp.tail_energy(2.0 * r).sqrt())
    };
    let mut terms = vec![mu.clone()];
    let mut tails = vec![tail(mu)];
    for n in 1..=n_max {
        let prev = terms.last().expect("f0 present");
        let next = mu.mul(&shifted_beurling(prev, n, k)?).with_tag(format!("f{n}"));
        tails.push(tail(&next));
        terms.push(next);
    }
    Ok(NeumannTerms { terms, radii, tails })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        assert!((ls_slope(&pts).unwrap() + 0.5).abs() < 1e-14);
        assert!(ls_slope(&pts[..1]).is_none());
    }
}
