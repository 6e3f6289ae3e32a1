use crate::CgoError;
use beltrami::{principal_solution_from, BeltramiPair, NeumannOptions};
use field_core::{e_k, Complex64, ComplexField};

#[derive(Clone, Debug)]
pub struct CgoOptions {
    /// Outer stop: `‖φ_new − φ_j‖_∞ ≤ tol`.
    pub tol: f64,
    pub max_outer: usize,
    /// Initial relaxation; `None` picks 1 for `‖μ‖_∞ ≤ 0.5`, else 0.5.
    pub omega: Option<f64>,
    pub inner: NeumannOptions,
    /// Starting iterate, e.g. the solution at a nearby `k`.
    pub initial_phi: Option<ComplexField>,
}

impl Default for CgoOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_outer: 200,
            omega: None,
            inner: NeumannOptions { tol: 1e-13, ..NeumannOptions::default() },
            initial_phi: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CgoSolution {
    pub k: Complex64,
    pub lambda: Complex64,
    pub mu: ComplexField,
    pub phi: ComplexField,
    /// `∂̄φ`.
    pub h: ComplexField,
    /// `∂φ`.
    pub dphi: ComplexField,
    /// `e^{ikφ}`.
    pub f: ComplexField,
    /// `e^{ik(φ−z)}`.
    pub m: ComplexField,
    /// `‖∂̄φ − ν(φ)·conj(∂φ)‖₂ / ‖μ‖₂` at the returned iterate.
    pub outer_residual: f64,
    pub outer_iterations: usize,
    pub history: Vec<f64>,
}

impl CgoSolution {
    /// `ε = φ − z`.
    pub fn epsilon(&self) -> ComplexField {
        self.phi.map_with_z(|z, p| p - z).with_tag("epsilon")
    }

    pub fn sup_epsilon(&self) -> f64 {
        self.epsilon().sup()
    }
}

fn finish(
    mu: &ComplexField,
    k: Complex64,
    lambda: Complex64,
    phi: ComplexField,
    h: ComplexField,
    dphi: ComplexField,
    iterations: usize,
    history: Vec<f64>,
) -> CgoSolution {
    let rot = coefficient_rotation(k, lambda);
    let scale = mu.l2();
    let outer_residual = if scale == 0.0 || k == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        let (m, p, hh, dp) = (mu.samples(), phi.samples(), h.samples(), dphi.samples());
        let data: Vec<Complex64> = (0..m.len()).map(|i| hh[i] - rot * m[i] * e_k(-k, p[i]) * dp[i].conj()).collect();
        ComplexField::from_vec(*mu.grid(), data, "r").expect("finite residual").l2() / scale
    };
    let f = phi.map(|p| (Complex64::i() * k * p).exp()).with_tag("f");
    let m = phi.map_with_z(|z, p| (Complex64::i() * k * (p - z)).exp()).with_tag("M");
    CgoSolution { k, lambda, mu: mu.clone(), phi, h, dphi, f, m, outer_residual, outer_iterations: iterations, history }
}

fn coefficient_rotation(k: Complex64, lambda: Complex64) -> Complex64 {
    if k == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    -lambda * k.conj() / k
}

/// Damped Picard iteration on the frozen-coefficient linear problem.
pub fn solve_cgo(mu: &ComplexField, k: Complex64, lambda: Complex64, opts: &CgoOptions) -> Result<CgoSolution, CgoError> {
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(CgoError::InvalidLambda(lambda.norm()));
    }
    let g = *mu.grid();
    let sup = mu.sup();
    if !(sup < 1.0) {
        return Err(CgoError::NotElliptic(sup));
    }
    let out = mu.sup_outside(1.0);
    if out > 0.0 {
        return Err(beltrami::BeltramiError::SupportViolation(out).into());
    }
    let z = ComplexField::coordinate(g).with_tag("phi");
    let zero = ComplexField::zeros(g, "h");
    let one = ComplexField::constant(g, Complex64::new(1.0, 0.0), "dphi");
    if k == Complex64::new(0.0, 0.0) {
        return Ok(finish(mu, k, lambda, z, zero, one, 0, vec![]));
    }
    let big_k = if sup > 0.0 { (1.0 + sup) / (1.0 - sup) } else { 2.0 };
    let rot = coefficient_rotation(k, lambda);
    let mut omega = opts.omega.unwrap_or(if sup <= 0.5 { 1.0 } else { 0.5 });
    let mut phi = opts.initial_phi.clone().unwrap_or(z);
    let mut h_prev: Option<ComplexField> = None;
    let mut history = Vec::new();
    let mut prev = f64::INFINITY;
    for j in 1..=opts.max_outer {
        let nu = mu.zip_with(&phi, |m, p| rot * m * e_k(-k, p)).with_tag("nu");
        let pair = BeltramiPair::new(ComplexField::zeros(g, "mu"), nu, big_k)?;
        let sol = principal_solution_from(&pair, h_prev.as_ref(), opts.inner)?;
        let step = sol.phi.sub(&phi).sup();
        history.push(step);
        if step <= opts.tol {
            return Ok(finish(mu, k, lambda, sol.phi, sol.h, sol.dphi, j, history));
        }
        if step > prev {
            omega = (omega * 0.5).max(1.0 / 16.0);
        }
        prev = step;
        phi = phi.axpby(Complex64::new(1.0 - omega, 0.0), &sol.phi, Complex64::new(omega, 0.0));
        h_prev = Some(sol.h);
    }
    Err(CgoError::NoConvergence {
        iterations: opts.max_outer,
        last_step: prev,
        best_step: history.iter().copied().fold(f64::INFINITY, f64::min),
        omega,
    })
}

/// `u = Re f_μ + i Im f_{−μ}` and its companion `ũ = Im f_μ + i Re f_{−μ}`.
#[derive(Clone, Debug)]
pub struct UGamma {
    pub u: ComplexField,
    pub companion: ComplexField,
}

pub fn u_gamma(fp: &CgoSolution, fm: &CgoSolution) -> Result<UGamma, CgoError> {
    let one = Complex64::new(1.0, 0.0);
    let paired = fp.k == fm.k
        && fp.lambda == one
        && fm.lambda == one
        && fp.phi.grid() == fm.phi.grid()
        && fp.mu.samples().iter().zip(fm.mu.samples()).all(|(a, b)| *a == -*b);
    if !paired {
        return Err(CgoError::MismatchedSolutions);
    }
    let u = fp.f.zip_with(&fm.f, |a, b| Complex64::new(a.re, b.im)).with_tag("u");
    let companion = fp.f.zip_with(&fm.f, |a, b| Complex64::new(a.im, b.re)).with_tag("u_companion");
    Ok(UGamma { u, companion })
}
