use crate::BeltramiError;
use field_core::{Complex64, ComplexField};

/// `κ = (K−1)/(K+1)`.
pub fn kappa_of(big_k: f64) -> f64 {
    (big_k - 1.0) / (big_k + 1.0)
}

const SLACK: f64 = 1e-12;

/// Coefficients `(μ, ν)` carried by the closed unit disk with `|μ|+|ν| ≤ κ`.
#[derive(Clone, Debug)]
pub struct BeltramiPair {
    mu: ComplexField,
    nu: ComplexField,
    kappa: f64,
    big_k: f64,
}

impl BeltramiPair {
    pub fn new(mu: ComplexField, nu: ComplexField, big_k: f64) -> Result<Self, BeltramiError> {
        if !(big_k > 1.0) || !big_k.is_finite() {
            return Err(BeltramiError::InvalidK(big_k));
        }
        let kappa = kappa_of(big_k);
        let sum = mu.zip_with(&nu, |a, b| Complex64::new(a.norm() + b.norm(), 0.0));
        let max = sum.sup();
        if max > kappa + SLACK {
            return Err(BeltramiError::EllipticityViolation { max, bound: kappa });
        }
        let out = sum.sup_outside(1.0);
        if out > 0.0 {
            return Err(BeltramiError::SupportViolation(out));
        }
        Ok(Self { mu, nu, kappa, big_k })
    }

    /// `ν = 0`.
    pub fn from_mu(mu: ComplexField, big_k: f64) -> Result<Self, BeltramiError> {
        let nu = ComplexField::zeros(*mu.grid(), "nu");
        Self::new(mu, nu, big_k)
    }

    pub fn mu(&self) -> &ComplexField {
        &self.mu
    }

    pub fn nu(&self) -> &ComplexField {
        &self.nu
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn big_k(&self) -> f64 {
        self.big_k
    }
}

fn real_part(f: &ComplexField) -> Result<(), BeltramiError> {
    let im = f.samples().iter().fold(0.0f64, |m, v| m.max(v.im.abs()));
    if im > SLACK {
        return Err(BeltramiError::NotReal(im));
    }
    Ok(())
}

/// `μ = (1−γ)/(1+γ)` for a real conductivity with `1/K ≤ γ ≤ K`.
pub fn gamma_to_mu(gamma: &ComplexField, big_k: f64) -> Result<ComplexField, BeltramiError> {
    real_part(gamma)?;
    let (lo, hi) = gamma.samples().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v.re), h.max(v.re)));
    if lo < 1.0 / big_k - SLACK || hi > big_k + SLACK {
        return Err(BeltramiError::EllipticityViolation { max: hi.max(1.0 / lo), bound: big_k });
    }
    Ok(gamma.map(|g| Complex64::new((1.0 - g.re) / (1.0 + g.re), 0.0)).with_tag("mu"))
}

/// `γ = (1−μ)/(1+μ)` for a real coefficient with `|μ| ≤ κ`.
pub fn mu_to_gamma(mu: &ComplexField, big_k: f64) -> Result<ComplexField, BeltramiError> {
    real_part(mu)?;
    let kappa = kappa_of(big_k);
    let max = mu.sup();
    if max > kappa + SLACK {
        return Err(BeltramiError::EllipticityViolation { max, bound: kappa });
    }
    Ok(mu.map(|m| Complex64::new((1.0 - m.re) / (1.0 + m.re), 0.0)).with_tag("gamma"))
}
