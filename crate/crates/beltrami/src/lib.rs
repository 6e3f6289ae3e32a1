//! Linear Beltrami equation `∂̄φ = μ∂φ + ν·conj(∂φ)` with coefficients carried
//! by the unit disk, solved for the principal solution `φ = z + Ch`,
//! `h = ∂̄φ`, by fixed-point iteration on `h = μTh + ν·conj(Th) + (μ+ν)`.

mod pair;
mod solve;

pub use pair::{gamma_to_mu, kappa_of, mu_to_gamma, BeltramiPair};
pub use solve::{
    neumann_solve, neumann_solve_from, principal_solution, principal_solution_from, NeumannOptions, NeumannResult, PrincipalSolution, Schedule,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BeltramiError {
    #[error("ellipticity violated: max {max:.6} exceeds bound {bound:.6}")]
    EllipticityViolation { max: f64, bound: f64 },
    #[error("coefficient is nonzero outside the unit disk (max {0:.3e})")]
    SupportViolation(f64),
    #[error("coefficient must be real-valued (max imaginary part {0:.3e})")]
    NotReal(f64),
    #[error("ellipticity constant K = {0} must exceed 1")]
    InvalidK(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    MaxIterExceeded { iterations: usize, residual: f64 },
    #[error(transparent)]
    Transform(#[from] transforms::TransformError),
}
