//! Complex geometric optics solutions `f(z,k) = e^{ikφ(z,k)}` where `φ` is the
//! principal solution of `∂̄φ = −λμ(k̄/k)e_{−k}(φ)·conj(∂φ)`.

mod decay;
mod diag;
mod solve;

pub use decay::{epsilon_decay_table, linear_psi, neumann_term_fn, DecayRow, DecayTable, NeumannTerms};
pub use diag::{exponential_envelope, inverse_gradient_integral, regularity_norm, Envelope};
pub use solve::{solve_cgo, u_gamma, CgoOptions, CgoSolution, UGamma};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CgoError {
    #[error("outer iteration did not converge after {iterations} steps (last step {last_step:.3e}, best {best_step:.3e}, relaxation {omega})")]
    NoConvergence { iterations: usize, last_step: f64, best_step: f64, omega: f64 },
    #[error("lambda must be unimodular, got |lambda| = {0}")]
    InvalidLambda(f64),
    #[error("coefficient sup {0} is not below 1")]
    NotElliptic(f64),
    #[error("spectral parameter k = 0 is not allowed here")]
    ZeroK,
    #[error("solutions do not form a (mu, -mu) pair at a common k with lambda = 1")]
    MismatchedSolutions,
    #[error(transparent)]
    Beltrami(#[from] beltrami::BeltramiError),
    #[error(transparent)]
    Transform(#[from] transforms::TransformError),
}
