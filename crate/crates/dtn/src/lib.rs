//! Dirichlet-to-Neumann maps of `div(γ∇u) = 0` on the unit disk, in the
//! boundary Fourier basis `e^{inθ}`, `|n| ≤ N_b`.

mod conductivity;
mod matrix;
mod mesh;
mod radial;

pub use conductivity::{Conductivity, Descriptor, RadialLayers};
pub use matrix::{dtn_distance, dtn_matrix, extension_compare, DtnMatrix, ExtensionReport};
pub use mesh::{disk_mesh, DiskMesh};
pub use radial::radial_dtn_oracle;

use thiserror::Error;

/// Largest supported boundary-mode cutoff.
pub const MAX_MODES: usize = 64;

#[derive(Debug, Error)]
pub enum DtnError {
    #[error("mesh size {mesh_h} does not resolve features of size {feature} (need mesh_h ≤ feature/4)")]
    MeshTooCoarse { mesh_h: f64, feature: f64 },
    #[error("sparse factorization failed: {0}")]
    SolverFailure(String),
    #[error("mode cutoffs differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("mode cutoff {0} outside 0..={MAX_MODES}")]
    InvalidModes(usize),
    #[error("conductivity {value} at ({x:.4}, {y:.4}) outside [1/K, K] with K = {big_k}")]
    EllipticityViolation { value: f64, x: f64, y: f64, big_k: f64 },
    #[error("invalid radial layers: {0}")]
    InvalidLayers(String),
    #[error("invalid mesh size {0}")]
    InvalidMesh(f64),
    #[error("sub-disk radius {0} must lie in (0, 1)")]
    InvalidRadius(f64),
    #[error("malformed matrix file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
