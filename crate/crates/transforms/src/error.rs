use field_core::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("field not supported where required: relative mass {fraction:.3e} outside radius {radius}")]
    UnsupportedField { fraction: f64, radius: f64 },
    #[error("shift frequency {xi} exceeds the usable band |ξ| <= {limit}")]
    FrequencyOverflow { xi: Complex64, limit: f64 },
    #[error("shift frequency {0} is not on the grid lattice")]
    OffLattice(Complex64),
    #[error("spectral parameter k must be nonzero")]
    ZeroK,
}
