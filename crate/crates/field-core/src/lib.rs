//! Sampled complex fields on a periodic square grid and the Fourier machinery
//! used by every operator in the workspace.
//!
//! Transform convention: `f̂(ξ) = Σ f(z) e^{-i(ξ₁x+ξ₂y)} h²`, with `ξ` on the
//! lattice `π m / S`. A frequency `k` written in the exponential convention
//! `e_k(z) = exp(i(kz + k̄z̄))` corresponds to `ξ = 2k̄`; see [`bridge`].

mod error;
mod fft;
mod field;
mod grid;
pub mod persist;
mod symbol;
mod synth;

pub use error::FieldError;
pub use fft::{fft2_inplace, Spectrum};
pub use field::ComplexField;
pub use grid::{Grid, Mask};
pub use synth::random_trig;
pub use symbol::{apply_symbol, apply_symbol_shifted, FourierSymbol, ZeroPolicy};

pub use num_complex::Complex64;

/// Maps a spectral parameter `k` of the exponential convention to the
/// internal angular frequency `ξ = (2k₁, −2k₂)`.
pub fn bridge(k: Complex64) -> Complex64 {
    2.0 * k.conj()
}

/// `e_k(z) = exp(i(kz + k̄z̄)) = exp(2i Re(kz))`.
pub fn e_k(k: Complex64, z: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * (k * z).re)
}

/// Spectral derivative `∂̄ = (∂x + i∂y)/2`.
pub fn dbar(f: &ComplexField) -> ComplexField {
    apply_symbol(f, &FourierSymbol::dbar())
}

/// Spectral derivative `∂ = (∂x − i∂y)/2`.
pub fn d(f: &ComplexField) -> ComplexField {
    apply_symbol(f, &FourierSymbol::d())
}
