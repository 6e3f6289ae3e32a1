use crate::{fft2_inplace, ComplexField, Grid};
use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

/// What a symbol does at `ξ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroPolicy {
    /// Use the rule's own value.
    Regular,
    Value(Complex64),
    Annihilate,
}

/// A Fourier multiplier `m(ξ)` with `ξ = ξ₁ + iξ₂`.
#[derive(Clone)]
pub struct FourierSymbol {
    rule: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    zero: ZeroPolicy,
}

impl fmt::Debug for FourierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierSymbol").field("zero", &self.zero).finish_non_exhaustive()
    }
}

impl FourierSymbol {
    pub fn new(rule: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static, zero: ZeroPolicy) -> Self {
        Self { rule: Arc::new(rule), zero }
    }

    pub fn identity() -> Self {
        Self::new(|_| Complex64::new(1.0, 0.0), ZeroPolicy::Regular)
    }

    /// `∂x ↔ iξ₁`.
    pub fn dx() -> Self {
        Self::new(|xi| Complex64::new(0.0, xi.re), ZeroPolicy::Regular)
    }

    /// `∂y ↔ iξ₂`.
    pub fn dy() -> Self {
        Self::new(|xi| Complex64::new(0.0, xi.im), ZeroPolicy::Regular)
    }

    /// `∂̄ ↔ (i/2)ξ`.
    pub fn dbar() -> Self {
        Self::new(|xi| Complex64::new(0.0, 0.5) * xi, ZeroPolicy::Regular)
    }

    /// `∂ ↔ (i/2)ξ̄`.
    pub fn d() -> Self {
        Self::new(|xi| Complex64::new(0.0, 0.5) * xi.conj(), ZeroPolicy::Regular)
    }

    pub fn zero_policy(&self) -> ZeroPolicy {
        self.zero
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        if xi == Complex64::new(0.0, 0.0) {
            match self.zero {
                ZeroPolicy::Regular => (self.rule)(xi),
                ZeroPolicy::Value(v) => v,
                ZeroPolicy::Annihilate => Complex64::new(0.0, 0.0),
            }
        } else {
            (self.rule)(xi)
        }
    }

    /// Pointwise product `m₁·m₂`; the zero frequency takes the product of both policies.
    pub fn product(&self, other: &Self) -> Self {
        let zero = self.eval(Complex64::new(0.0, 0.0)) * other.eval(Complex64::new(0.0, 0.0));
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |xi| a.eval(xi) * b.eval(xi), ZeroPolicy::Value(zero))
    }
}

fn apply_indexed(f: &ComplexField, m: &FourierSymbol, shift: (i64, i64)) -> ComplexField {
    let g: Grid = *f.grid();
    let n = g.n();
    let ni = n as i64;
    let mut data = f.samples().to_vec();
    fft2_inplace(&mut data, n, false);
    let norm = 1.0 / (n * n) as f64;
    let dxi = g.dxi();
    let wrap = |m: i64| {
        let r = m.rem_euclid(ni);
        if r < ni / 2 {
            r
        } else {
            r - ni
        }
    };
    data.par_chunks_mut(n).enumerate().for_each(|(kk, row)| {
        let my = wrap(g.signed_index(kk) - shift.1);
        for (jj, v) in row.iter_mut().enumerate() {
            let mx = wrap(g.signed_index(jj) - shift.0);
            let xi = Complex64::new(mx as f64 * dxi, my as f64 * dxi);
            *v *= m.eval(xi) * norm;
        }
    });
    fft2_inplace(&mut data, n, true);
    ComplexField::from_vec(g, data, f.tag().to_string()).expect("symbol produced non-finite values")
}

/// Inverse transform of `m(ξ)·f̂(ξ)` on the grid's frequency lattice.
pub fn apply_symbol(f: &ComplexField, m: &FourierSymbol) -> ComplexField {
    apply_indexed(f, m, (0, 0))
}

/// Multiplier `m(ξ − ξ₀)` with `ξ₀` the lattice point `shift·π/S`; the shifted
/// argument is wrapped back into the lattice, which is exactly the discrete
/// action of `e^{iξ₀x} m(D) e^{−iξ₀x}`.
pub fn apply_symbol_shifted(f: &ComplexField, m: &FourierSymbol, shift: (i64, i64)) -> ComplexField {
    apply_indexed(f, m, shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &ComplexField, b: &ComplexField) -> f64 {
        a.sub(b).l2() / b.l2()
    }

    #[test]
    fn identity_roundtrip() {
        let g = Grid::new(64, 2.0).unwrap();
        let f = ComplexField::from_fn(g, "f", |z| Complex64::new((z.re * 3.0).sin(), z.im.cos() * z.re));
        assert!(rel(&apply_symbol(&f, &FourierSymbol::identity()), &f) < 1e-12);
    }

    #[test]
    fn plane_wave_eigen() {
        let g = Grid::new(64, 2.0).unwrap();
        let xi0 = Complex64::new(5.0 * g.dxi(), -3.0 * g.dxi());
        let w = ComplexField::from_fn(g, "w", |z| Complex64::from_polar(1.0, xi0.re * z.re + xi0.im * z.im));
        let m = FourierSymbol::new(|xi| Complex64::new(1.0 + xi.norm(), xi.re), ZeroPolicy::Regular);
        let got = apply_symbol(&w, &m);
        assert!(rel(&got, &w.scale(m.eval(xi0))) < 1e-12);
    }

    #[test]
    fn derivative_of_sine() {
        let g = Grid::new(128, 4.0).unwrap();
        let a = 7.0 * g.dxi();
        let f = ComplexField::from_fn(g, "sin", |z| Complex64::new((a * z.re).sin(), 0.0));
        let want = ComplexField::from_fn(g, "cos", |z| Complex64::new(a * (a * z.re).cos(), 0.0));
        let got = apply_symbol(&f, &FourierSymbol::dx());
        assert!(got.sub(&want).sup() < 1e-10 * a);
    }

    #[test]
    fn annihilate_zero_mode() {
        let g = Grid::new(16, 2.0).unwrap();
        let one = ComplexField::constant(g, Complex64::new(1.0, 0.0), "1");
        let m = FourierSymbol::new(|xi| 1.0 / xi, ZeroPolicy::Annihilate);
        assert!(apply_symbol(&one, &m).sup() < 1e-14);
    }
}
