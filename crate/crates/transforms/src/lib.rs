//! Cauchy transform `C`, Beurling transform `T` and the shifted operators
//! `Tₙ = e_n T e_{−n}`.
//!
//! Two realizations are provided. The torus multipliers ([`beurling`],
//! [`cauchy_periodic`]) act exactly on trigonometric polynomials. The
//! free-space operators ([`beurling_free`], [`cauchy`], [`DiskOperators`])
//! convolve with the kernels cut off at a radius larger than every distance
//! that occurs, on a grid large enough that periodic images never reach the
//! evaluation region, so they reproduce the planar integrals.

mod bessel;
mod error;
mod kernel;

pub use bessel::{j0, j1, jinc};
pub use error::TransformError;

use field_core::{apply_symbol, apply_symbol_shifted, bridge, e_k, Complex64, ComplexField, FourierSymbol, Grid, ZeroPolicy};
use kernel::{KernelTable, Which};

/// `ξ̄/ξ`, zero frequency annihilated.
pub fn beurling_symbol() -> FourierSymbol {
    FourierSymbol::new(|xi| xi.conj() / xi, ZeroPolicy::Annihilate)
}

/// `−2i/ξ`, the inverse of the `∂̄` symbol, zero frequency annihilated.
pub fn cauchy_symbol() -> FourierSymbol {
    FourierSymbol::new(|xi| Complex64::new(0.0, -2.0) / xi, ZeroPolicy::Annihilate)
}

/// Torus Beurling multiplier.
pub fn beurling(f: &ComplexField) -> ComplexField {
    apply_symbol(f, &beurling_symbol())
}

/// Torus Cauchy multiplier; `∂̄` of the result is `f` minus its mean.
pub fn cauchy_periodic(f: &ComplexField) -> ComplexField {
    apply_symbol(f, &cauchy_symbol())
}

fn outside_fraction(f: &ComplexField, radius: f64) -> f64 {
    let g = f.grid();
    let (mut out, mut all) = (0.0, 0.0);
    for (i, v) in f.samples().iter().enumerate() {
        let m = v.norm_sqr();
        all += m;
        if g.z(i).norm() > radius {
            out += m;
        }
    }
    if all == 0.0 {
        0.0
    } else {
        (out / all).sqrt()
    }
}

fn check_support(f: &ComplexField, radius: f64, tol: f64) -> Result<(), TransformError> {
    let fraction = outside_fraction(f, radius);
    if fraction > tol {
        return Err(TransformError::UnsupportedField { fraction, radius });
    }
    Ok(())
}

fn box_table(grid: &Grid) -> std::sync::Arc<KernelTable> {
    let s = grid.s();
    KernelTable::get(grid, 2, s * (std::f64::consts::SQRT_2 + 0.5))
}

/// Radius of the central disk that must carry the input of the whole-box operators.
pub fn central_radius(grid: &Grid) -> f64 {
    0.5 * grid.s()
}

/// Planar Beurling transform of `f`, evaluated on the whole box.
///
/// The input must be carried by the disk of radius `S/2` (relative L² mass
/// outside at most `1e-8`).
pub fn beurling_free(f: &ComplexField) -> Result<ComplexField, TransformError> {
    check_support(f, central_radius(f.grid()), 1e-8)?;
    Ok(box_table(f.grid()).apply(f, Which::Beurling))
}

const MULTIPOLES: usize = 64;

/// Far-field expansion `(1/π) Σ Mₙ z^{−n−1}` of the Cauchy transform.
pub fn cauchy_far_field(f: &ComplexField, z: Complex64) -> Complex64 {
    far_field(&moments(f, MULTIPOLES), z)
}

fn moments(f: &ComplexField, count: usize) -> Vec<Complex64> {
    let g = f.grid();
    let w = g.h() * g.h();
    let mut m = vec![Complex64::new(0.0, 0.0); count];
    for (i, v) in f.samples().iter().enumerate() {
        if *v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let z = g.z(i);
        let mut p = *v * w;
        for mj in m.iter_mut() {
            *mj += p;
            p *= z;
        }
    }
    m
}

fn far_field(m: &[Complex64], z: Complex64) -> Complex64 {
    let iz = 1.0 / z;
    let mut acc = Complex64::new(0.0, 0.0);
    for mj in m.iter().rev() {
        acc = acc * iz + mj;
    }
    acc * iz / std::f64::consts::PI
}

/// Planar Cauchy transform `Cf(z) = −(1/π)∫ f(w)/(w−z) dA(w)` on the whole box.
///
/// The zero mode is annihilated and the additive constant is then fixed so
/// that the mean over the outer annulus `0.8S < |z| < 0.95S` equals the mean
/// of the multipole far field there.
pub fn cauchy(f: &ComplexField) -> Result<ComplexField, TransformError> {
    let g = *f.grid();
    check_support(f, central_radius(&g), 1e-8)?;
    let cf = box_table(&g).apply(f, Which::Cauchy);
    let m = moments(f, MULTIPOLES);
    let ring = g.annulus_mask(0.8 * g.s(), 0.95 * g.s());
    let cnt = ring.count() as f64;
    let (mut want, mut have) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for i in ring.indices() {
        want += far_field(&m, g.z(i));
        have += cf.samples()[i];
    }
    let shift = (want - have) / cnt;
    Ok(cf.map(|v| v + shift))
}

/// Cauchy and Beurling transforms for inputs carried by the closed unit disk,
/// exact on the disk `|z| < S − 1` and computed without padding.
#[derive(Clone)]
pub struct DiskOperators {
    grid: Grid,
    table: std::sync::Arc<KernelTable>,
}

impl DiskOperators {
    pub fn new(grid: Grid) -> Self {
        let table = KernelTable::get(&grid, 1, grid.s());
        Self { grid, table }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Radius of the disk on which outputs are exact.
    pub fn reach(&self) -> f64 {
        self.grid.s() - 1.0
    }

    fn check(&self, f: &ComplexField) -> Result<(), TransformError> {
        assert!(*f.grid() == self.grid, "field on a different grid");
        let out = f.sup_outside(1.0);
        if out > 0.0 {
            return Err(TransformError::UnsupportedField { fraction: out / f.sup(), radius: 1.0 });
        }
        Ok(())
    }

    pub fn beurling(&self, f: &ComplexField) -> Result<ComplexField, TransformError> {
        self.check(f)?;
        Ok(self.table.apply(f, Which::Beurling))
    }

    pub fn cauchy(&self, f: &ComplexField) -> Result<ComplexField, TransformError> {
        self.check(f)?;
        Ok(self.table.apply(f, Which::Cauchy))
    }

    /// Beurling transform without the support check, for hot loops that
    /// maintain the support invariant themselves.
    pub fn beurling_unchecked(&self, f: &ComplexField) -> ComplexField {
        self.table.apply(f, Which::Beurling)
    }
}

fn shift_frequency(grid: &Grid, n: u32, k: Complex64) -> Result<Complex64, TransformError> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(TransformError::ZeroK);
    }
    let xi = bridge(k * n as f64);
    let limit = 0.5 * grid.nyquist();
    if xi.re.abs() > limit || xi.im.abs() > limit {
        return Err(TransformError::FrequencyOverflow { xi, limit });
    }
    Ok(xi)
}

/// `Tₙf = e_n·T(e_{−n}·f)` with `e_n(z) = e_{nk}(z)` and the torus `T`.
pub fn shifted_beurling(f: &ComplexField, n: u32, k: Complex64) -> Result<ComplexField, TransformError> {
    shift_frequency(f.grid(), n, k)?;
    let nk = k * n as f64;
    let g = f.map_with_z(|z, v| v * e_k(-nk, z));
    Ok(beurling(&g).map_with_z(|z, v| v * e_k(nk, z)))
}

/// `Tₙ` as the shifted multiplier `(ξ−ξ₀)‾/(ξ−ξ₀)`, `ξ₀` the bridge image of `nk`.
/// Requires `ξ₀` on the grid lattice.
pub fn shifted_beurling_multiplier(f: &ComplexField, n: u32, k: Complex64) -> Result<ComplexField, TransformError> {
    let xi = shift_frequency(f.grid(), n, k)?;
    let shift = f.grid().lattice_index(xi).ok_or(TransformError::OffLattice(xi))?;
    Ok(apply_symbol_shifted(f, &beurling_symbol(), shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use field_core::{d, dbar, random_trig};

    fn rel(a: &ComplexField, b: &ComplexField) -> f64 {
        a.sub(b).l2() / b.l2()
    }

    fn grid() -> Grid {
        Grid::new(64, 2.0).unwrap()
    }

    #[test]
    fn torus_identities() {
        let f = random_trig(grid(), 12, 7);
        assert!((beurling(&f).l2() / f.l2() - 1.0).abs() < 1e-12);
        assert!(rel(&dbar(&cauchy_periodic(&f)), &f) < 1e-12);
        assert!(rel(&d(&cauchy_periodic(&f)), &beurling(&f)) < 1e-12);
    }

    #[test]
    fn zero_input() {
        let g = Grid::new(32, 2.0).unwrap();
        let z = ComplexField::zeros(g, "0");
        assert_eq!(cauchy(&z).unwrap().sup(), 0.0);
        assert_eq!(beurling_free(&z).unwrap().sup(), 0.0);
    }

    #[test]
    fn t0_is_t() {
        let f = random_trig(grid(), 10, 3);
        let k = Complex64::new(0.0, 0.0);
        assert!(matches!(shifted_beurling(&f, 1, k), Err(TransformError::ZeroK)));
        let k = Complex64::new(1.3, -0.2);
        let t0 = shifted_beurling(&f, 0, k).unwrap();
        assert!(t0.sub(&beurling(&f)).sup() < 1e-13);
    }

    #[test]
    fn shift_overflow() {
        let f = random_trig(grid(), 4, 1);
        let k = Complex64::new(grid().nyquist(), 0.0);
        assert!(matches!(shifted_beurling(&f, 1, k), Err(TransformError::FrequencyOverflow { .. })));
        let off = Complex64::new(0.123, 0.0);
        assert!(matches!(shifted_beurling_multiplier(&f, 1, off), Err(TransformError::OffLattice(_))));
    }

    #[test]
    fn support_check() {
        let g = Grid::new(32, 2.0).unwrap();
        let f = ComplexField::constant(g, Complex64::new(1.0, 0.0), "1");
        assert!(matches!(cauchy(&f), Err(TransformError::UnsupportedField { .. })));
        assert!(DiskOperators::new(g).beurling(&f).is_err());
    }

    #[test]
    fn gaussian_far_field() {
        // C(e^{-|z|²/σ²}) = σ²(1 − e^{-|z|²/σ²})/z
        let g = Grid::new(128, 4.0).unwrap();
        let s2: f64 = 0.09;
        let f = ComplexField::from_fn(g, "g", |z| Complex64::new((-z.norm_sqr() / s2).exp(), 0.0));
        let cf = cauchy(&f).unwrap();
        let want = ComplexField::from_fn(g, "w", |z| {
            let r2 = z.norm_sqr();
            if r2 == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                s2 * (1.0 - (-r2 / s2).exp()) / z
            }
        });
        assert!(rel(&cf, &want) < 1e-10, "{}", rel(&cf, &want));
    }
}
