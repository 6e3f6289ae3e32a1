use crate::{FieldError, Grid, Mask};
use num_complex::Complex64;
use rayon::prelude::*;

/// Complex samples on a [`Grid`], row-major (`samples[k·N + j]` sits at `z_{jk}`).
#[derive(Clone, Debug)]
pub struct ComplexField {
    grid: Grid,
    data: Vec<Complex64>,
    tag: String,
}

impl ComplexField {
    pub fn from_vec(grid: Grid, data: Vec<Complex64>, tag: impl Into<String>) -> Result<Self, FieldError> {
        if data.len() != grid.len() {
            return Err(FieldError::LengthMismatch { got: data.len(), want: grid.len() });
        }
        if let Some(i) = data.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(FieldError::NonFinite(i));
        }
        Ok(Self { grid, data, tag: tag.into() })
    }

    pub fn zeros(grid: Grid, tag: impl Into<String>) -> Self {
        Self { grid, data: vec![Complex64::new(0.0, 0.0); grid.len()], tag: tag.into() }
    }

    pub fn constant(grid: Grid, c: Complex64, tag: impl Into<String>) -> Self {
        Self { grid, data: vec![c; grid.len()], tag: tag.into() }
    }

    /// Samples `f(z)` at every node.
    ///
    /// Panics if `f` returns a non-finite value.
    pub fn from_fn(grid: Grid, tag: impl Into<String>, f: impl Fn(Complex64) -> Complex64 + Sync) -> Self {
        let data: Vec<Complex64> = (0..grid.len()).into_par_iter().map(|i| f(grid.z(i))).collect();
        Self::from_vec(grid, data, tag).expect("sampled function is not finite")
    }

    /// The identity map `z`.
    pub fn coordinate(grid: Grid) -> Self {
        Self::from_fn(grid, "z", |z| z)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.data
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[k * self.grid.n() + j]
    }

    /// Bilinear interpolation at `z`, periodic across the box edges.
    pub fn bilinear(&self, z: Complex64) -> Complex64 {
        let n = self.grid.n();
        let x = (z.re + self.grid.s()) / self.grid.h();
        let y = (z.im + self.grid.s()) / self.grid.h();
        let (x0, y0) = (x.floor(), y.floor());
        let (tx, ty) = (x - x0, y - y0);
        let wrap = |v: f64| (v as i64).rem_euclid(n as i64) as usize;
        let (j0, k0) = (wrap(x0), wrap(y0));
        let (j1, k1) = ((j0 + 1) % n, (k0 + 1) % n);
        self.get(j0, k0) * ((1.0 - tx) * (1.0 - ty))
            + self.get(j1, k0) * (tx * (1.0 - ty))
            + self.get(j0, k1) * ((1.0 - tx) * ty)
            + self.get(j1, k1) * (tx * ty)
    }

    fn same_grid(&self, other: &Self) {
        assert!(self.grid == other.grid, "fields live on different grids");
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64 + Sync) -> Self {
        let data = self.data.par_iter().map(|v| f(*v)).collect();
        Self::from_vec(self.grid, data, self.tag.clone()).expect("map produced non-finite values")
    }

    /// Pointwise `f(z, v)` where `z` is the node.
    pub fn map_with_z(&self, f: impl Fn(Complex64, Complex64) -> Complex64 + Sync) -> Self {
        let g = self.grid;
        let data = self.data.par_iter().enumerate().map(|(i, v)| f(g.z(i), *v)).collect();
        Self::from_vec(self.grid, data, self.tag.clone()).expect("map produced non-finite values")
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64 + Sync) -> Self {
        self.same_grid(other);
        let data = self.data.par_iter().zip(other.data.par_iter()).map(|(a, b)| f(*a, *b)).collect();
        Self::from_vec(self.grid, data, self.tag.clone()).expect("zip produced non-finite values")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// `a·self + b·other`.
    pub fn axpby(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        self.zip_with(other, |x, y| a * x + b * y)
    }

    pub fn sup(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.im.abs() <= tol)
    }

    /// `(Σ|f|^p h²)^{1/p}` over the mask; `p = ∞` gives the max modulus.
    ///
    /// Panics unless `p > 0`.
    pub fn lp_norm(&self, p: f64, mask: Option<&Mask>) -> f64 {
        assert!(p > 0.0, "lp_norm needs p > 0");
        if let Some(m) = mask {
            assert!(*m.grid() == self.grid, "mask on a different grid");
        }
        let inside = |i: usize| mask.map_or(true, |m| m.contains(i));
        if p.is_infinite() {
            return (0..self.data.len()).filter(|i| inside(*i)).fold(0.0, |m, i| m.max(self.data[i].norm()));
        }
        let w = self.grid.h() * self.grid.h();
        let s: f64 = if p == 2.0 {
            (0..self.data.len()).filter(|i| inside(*i)).map(|i| self.data[i].norm_sqr()).sum()
        } else {
            (0..self.data.len()).filter(|i| inside(*i)).map(|i| self.data[i].norm().powf(p)).sum()
        };
        (s * w).powf(1.0 / p)
    }

    pub fn l2(&self) -> f64 {
        self.lp_norm(2.0, None)
    }

    /// `Σ f h²` over the grid.
    pub fn integral(&self) -> Complex64 {
        let s: Complex64 = self.data.iter().sum();
        s * self.grid.h() * self.grid.h()
    }

    /// Largest modulus at nodes outside the closed disk `|z| ≤ r`.
    pub fn sup_outside(&self, r: f64) -> f64 {
        let g = self.grid;
        self.data
            .iter()
            .enumerate()
            .filter(|(i, _)| g.z(*i).norm() > r)
            .fold(0.0, |m, (_, v)| m.max(v.norm()))
    }
}
