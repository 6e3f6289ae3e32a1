use crate::FieldError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Square periodic grid on `[-S, S)²` with `N × N` nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    n: usize,
    s: f64,
    h: f64,
}

impl Grid {
    pub fn new(n: usize, s: f64) -> Result<Self, FieldError> {
        if n < 8 || !n.is_power_of_two() || !(s >= 2.0) || !s.is_finite() {
            return Err(FieldError::InvalidGrid { n, s });
        }
        Ok(Self { n, s, h: 2.0 * s / n as f64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of nodes, `N²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node `z_{jk} = (−S + jh) + i(−S + kh)`; `j` runs along x.
    pub fn node(&self, j: usize, k: usize) -> Complex64 {
        Complex64::new(-self.s + j as f64 * self.h, -self.s + k as f64 * self.h)
    }

    /// Node at row-major index `k·N + j`.
    pub fn z(&self, idx: usize) -> Complex64 {
        self.node(idx % self.n, idx / self.n)
    }

    /// Signed integer frequency of FFT bin `i`.
    pub fn signed_index(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Lattice spacing in frequency, `π/S`.
    pub fn dxi(&self) -> f64 {
        PI / self.s
    }

    /// Angular frequency of FFT bin `i` along one axis.
    pub fn freq(&self, i: usize) -> f64 {
        self.signed_index(i) as f64 * self.dxi()
    }

    /// Complex frequency `ξ₁ + iξ₂` at row-major spectral index.
    pub fn xi(&self, idx: usize) -> Complex64 {
        Complex64::new(self.freq(idx % self.n), self.freq(idx / self.n))
    }

    pub fn nyquist(&self) -> f64 {
        PI * self.n as f64 / (2.0 * self.s)
    }

    /// Lattice indices of an angular frequency when it lies on the lattice.
    pub fn lattice_index(&self, xi: Complex64) -> Option<(i64, i64)> {
        let a = xi.re / self.dxi();
        let b = xi.im / self.dxi();
        let (ra, rb) = (a.round(), b.round());
        if (a - ra).abs() < 1e-9 && (b - rb).abs() < 1e-9 {
            Some((ra as i64, rb as i64))
        } else {
            None
        }
    }

    pub fn mask(&self, pred: impl Fn(Complex64) -> bool) -> Mask {
        Mask {
            grid: *self,
            bits: (0..self.len()).map(|i| pred(self.z(i))).collect(),
        }
    }

    pub fn disk_mask(&self, r: f64) -> Mask {
        self.mask(|z| z.norm() < r)
    }

    pub fn annulus_mask(&self, r0: f64, r1: f64) -> Mask {
        self.mask(|z| {
            let a = z.norm();
            a > r0 && a < r1
        })
    }
}

/// Boolean region on a grid.
#[derive(Clone, Debug)]
pub struct Mask {
    grid: Grid,
    bits: Vec<bool>,
}

impl Mask {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits[idx]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn area(&self) -> f64 {
        self.count() as f64 * self.grid.h() * self.grid.h()
    }
}
