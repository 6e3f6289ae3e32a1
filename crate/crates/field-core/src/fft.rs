use crate::{ComplexField, Grid};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Plan = Arc<dyn Fft<f64>>;

fn plan(n: usize, inverse: bool) -> Plan {
    static CACHE: OnceLock<Mutex<(FftPlanner<f64>, HashMap<(usize, bool), Plan>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((FftPlanner::new(), HashMap::new())));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    let (planner, plans) = &mut *guard;
    plans
        .entry((n, inverse))
        .or_insert_with(|| {
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

fn rows(data: &mut [Complex64], n: usize, p: &Plan) {
    let scratch_len = p.get_inplace_scratch_len();
    data.par_chunks_mut(n * 8).for_each_init(
        || vec![Complex64::new(0.0, 0.0); scratch_len],
        |scratch, chunk| p.process_with_scratch(chunk, scratch),
    );
}

fn transpose(data: &mut [Complex64], n: usize) {
    const B: usize = 32;
    for bi in (0..n).step_by(B) {
        for bj in (bi..n).step_by(B) {
            for i in bi..(bi + B).min(n) {
                let j0 = if bi == bj { i + 1 } else { bj };
                for j in j0..(bj + B).min(n) {
                    data.swap(i * n + j, j * n + i);
                }
            }
        }
    }
}

/// Unnormalized 2-D DFT of an `n × n` row-major array (inverse carries no `1/n²`).
pub fn fft2_inplace(data: &mut [Complex64], n: usize, inverse: bool) {
    assert_eq!(data.len(), n * n);
    let p = plan(n, inverse);
    rows(data, n, &p);
    transpose(data, n);
    rows(data, n, &p);
    transpose(data, n);
}

/// Samples of `f̂` on the frequency lattice, row-major in FFT order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub grid: Grid,
    pub data: Vec<Complex64>,
}

impl Spectrum {
    /// Forward transform including the `h²` weight and the phase of the
    /// `−S` origin offset, so `data` approximates the continuous `f̂(ξ)`.
    pub fn of(f: &ComplexField) -> Self {
        let g = *f.grid();
        let n = g.n();
        let mut data = f.samples().to_vec();
        fft2_inplace(&mut data, n, false);
        let w = g.h() * g.h();
        data.par_chunks_mut(n).enumerate().for_each(|(kk, row)| {
            for (jj, v) in row.iter_mut().enumerate() {
                let sign = if (g.signed_index(jj) + g.signed_index(kk)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                *v *= w * sign;
            }
        });
        Self { grid: g, data }
    }

    pub fn into_field(self, tag: impl Into<String>) -> ComplexField {
        let g = self.grid;
        let n = g.n();
        let mut data = self.data;
        let w = 1.0 / (g.h() * g.h() * (n * n) as f64);
        data.par_chunks_mut(n).enumerate().for_each(|(kk, row)| {
            for (jj, v) in row.iter_mut().enumerate() {
                let sign = if (g.signed_index(jj) + g.signed_index(kk)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                *v *= w * sign;
            }
        });
        fft2_inplace(&mut data, n, true);
        ComplexField::from_vec(g, data, tag).expect("inverse transform produced non-finite values")
    }

    /// `(1/4π²) Σ |f̂|² Δξ²`, the frequency side of Parseval.
    pub fn energy(&self) -> f64 {
        let dxi = self.grid.dxi();
        let s: f64 = self.data.iter().map(|v| v.norm_sqr()).sum();
        s * dxi * dxi / (4.0 * std::f64::consts::PI * std::f64::consts::PI)
    }

    /// Same as [`energy`](Self::energy) restricted to `|ξ| > r`.
    pub fn tail_energy(&self, r: f64) -> f64 {
        let dxi = self.grid.dxi();
        let s: f64 = self
            .data
            .iter()
            .enumerate()
            .filter(|(i, _)| self.grid.xi(*i).norm() > r)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        s * dxi * dxi / (4.0 * std::f64::consts::PI * std::f64::consts::PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_roundtrip() {
        let n = 64;
        let mut a: Vec<Complex64> = (0..n * n).map(|i| Complex64::new(i as f64, 0.0)).collect();
        transpose(&mut a, n);
        assert_eq!(a[3 * n + 5].re, (5 * n + 3) as f64);
        transpose(&mut a, n);
        assert!(a.iter().enumerate().all(|(i, v)| v.re == i as f64));
    }

    #[test]
    fn gaussian_spectrum_matches_closed_form() {
        let g = Grid::new(128, 6.0).unwrap();
        let f = ComplexField::from_fn(g, "gauss", |z| Complex64::new((-z.norm_sqr()).exp(), 0.0));
        let sp = Spectrum::of(&f);
        for idx in [0usize, 3, 128 * 5 + 2, 128 * 127 + 1] {
            let xi = g.xi(idx);
            let want = std::f64::consts::PI * (-xi.norm_sqr() / 4.0).exp();
            assert!((sp.data[idx] - want).norm() < 1e-12, "{idx}");
        }
    }
}
