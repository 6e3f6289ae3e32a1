use crate::bessel::{j0, jinc};
use field_core::{fft2_inplace, Complex64, ComplexField, Grid};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Fourier tables of the Cauchy and Beurling kernels cut off at `|u| < R`,
/// sampled on the lattice of a grid padded by `pad`.
pub(crate) struct KernelTable {
    n: usize,
    pad: usize,
    cauchy: Vec<Complex64>,
    beurling: Vec<Complex64>,
}

#[derive(Clone, Copy)]
pub(crate) enum Which {
    Cauchy,
    Beurling,
}

impl KernelTable {
    fn build(grid: &Grid, pad: usize, r: f64) -> Self {
        let n = grid.n();
        let np = n * pad;
        let padded = Grid::new(np, grid.s() * pad as f64).expect("padded grid");
        let norm = 1.0 / (np * np) as f64;
        let (cauchy, beurling): (Vec<_>, Vec<_>) = (0..np * np)
            .into_par_iter()
            .map(|i| {
                let xi = padded.xi(i);
                let rho = xi.norm();
                if rho == 0.0 {
                    return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                }
                let x = rho * r;
                let c = Complex64::new(0.0, -2.0) / xi * (1.0 - j0(x));
                let b = xi.conj() / xi * (1.0 - jinc(x));
                (c * norm, b * norm)
            })
            .unzip();
        Self { n, pad, cauchy, beurling }
    }

    pub(crate) fn get(grid: &Grid, pad: usize, r: f64) -> Arc<Self> {
        type Key = (usize, u64, usize, u64);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<KernelTable>>>> = OnceLock::new();
        let key = (grid.n(), grid.s().to_bits(), pad, r.to_bits());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("kernel cache poisoned").get(&key) {
            return t.clone();
        }
        let t = Arc::new(Self::build(grid, pad, r));
        let mut guard = cache.lock().expect("kernel cache poisoned");
        if guard.len() >= 8 {
            guard.clear();
        }
        guard.insert(key, t.clone());
        t
    }

    pub(crate) fn apply(&self, f: &ComplexField, which: Which) -> ComplexField {
        let n = self.n;
        let np = n * self.pad;
        let table = match which {
            Which::Cauchy => &self.cauchy,
            Which::Beurling => &self.beurling,
        };
        let mut buf = vec![Complex64::new(0.0, 0.0); np * np];
        for (row, src) in buf.chunks_mut(np).zip(f.samples().chunks(n)) {
            row[..n].copy_from_slice(src);
        }
        fft2_inplace(&mut buf, np, false);
        buf.par_iter_mut().zip(table.par_iter()).for_each(|(v, m)| *v *= m);
        fft2_inplace(&mut buf, np, true);
        let out: Vec<Complex64> = buf.chunks(np).take(n).flat_map(|row| row[..n].iter().copied()).collect();
        ComplexField::from_vec(*f.grid(), out, f.tag().to_string()).expect("kernel produced non-finite values")
    }
}
