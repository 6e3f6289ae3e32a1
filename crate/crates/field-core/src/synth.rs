use crate::{ComplexField, Grid};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Zero-mean trigonometric polynomial with random coefficients on the lattice
/// modes `0 < max(|m₁|,|m₂|) ≤ band`. Deterministic in `seed`.
pub fn random_trig(grid: Grid, band: i64, seed: u64) -> ComplexField {
    assert!(band >= 1 && (band as usize) < grid.n() / 2, "band outside the resolvable range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::new();
    for m2 in -band..=band {
        for m1 in -band..=band {
            if m1 == 0 && m2 == 0 {
                continue;
            }
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            modes.push((m1 as f64 * grid.dxi(), m2 as f64 * grid.dxi(), c));
        }
    }
    ComplexField::from_fn(grid, format!("trig(band={band},seed={seed})"), |z| {
        modes.iter().map(|(a, b, c)| c * Complex64::from_polar(1.0, a * z.re + b * z.im)).sum()
    })
}
