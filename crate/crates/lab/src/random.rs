use dtn::Conductivity;
use field_core::{Complex64, ComplexField, Grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

/// Lattice spacing of the generating frequencies.
pub const FREQ_STEP: f64 = PI / 2.0;
/// Modes `|m|∞ ≤ MODE_BAND` on the frequency lattice.
pub const MODE_BAND: i64 = 8;
/// Radius of the smooth window carrying `γ − 1`.
pub const WINDOW_RADIUS: f64 = 0.9;

#[derive(Clone, Debug)]
struct Mode {
    xi: (f64, f64),
    a: f64,
    b: f64,
}

/// Smooth radial window, 1 at the origin and 0 for `r ≥ WINDOW_RADIUS`.
pub fn window(r: f64) -> f64 {
    let t = r / WINDOW_RADIUS;
    if t >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t * t)).exp()
    }
}

/// Real band-limited profile with coefficients decaying like `|ξ|^{−(1.1+α)}`.
#[derive(Clone, Debug)]
pub struct Profile {
    modes: Vec<Mode>,
}

impl Profile {
    pub fn draw(alpha: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut modes = Vec::new();
        // half lattice: (m1 > 0) or (m1 = 0, m2 > 0)
        for m1 in 0..=MODE_BAND {
            for m2 in -MODE_BAND..=MODE_BAND {
                if m1 == 0 && m2 <= 0 {
                    continue;
                }
                let xi = (FREQ_STEP * m1 as f64, FREQ_STEP * m2 as f64);
                let w = (xi.0 * xi.0 + xi.1 * xi.1).sqrt().powf(-(1.1 + alpha));
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                modes.push(Mode { xi, a: w * a, b: w * b });
            }
        }
        Self { modes }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let wdw = window((x * x + y * y).sqrt());
        if wdw == 0.0 {
            return 0.0;
        }
        let s: f64 = self.modes.iter().map(|m| {
            let p = m.xi.0 * x + m.xi.1 * y;
            m.a * p.cos() + m.b * p.sin()
        }).sum();
        wdw * s
    }
}

#[derive(Clone, Debug)]
pub struct RandomConductivity {
    pub conductivity: Conductivity,
    pub target: f64,
    pub measured: f64,
    pub unclamped: f64,
    pub clamped_fraction: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum RandomError {
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("clamping kept {measured:.4e} of the target norm {target:.4e}")]
    TargetUnreachable { target: f64, measured: f64 },
    #[error(transparent)]
    Sobolev(#[from] sobolev::SobolevError),
    #[error(transparent)]
    Dtn(#[from] dtn::DtnError),
}

/// `γ = clamp(1 + cP, 1/K, K)` with `c` chosen so that `‖cP‖_{W^{α,2}} = Γ₀` on `grid`.
///
/// The profile is evaluated pointwise, so the returned conductivity carries
/// an analytic descriptor and can be resampled on any grid or mesh.
pub fn random_conductivity(alpha: f64, gamma0: f64, big_k: f64, seed: u64, grid: Grid) -> Result<RandomConductivity, RandomError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(RandomError::InvalidParameter { name: "alpha", value: alpha });
    }
    if !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(RandomError::InvalidParameter { name: "gamma0", value: gamma0 });
    }
    if !(big_k > 1.0 && big_k.is_finite()) {
        return Err(RandomError::InvalidParameter { name: "big_k", value: big_k });
    }
    let profile = Profile::draw(alpha, seed);
    let raw = ComplexField::from_fn(grid, "profile", |z| Complex64::new(profile.eval(z.re, z.im), 0.0));
    let base = sobolev::sobolev_norm(&raw, alpha)?.value;
    let c = gamma0 / base;
    let (lo, hi) = (1.0 / big_k, big_k);
    let gamma = move |x: f64, y: f64| (1.0 + c * profile.eval(x, y)).clamp(lo, hi);
    let clamped = raw.samples().iter().filter(|v| {
        let g = 1.0 + c * v.re;
        g < lo || g > hi
    });
    let clamped_fraction = clamped.count() as f64 / grid.len() as f64;
    let conductivity = Conductivity::from_fn(gamma, big_k, grid)?;
    let measured = sobolev::sobolev_norm(&conductivity.gamma().map(|v| v - 1.0), alpha)?.value;
    if measured < 0.5 * gamma0 {
        return Err(RandomError::TargetUnreachable { target: gamma0, measured });
    }
    Ok(RandomConductivity { conductivity, target: gamma0, measured, unclamped: c * base, clamped_fraction })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_is_carried_by_the_disk() {
        assert_eq!(window(0.0), 1.0);
        assert_eq!(window(WINDOW_RADIUS), 0.0);
        assert!(window(0.5) > 0.0 && window(0.5) < 1.0);
    }

    #[test]
    fn target_norm_and_range() {
        let g = Grid::new(128, 2.0).unwrap();
        let big_k = 2.0;
        let r = random_conductivity(0.5, 0.1, big_k, 7, g).unwrap();
        assert!((r.measured / r.target - 1.0).abs() <= 0.1, "{} vs {}", r.measured, r.target);
        let gamma = r.conductivity.gamma();
        assert!(gamma.samples().iter().all(|v| v.re >= 1.0 / big_k && v.re <= big_k && v.im == 0.0));
        assert!(gamma.sup_outside(WINDOW_RADIUS) <= 1.0 + 1e-15);
        let again = random_conductivity(0.5, 0.1, big_k, 7, g).unwrap();
        assert_eq!(again.conductivity.gamma().samples(), gamma.samples());
        let other = random_conductivity(0.5, 0.1, big_k, 8, g).unwrap();
        assert_ne!(other.conductivity.gamma().samples(), gamma.samples());
    }

    #[test]
    fn clamping_can_destroy_the_target() {
        let g = Grid::new(64, 2.0).unwrap();
        assert!(matches!(random_conductivity(0.5, 500.0, 1.1, 1, g), Err(RandomError::TargetUnreachable { .. })));
        assert!(random_conductivity(1.0, 0.1, 2.0, 1, g).is_err());
        assert!(random_conductivity(0.5, 0.1, 1.0, 1, g).is_err());
    }
}
