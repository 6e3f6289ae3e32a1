use crate::{BeltramiError, BeltramiPair};
use field_core::{Complex64, ComplexField};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use transforms::{beurling_free, cauchy, DiskOperators};

/// Update rule of the fixed-point iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Schedule {
    /// `h ← F(h)`, the partial sums of the Neumann series.
    Plain,
    /// `h ← F(F(h))`.
    TwoStep,
    /// Anderson mixing over the last `depth` residuals with real coefficients.
    Anderson { depth: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct NeumannOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub schedule: Schedule,
}

impl Default for NeumannOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 2000, schedule: Schedule::Plain }
    }
}

#[derive(Clone, Debug)]
pub struct NeumannResult {
    pub h: ComplexField,
    /// `‖h − μTh − ν·conj(Th) − rhs‖₂ / ‖rhs‖₂`.
    pub residual: f64,
    /// Number of applications of the fixed-point map.
    pub iterations: usize,
    pub history: Vec<f64>,
}

struct Map<'a> {
    pair: &'a BeltramiPair,
    rhs: &'a ComplexField,
    ops: DiskOperators,
    has_nu: bool,
}

impl Map<'_> {
    fn apply(&self, h: &ComplexField) -> ComplexField {
        let th = self.ops.beurling_unchecked(h);
        let mu = self.pair.mu().samples();
        let nu = self.pair.nu().samples();
        let rhs = self.rhs.samples();
        let data = th
            .samples()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut v = mu[i] * t + rhs[i];
                if self.has_nu {
                    v += nu[i] * t.conj();
                }
                v
            })
            .collect();
        ComplexField::from_vec(*h.grid(), data, "h").expect("fixed-point map produced non-finite values")
    }
}

fn dot_re(a: &ComplexField, b: &ComplexField) -> f64 {
    a.samples().iter().zip(b.samples()).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// Solves `h = μTh + ν·conj(Th) + rhs` for `rhs` carried by the closed unit disk.
pub fn neumann_solve(pair: &BeltramiPair, rhs: &ComplexField, opts: NeumannOptions) -> Result<NeumannResult, BeltramiError> {
    neumann_solve_from(pair, rhs, None, opts)
}

/// [`neumann_solve`] started from `x0` instead of `rhs`.
pub fn neumann_solve_from(
    pair: &BeltramiPair,
    rhs: &ComplexField,
    x0: Option<&ComplexField>,
    opts: NeumannOptions,
) -> Result<NeumannResult, BeltramiError> {
    let out = rhs.sup_outside(1.0).max(x0.map_or(0.0, |x| x.sup_outside(1.0)));
    if out > 0.0 {
        return Err(BeltramiError::SupportViolation(out));
    }
    let scale = rhs.l2();
    if scale == 0.0 {
        return Ok(NeumannResult { h: rhs.clone(), residual: 0.0, iterations: 0, history: vec![] });
    }
    let map = Map { pair, rhs, ops: DiskOperators::new(*rhs.grid()), has_nu: pair.nu().sup() > 0.0 };
    let mut x = x0.cloned().unwrap_or_else(|| rhs.clone());
    let mut history = Vec::new();
    let mut evals = 0;
    let mut xs: Vec<ComplexField> = Vec::new();
    let mut gs: Vec<ComplexField> = Vec::new();
    while evals < opts.max_iter {
        let gx = map.apply(&x);
        evals += 1;
        let res = gx.sub(&x);
        let r = res.l2() / scale;
        history.push(r);
        if r <= opts.tol {
            return Ok(NeumannResult { h: x, residual: r, iterations: evals, history });
        }
        x = match opts.schedule {
            Schedule::Plain => gx,
            Schedule::TwoStep => {
                evals += 1;
                map.apply(&gx)
            }
            Schedule::Anderson { depth } => {
                xs.push(x);
                gs.push(gx.clone());
                if xs.len() > depth + 1 {
                    xs.remove(0);
                    gs.remove(0);
                }
                anderson(&xs, &gs).unwrap_or(gx)
            }
        };
    }
    Err(BeltramiError::MaxIterExceeded { iterations: evals, residual: history.last().copied().unwrap_or(f64::NAN) })
}

fn anderson(xs: &[ComplexField], gs: &[ComplexField]) -> Option<ComplexField> {
    let m = xs.len() - 1;
    if m == 0 {
        return None;
    }
    let fs: Vec<ComplexField> = xs.iter().zip(gs).map(|(x, g)| g.sub(x)).collect();
    let df: Vec<ComplexField> = (0..m).map(|i| fs[i + 1].sub(&fs[i])).collect();
    let dg: Vec<ComplexField> = (0..m).map(|i| gs[i + 1].sub(&gs[i])).collect();
    let a = DMatrix::from_fn(m, m, |i, j| dot_re(&df[i], &df[j]));
    let b = DVector::from_fn(m, |i, _| dot_re(&df[i], &fs[m]));
    let reg = 1e-14 * a.diagonal().max().max(1e-300);
    let coef = (a + DMatrix::identity(m, m) * reg).lu().solve(&b)?;
    let mut out = gs[m].clone();
    for (i, c) in coef.iter().enumerate() {
        out = out.axpby(Complex64::new(1.0, 0.0), &dg[i], Complex64::new(-c, 0.0));
    }
    Some(out)
}

/// Normalized homeomorphic solution `φ = z + Ch` with `∂φ = 1 + Th`.
#[derive(Clone, Debug)]
pub struct PrincipalSolution {
    pub h: ComplexField,
    pub phi: ComplexField,
    pub dphi: ComplexField,
    pub residual: f64,
    pub iterations: usize,
}

pub fn principal_solution(pair: &BeltramiPair, opts: NeumannOptions) -> Result<PrincipalSolution, BeltramiError> {
    principal_solution_from(pair, None, opts)
}

/// [`principal_solution`] with the iteration for `h` started from `h0`.
pub fn principal_solution_from(
    pair: &BeltramiPair,
    h0: Option<&ComplexField>,
    opts: NeumannOptions,
) -> Result<PrincipalSolution, BeltramiError> {
    let rhs = pair.mu().add(pair.nu());
    let sol = neumann_solve_from(pair, &rhs, h0, opts)?;
    let g = *rhs.grid();
    let phi = cauchy(&sol.h)?.add(&ComplexField::coordinate(g)).with_tag("phi");
    // inside the reach of the disk operator use the same T as the iteration
    let ops = DiskOperators::new(g);
    let reach = ops.reach();
    let near = ops.beurling(&sol.h)?;
    let far = beurling_free(&sol.h)?;
    let data = (0..g.len())
        .map(|i| 1.0 + if g.z(i).norm() < reach { near.samples()[i] } else { far.samples()[i] })
        .collect();
    let dphi = ComplexField::from_vec(g, data, "dphi").expect("finite transforms");
    Ok(PrincipalSolution { h: sol.h.with_tag("h"), phi, dphi, residual: sol.residual, iterations: sol.iterations })
}

impl PrincipalSolution {
    /// Fraction of nodes with `|∂̄φ| ≤ κ|∂φ|`.
    pub fn ellipticity_fraction(&self, kappa: f64) -> f64 {
        let ok = self.h.samples().iter().zip(self.dphi.samples()).filter(|(h, d)| h.norm() <= kappa * d.norm() * (1.0 + 1e-6) + 1e-12).count();
        ok as f64 / self.h.samples().len() as f64
    }

    /// Fraction of nodes with `|∂φ|² − |∂̄φ|² > 0`.
    pub fn jacobian_fraction(&self) -> f64 {
        let ok = self.h.samples().iter().zip(self.dphi.samples()).filter(|(h, d)| d.norm_sqr() - h.norm_sqr() > 0.0).count();
        ok as f64 / self.h.samples().len() as f64
    }

    /// `‖∂̄φ − μ∂φ − ν·conj(∂φ)‖₂ / ‖μ+ν‖₂` with centered differences of `φ`
    /// at interior nodes.
    pub fn equation_residual(&self, pair: &BeltramiPair) -> f64 {
        let g = *self.phi.grid();
        let n = g.n();
        let hh = g.h();
        let w = self.phi.samples();
        let (mu, nu) = (pair.mu().samples(), pair.nu().samples());
        let mut acc = 0.0;
        for k in 1..n - 1 {
            for j in 1..n - 1 {
                let i = k * n + j;
                let dx = (w[i + 1] - w[i - 1]) / (2.0 * hh);
                let dy = (w[i + n] - w[i - n]) / (2.0 * hh);
                let dbar = 0.5 * (dx + Complex64::i() * dy);
                let d = 0.5 * (dx - Complex64::i() * dy);
                acc += (dbar - mu[i] * d - nu[i] * d.conj()).norm_sqr();
            }
        }
        let scale = pair.mu().add(pair.nu()).l2();
        if scale == 0.0 {
            return 0.0;
        }
        (acc * hh * hh).sqrt() / scale
    }

    /// Number of sampled node pairs `a ≠ b` whose images coincide to `1e-12·|a−b|`.
    pub fn injectivity_failures(&self, pairs: usize, seed: u64) -> usize {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = self.phi.grid();
        let len = g.len();
        (0..pairs)
            .filter(|_| {
                let a = rng.gen_range(0..len);
                let b = rng.gen_range(0..len);
                a != b && (self.phi.samples()[a] - self.phi.samples()[b]).norm() <= 1e-12 * (g.z(a) - g.z(b)).norm()
            })
            .count()
    }

    /// `‖D^{1+s}(φ − z)‖₂`, computed as `2‖D^s h‖₂` since `|ξ|·|(φ−z)^| = 2|ĥ|`.
    pub fn regularity_norm(&self, s: f64) -> f64 {
        2.0 * sobolev::frac_deriv(&self.h, s).expect("order is nonnegative").l2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use field_core::Grid;

    #[test]
    fn zero_coefficients() {
        let g = Grid::new(32, 2.0).unwrap();
        let pair = BeltramiPair::from_mu(ComplexField::zeros(g, "mu"), 2.0).unwrap();
        let sol = principal_solution(&pair, NeumannOptions::default()).unwrap();
        assert_eq!(sol.h.sup(), 0.0);
        assert!(sol.phi.sub(&ComplexField::coordinate(g)).sup() == 0.0);
        let rhs = ComplexField::from_fn(g, "r", |z| if z.norm() < 0.9 { z } else { Complex64::new(0.0, 0.0) });
        let r = neumann_solve(&pair, &rhs, NeumannOptions::default()).unwrap();
        assert_eq!(r.iterations, 1);
        assert!(r.h.sub(&rhs).sup() == 0.0);
    }

    #[test]
    fn max_iter_reported() {
        let g = Grid::new(32, 2.0).unwrap();
        let mu = ComplexField::from_fn(g, "mu", |z| Complex64::new(if z.norm() < 1.0 { 0.8 } else { 0.0 }, 0.0));
        let pair = BeltramiPair::from_mu(mu.clone(), 9.0).unwrap();
        let opts = NeumannOptions { tol: 1e-14, max_iter: 3, schedule: Schedule::Plain };
        assert!(matches!(neumann_solve(&pair, &mu, opts), Err(BeltramiError::MaxIterExceeded { iterations: 3, .. })));
    }
}
