use beltrami::{principal_solution, BeltramiPair, NeumannOptions};
use cgo::*;
use field_core::{e_k, Complex64, ComplexField, Grid};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bump(g: Grid, amp: f64) -> ComplexField {
    ComplexField::from_fn(g, "mu", |z| {
        let r2 = (z - c(0.1, -0.05)).norm_sqr();
        c(if z.norm() < 1.0 { amp * (-r2 / 0.1).exp() } else { 0.0 }, 0.0)
    })
}

fn stretch(g: Grid) -> ComplexField {
    let kappa = 1.0 / 3.0;
    ComplexField::from_fn(g, "mu", |z| if z.norm() < 1.0 && z.norm() > 0.0 { -kappa * z / z.conj() } else { c(0.0, 0.0) })
}

fn one() -> Complex64 {
    c(1.0, 0.0)
}

#[test]
fn small_k_is_close_to_one_on_the_disk() {
    let g = Grid::new(256, 4.0).unwrap();
    let disk = g.disk_mask(1.0);
    for mu in [bump(g, 0.5), stretch(g)] {
        let s = solve_cgo(&mu, c(0.01, 0.0), one(), &CgoOptions::default()).unwrap();
        let dev = s.f.map(|v| v - 1.0).lp_norm(f64::INFINITY, Some(&disk));
        assert!(dev <= 0.05, "{dev}");
    }
}

#[test]
fn lambda_family_identity() {
    let g = Grid::new(256, 4.0).unwrap();
    let mu = bump(g, 0.3);
    let k = c(1.0, 0.5);
    let o = CgoOptions::default();
    let fp = solve_cgo(&mu, k, one(), &o).unwrap();
    let fm = solve_cgo(&mu.scale(c(-1.0, 0.0)), k, one(), &o).unwrap();
    for t in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4] {
        let fl = solve_cgo(&mu, k, Complex64::from_polar(1.0, -t), &o).unwrap();
        let e = Complex64::from_polar(1.0, -t / 2.0);
        let pred = fp.f.zip_with(&fm.f, |a, b| e * (a * (t / 2.0).cos() + Complex64::i() * b * (t / 2.0).sin()));
        let err = fl.f.sub(&pred).l2();
        assert!(err <= 20.0 * o.tol * fp.f.l2(), "t={t}: {err:e}");
    }
}

#[test]
fn stretch_pair_ratio_has_positive_real_part() {
    let g = Grid::new(256, 4.0).unwrap();
    let mu = stretch(g);
    let o = CgoOptions::default();
    let fp = solve_cgo(&mu, one(), one(), &o).unwrap();
    let fm = solve_cgo(&mu.scale(c(-1.0, 0.0)), one(), one(), &o).unwrap();
    let min = fm.m.zip_with(&fp.m, |a, b| a / b).samples().iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    assert!(min > 0.0, "{min}");
    assert!(fp.m.samples().iter().all(|v| v.norm() > 0.0));
    // representation identities
    let kz = |z: Complex64| (Complex64::i() * one() * z).exp();
    assert!(fp.f.sub(&fp.m.map_with_z(|z, m| kz(z) * m)).sup() <= 1e-12 * fp.f.sup());
    let eps = fp.epsilon();
    let rebuilt = eps.map_with_z(|z, e| (Complex64::i() * (z + e)).exp());
    assert!(fp.f.sub(&rebuilt).sup() <= 1e-12 * fp.f.sup());
    let u = u_gamma(&fp, &fm).unwrap();
    for i in 0..g.len() {
        assert_eq!(u.u.samples()[i], c(fp.f.samples()[i].re, fm.f.samples()[i].im));
        assert_eq!(u.companion.samples()[i], c(fp.f.samples()[i].im, fm.f.samples()[i].re));
    }
    let mut wrong = fm.clone();
    wrong.k = c(2.0, 0.0);
    assert!(matches!(u_gamma(&fp, &wrong), Err(CgoError::MismatchedSolutions)));
}

#[test]
fn residual_and_unimodularity() {
    let g = Grid::new(128, 4.0).unwrap();
    let mu = bump(g, 0.6);
    let s = solve_cgo(&mu, c(2.0, -1.0), Complex64::from_polar(1.0, 0.3), &CgoOptions::default()).unwrap();
    assert!(s.outer_residual < 1e-8, "{}", s.outer_residual);
    let w = s.phi.map(|p| e_k(-s.k, p));
    assert!(w.samples().iter().all(|v| (v.norm() - 1.0).abs() < 1e-15));
}

#[test]
fn vanishing_contrast_is_lipschitz() {
    let g = Grid::new(128, 4.0).unwrap();
    let disk = g.disk_mask(1.0);
    let mu = bump(g, 0.4);
    let o = CgoOptions::default();
    let base = solve_cgo(&mu, one(), one(), &o).unwrap();
    let cs: Vec<f64> = [0.01, 0.005]
        .iter()
        .map(|d| {
            let s = solve_cgo(&mu.scale(c(1.0 - d, 0.0)), one(), one(), &o).unwrap();
            base.f.sub(&s.f).lp_norm(2.0, Some(&disk)) / d
        })
        .collect();
    assert!(cs.iter().all(|v| v.is_finite() && *v > 0.0));
    assert!((cs[0] / cs[1] - 1.0).abs() < 0.05, "{cs:?}");
}

#[test]
fn inverse_gradient_is_grid_stable() {
    let big_k = 3.0;
    let p = 0.8 * 2.0 / (big_k - 1.0);
    let vals: Vec<f64> = [256usize, 512]
        .iter()
        .map(|&n| {
            let g = Grid::new(n, 4.0).unwrap();
            let s = solve_cgo(&bump(g, 0.5), one(), one(), &CgoOptions::default()).unwrap();
            inverse_gradient_integral(&s, p)
        })
        .collect();
    assert!(vals.iter().all(|v| v.is_finite()));
    assert!((vals[1] / vals[0] - 1.0).abs() < 0.1, "{vals:?}");
}

#[test]
fn regularity_norm_has_exponential_envelope() {
    let g = Grid::new(256, 4.0).unwrap();
    let mu = bump(g, 1.0 / 3.0);
    let theta_alpha = 0.9 / 2.0 * 0.5;
    let ks = [1.0, 2.0, 4.0];
    let norms: Vec<f64> =
        ks.iter().map(|k| regularity_norm(&solve_cgo(&mu, c(*k, 0.0), one(), &CgoOptions::default()).unwrap(), theta_alpha)).collect();
    assert!(norms.iter().all(|v| v.is_finite() && *v > 0.0));
    let env = exponential_envelope(&ks, &norms).unwrap();
    assert!(env.margin >= 0.0 && env.rate.is_finite());
    for (k, v) in ks.iter().zip(&norms) {
        assert!(v.ln() <= env.log_constant + env.rate * k + env.margin + 1e-12);
    }
}

#[test]
fn neumann_terms() {
    let g = Grid::new(512, 4.0).unwrap();
    let amp = 0.5;
    let mu = ComplexField::from_fn(g, "mu", |z| c(if z.norm() < 1.0 { amp * (-z.norm_sqr() / 0.05).exp() } else { 0.0 }, 0.0));
    // lattice-aligned k: 2k̄ on the lattice π/S·ℤ²
    let k = c(40.0, -8.0) * (g.dxi() / 2.0);
    let out = neumann_term_fn(&mu, k, 3).unwrap();
    assert_eq!(out.terms[0].samples(), mu.samples());
    let base = mu.l2();
    for (n, f) in out.terms.iter().enumerate() {
        assert!(f.l2() <= amp.powi(n as i32) * base * (1.0 + 1e-10), "n={n}");
    }
    let t = out.tails[1];
    assert!(t[0] / t[1] >= 1.7 && t[1] / t[2] >= 1.7, "{t:?}");
    assert!(neumann_term_fn(&mu, c(1e3, 0.0), 1).is_err());
}

#[test]
fn linear_decay_equation() {
    let g = Grid::new(256, 4.0).unwrap();
    let mu = bump(g, 0.3);
    let zero = ComplexField::zeros(g, "mu");
    let psi0 = linear_psi(&zero, one(), one(), NeumannOptions::default()).unwrap();
    assert_eq!(psi0.phi.sub(&ComplexField::coordinate(g)).sup(), 0.0);
    // delegation to the principal solution with the modulated coefficient
    let k = c(2.0, 1.0);
    let lam = Complex64::from_polar(1.0, 0.4);
    let psi = linear_psi(&mu, k, lam, NeumannOptions::default()).unwrap();
    let coef = mu.map_with_z(|z, m| lam * k.conj() / k * e_k(-k, z) * m);
    let direct = principal_solution(&BeltramiPair::from_mu(coef, 2.0).unwrap(), NeumannOptions::default()).unwrap();
    assert!(psi.phi.sub(&direct.phi).sup() <= 1e-12);
    let sups: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|r| {
            let p = linear_psi(&mu, c(*r, 0.0), one(), NeumannOptions::default()).unwrap();
            (r.ln(), p.phi.sub(&ComplexField::coordinate(g)).sup().ln())
        })
        .collect();
    let slope = slope_of(&sups);
    assert!(slope < 0.0, "{slope}");
    assert!(matches!(linear_psi(&mu, c(0.0, 0.0), one(), NeumannOptions::default()), Err(CgoError::ZeroK)));
}

fn slope_of(p: &[(f64, f64)]) -> f64 {
    let n = p.len() as f64;
    let mx = p.iter().map(|v| v.0).sum::<f64>() / n;
    let my = p.iter().map(|v| v.1).sum::<f64>() / n;
    p.iter().map(|v| (v.0 - mx) * (v.1 - my)).sum::<f64>() / p.iter().map(|v| (v.0 - mx).powi(2)).sum::<f64>()
}

#[test]
fn decay_table_zero_and_order() {
    let g = Grid::new(64, 2.0).unwrap();
    let ks = [c(2.0, 0.0), c(4.0, 0.0)];
    let lams = [one(), Complex64::i()];
    let t = epsilon_decay_table(&ComplexField::zeros(g, "mu"), &ks, &lams, &CgoOptions::default()).unwrap();
    assert!(t.rows.iter().all(|r| r.sup_abs_phi_minus_z == 0.0));
    assert!(t.slope.is_none());
    let t = epsilon_decay_table(&bump(g, 0.3), &ks, &lams, &CgoOptions::default()).unwrap();
    let order: Vec<(Complex64, Complex64)> = t.rows.iter().map(|r| (r.k, r.lambda)).collect();
    assert_eq!(order, vec![(ks[0], lams[0]), (ks[0], lams[1]), (ks[1], lams[0]), (ks[1], lams[1])]);
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("k_re,k_im,lambda_re,lambda_im,sup_abs_phi_minus_z,outer_iterations,outer_residual\n"));
    assert_eq!(text.lines().count(), 5);
}
