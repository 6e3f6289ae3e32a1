use cgo::CgoOptions;
use field_core::{Complex64, ComplexField, Grid};
use scattering::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn stretch(g: Grid) -> ComplexField {
    let kappa = 1.0 / 3.0;
    ComplexField::from_fn(g, "mu", |z| if z.norm() < 1.0 && z.norm() > 0.0 { -kappa * z / z.conj() } else { c(0.0, 0.0) })
}

fn gauss(g: Grid, amp: f64) -> ComplexField {
    ComplexField::from_fn(g, "mu", |z| c(if z.norm() < 1.0 { amp * (-(z - c(0.2, 0.1)).norm_sqr() / 0.05).exp() } else { 0.0 }, 0.0))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn area_and_boundary_agree() {
    let g = Grid::new(256, 4.0).unwrap();
    let o = CgoOptions::default();
    for (mu, near, tight) in [(stretch(g), 2e-2, 1e-3), (gauss(g, 0.3), 1e-4, 1e-4)] {
        for k in [c(1.0, 0.0), Complex64::from_polar(2.0, 0.7)] {
            let (fp, fm) = solve_pair(&mu, k, &o).unwrap();
            let a = tau_from_pair(&fp, &fm, Method::Area).unwrap();
            let b1 = tau_from_pair(&fp, &fm, Method::Boundary { radius: 1.0 }).unwrap();
            let b2 = tau_from_pair(&fp, &fm, Method::Boundary { radius: 1.0 + 2.0 * g.h() }).unwrap();
            assert!(rel(b1, a) <= near, "{k}: {}", rel(b1, a));
            assert!(rel(b2, a) <= tight, "{k}: {}", rel(b2, a));
        }
    }
}

#[test]
fn odd_in_the_coefficient_and_grid_stable() {
    let o = CgoOptions::default();
    let k = c(1.5, -0.5);
    let mut prev = None;
    for n in [128usize, 256] {
        let g = Grid::new(n, 4.0).unwrap();
        let t = tau(&gauss(g, 0.3), k, Method::Area, &o).unwrap();
        let tm = tau(&gauss(g, -0.3), k, Method::Area, &o).unwrap();
        assert!((t + tm).norm() <= 1e-8 * t.norm(), "{t} {tm}");
        if let Some(p) = prev {
            assert!(rel(p, t) <= 2e-2);
        }
        prev = Some(t);
    }
}

#[test]
fn dbar_equation_holds_at_second_order() {
    let g = Grid::new(256, 4.0).unwrap();
    let mu = gauss(g, 0.3);
    let samples = disk_samples(&g, 1.5);
    let o = CgoOptions::default();
    let k = Complex64::from_polar(2.0, 0.7);
    let r = dbar_residuals(&mu, k, &[4e-2, 2e-2], &samples, &o).unwrap();
    let (coarse, fine) = (&r[0], &r[1]);
    assert_eq!(coarse.tau, fine.tau);
    assert!(fine.residual <= 5e-2 && fine.residual < coarse.residual);
    let order = (coarse.residual / fine.residual).log2();
    assert!((order - 2.0).abs() < 0.2, "{order}");
}

#[test]
fn samples_csv() {
    let g = Grid::new(64, 2.0).unwrap();
    let ks = [c(1.0, 0.0), c(0.5, 0.5)];
    let s = ScatteringSamples::compute(&gauss(g, 0.2), &ks, &[Method::Area, Method::Boundary { radius: 1.2 }], &CgoOptions::default()).unwrap();
    assert_eq!(s.samples.len(), 4);
    let mut out = Vec::new();
    s.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k_re,k_im,tau_re,tau_im,method,residual");
    assert!(lines[1].starts_with("1,0,") && lines[1].contains(",area,"));
    assert!(lines[2].contains(",boundary,"));
    assert!(lines[3].starts_with("0.5,0.5,"));
}
