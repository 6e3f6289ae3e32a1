use crate::output::{Assertion, Kind, Outcome, Persisted, Table};
use crate::random::{random_conductivity, window, RandomConductivity};
use crate::stats::{slope, spearman};
use crate::{compose_field, compose_values, LabError, ScenarioConfig};
use beltrami::{gamma_to_mu, kappa_of, principal_solution, BeltramiPair, NeumannOptions};
use cgo::{epsilon_decay_table, exponential_envelope, inverse_gradient_integral, linear_psi, neumann_term_fn, solve_cgo, CgoError, CgoOptions};
use dtn::{dtn_distance, dtn_matrix, radial_dtn_oracle, Conductivity, RadialLayers};
use field_core::{Complex64, ComplexField, Grid};
use rayon::prelude::*;
use scattering::{dbar_residuals, disk_samples, solve_pair, tau_from_pair, Method};
use sobolev::sobolev_norm;
use std::f64::consts::PI;

const OSC_AMPLITUDE: f64 = 0.5;
const CHI_RADIUS: f64 = 0.6;

fn num(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cgo_options(cfg: &ScenarioConfig) -> CgoOptions {
    CgoOptions { tol: cfg.tol, ..CgoOptions::default() }
}

/// Gaussian bump restricted to the open unit disk.
fn gauss_mu(g: Grid, amp: f64, center: Complex64, s2: f64) -> ComplexField {
    ComplexField::from_fn(g, "mu", move |z| c(if z.norm() < 1.0 { amp * (-(z - center).norm_sqr() / s2).exp() } else { 0.0 }, 0.0))
}

/// `−κ z/z̄` on the unit disk.
fn stretch_mu(g: Grid, big_k: f64) -> ComplexField {
    let kappa = kappa_of(big_k);
    ComplexField::from_fn(g, "mu", move |z| if z.norm() < 1.0 && z.norm() > 0.0 { -kappa * z / z.conj() } else { c(0.0, 0.0) })
}

fn resample(cond: &Conductivity, g: Grid) -> ComplexField {
    ComplexField::from_fn(g, "gamma", |z| c(cond.value_at(z.re, z.im), 0.0))
}

fn record_random(out: &mut Outcome, rc: &RandomConductivity) {
    out.metric("gamma0_target", rc.target);
    out.metric("gamma0_measured", rc.measured);
    out.metric("clamped_fraction", rc.clamped_fraction);
}

fn count_increases(v: &[f64]) -> usize {
    v.windows(2).filter(|w| w[1] >= w[0]).count()
}

pub fn alessandrini(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let disk = g.disk_mask(1.0);
    let one_layers = RadialLayers::new(vec![], vec![1.0])?;
    let one = Conductivity::from_layers(one_layers.clone(), cfg.big_k, g)?;
    let base = dtn_matrix(&one, cfg.n_b, cfg.mesh_h)?;
    let base_exact = radial_dtn_oracle(&one_layers, cfg.n_b);
    let rows = cfg
        .r0_list
        .par_iter()
        .map(|&r0| {
            let layers = RadialLayers::inclusion(r0, 2.0)?;
            let cond = Conductivity::from_layers(layers.clone(), cfg.big_k, g)?;
            let l = dtn_matrix(&cond, cfg.n_b, cfg.mesh_h)?;
            let rho = dtn_distance(&base, &l)?;
            let exact = dtn_distance(&base_exact, &radial_dtn_oracle(&layers, cfg.n_b))?;
            let l2 = cond.gamma().sub(one.gamma()).lp_norm(2.0, Some(&disk));
            Ok((r0, rho, exact, l2, l))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    out.tables.push(Table::new(
        "alessandrini",
        &["r0", "rho", "l2diff"],
        rows.iter().map(|r| vec![num(r.0), num(r.1), num(r.3)]).collect(),
    )?);
    out.tables.push(Table::new(
        "alessandrini_oracle",
        &["r0", "rho_fem", "rho_transfer", "rel_diff"],
        rows.iter().map(|r| vec![num(r.0), num(r.1), num(r.2), num((r.1 - r.2).abs() / r.2)]).collect(),
    )?);
    for r in &rows {
        out.check(Assertion::at_most(format!("rho <= 2 r0 (r0={})", r.0), Kind::Bound, r.1, 2.0 * r.0));
        out.check(Assertion::at_most(format!("|l2diff - sqrt(pi) r0| (r0={})", r.0), Kind::Oracle, (r.3 - PI.sqrt() * r.0).abs(), 1e-3));
        out.check(Assertion::at_most(format!("fem vs transfer rho (r0={})", r.0), Kind::Oracle, (r.1 - r.2).abs() / r.2, 1e-2));
    }
    let mut sorted: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.1)).collect();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let rhos: Vec<f64> = sorted.iter().map(|r| r.1).collect();
    out.check(Assertion::at_most("rho decreases with r0", Kind::Monotonicity, count_increases(&rhos) as f64, 0.0));
    out.persisted.push(Persisted::Dtn("dtn_unit".into(), base));
    for (r0, _, _, _, l) in rows {
        out.persisted.push(Persisted::Dtn(format!("dtn_inclusion_r0_{r0}"), l));
    }
    Ok(())
}

pub fn oscillation(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let disk = g.disk_mask(1.0);
    let jobs: Vec<(bool, u32)> = [true, false].iter().flat_map(|&w| cfg.j_list.iter().map(move |&j| (w, j))).collect();
    let conds = jobs
        .iter()
        .map(|&(windowed, j)| {
            let j = j as f64;
            let f = move |x: f64, y: f64| {
                let w = if windowed { window((x * x + y * y).sqrt()) } else { 1.0 };
                1.0 + OSC_AMPLITUDE * w * (2.0 * PI * j * x).cos() * (2.0 * PI * j * y).cos()
            };
            Conductivity::from_fn(f, cfg.big_k, g)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mats = conds.par_iter().map(|cond| dtn_matrix(cond, cfg.n_b, cfg.mesh_h)).collect::<Result<Vec<_>, _>>()?;
    let m = cfg.j_list.len();
    let mut rows = Vec::new();
    for (fi, family) in ["windowed", "pure"].iter().enumerate() {
        let mut rhos = Vec::new();
        let mut l2s = Vec::new();
        for i in 0..m - 1 {
            let (a, b) = (fi * m + i, fi * m + i + 1);
            let rho = dtn_distance(&mats[a], &mats[b])?;
            let l2 = conds[a].gamma().sub(conds[b].gamma()).lp_norm(2.0, Some(&disk));
            rows.push(vec![family.to_string(), cfg.j_list[i].to_string(), cfg.j_list[i + 1].to_string(), num(rho), num(l2)]);
            rhos.push(rho);
            l2s.push(l2);
        }
        for i in 1..rhos.len() {
            let ratio = rhos[i - 1] / rhos[i];
            let label = format!("{family} rho ratio ({}->{})", cfg.j_list[i], cfg.j_list[i + 1]);
            if fi == 0 {
                out.check(Assertion::at_least(label, Kind::Bound, ratio, 2.0));
                out.check(Assertion::at_least(
                    format!("{family} l2 floor ({}->{})", cfg.j_list[i], cfg.j_list[i + 1]),
                    Kind::Bound,
                    l2s[i] / l2s[0],
                    0.5,
                ));
            } else {
                out.metric(label, ratio);
            }
        }
    }
    out.tables.push(Table::new("oscillation", &["family", "j1", "j2", "rho", "l2diff"], rows)?);
    Ok(())
}

pub fn decay(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let rc = random_conductivity(cfg.alpha, cfg.gamma0, cfg.big_k, cfg.seed, g)?;
    record_random(out, &rc);
    let mu = gamma_to_mu(rc.conductivity.gamma(), cfg.big_k)?;
    out.metric("sup_mu", mu.sup());
    let opts = cgo_options(cfg);
    let table = epsilon_decay_table(&mu, &cfg.k_list, &cfg.lambda_list, &opts)?;
    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    out.tables.push(Table { name: "decay".into(), csv });
    let s = table.slope.unwrap_or(f64::NAN);
    out.check(Assertion::at_most("log-log slope of sup|phi-z|", Kind::Sign, s, -0.05).substitute());
    for (k, spread) in table.lambda_spread() {
        out.check(Assertion::at_most(format!("lambda spread (|k|={})", k.norm()), Kind::Bound, spread, 3.0));
    }
    // convergence map of the outer iteration on a coarser grid
    let coarse = Grid::new((cfg.grid_n / 4).max(64), cfg.grid_s)?;
    let mu_c = gamma_to_mu(&resample(&rc.conductivity, coarse), cfg.big_k)?;
    let sup = mu_c.sup();
    let map_opts = CgoOptions { max_outer: 60, ..opts.clone() };
    let jobs: Vec<(f64, Complex64)> = [0.25, 0.5, 0.75].iter().flat_map(|&kap| cfg.k_list.iter().map(move |&k| (kap, k))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(kap, k)| {
            let scaled = if sup > 0.0 { mu_c.scale(c(kap / sup, 0.0)) } else { mu_c.clone() };
            match solve_cgo(&scaled, k, c(1.0, 0.0), &map_opts) {
                Ok(s) => Ok(vec![num(kap), num(k.norm()), "1".into(), s.outer_iterations.to_string(), num(s.outer_residual)]),
                Err(CgoError::NoConvergence { iterations, last_step, .. }) => {
                    Ok(vec![num(kap), num(k.norm()), "0".into(), iterations.to_string(), num(last_step)])
                }
                Err(e) => Err(LabError::from(e)),
            }
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    out.metric("convergence_map_failures", rows.iter().filter(|r| r[2] == "0").count() as f64);
    out.tables.push(Table::new("decay_convergence", &["kappa", "k_abs", "converged", "outer_iterations", "residual_or_step"], rows)?);
    out.persisted.push(Persisted::Field(mu));
    Ok(())
}

pub fn stability_curve(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let disk = g.disk_mask(1.0);
    let rc = random_conductivity(cfg.alpha, cfg.gamma0, cfg.big_k, cfg.seed, g)?;
    record_random(out, &rc);
    let c1 = rc.conductivity.clone();
    let l1 = dtn_matrix(&c1, cfg.n_b, cfg.mesh_h)?;
    let opts = cgo_options(cfg);
    let mu1 = gamma_to_mu(c1.gamma(), cfg.big_k)?;
    let tau1 = cfg.k_list.iter().map(|&k| scattering::tau(&mu1, k, Method::Area, &opts)).collect::<Result<Vec<_>, _>>()?;
    let n = cfg.pairs;
    let ts: Vec<f64> = (0..n).map(|i| 1.0 - 10f64.powf(-3.0 * i as f64 / (n - 1) as f64)).collect();
    let rows = ts
        .par_iter()
        .map(|&t| {
            let base = c1.clone();
            let c2 = Conductivity::from_fn(move |x, y| 1.0 + t * (base.value_at(x, y) - 1.0), cfg.big_k, g)?;
            let rho = dtn_distance(&l1, &dtn_matrix(&c2, cfg.n_b, cfg.mesh_h)?)?;
            let l2 = c1.gamma().sub(c2.gamma()).lp_norm(2.0, Some(&disk));
            let mu2 = gamma_to_mu(c2.gamma(), cfg.big_k)?;
            let mut dtau: f64 = 0.0;
            for (k, t1) in cfg.k_list.iter().zip(&tau1) {
                dtau = dtau.max((scattering::tau(&mu2, *k, Method::Area, &opts)? - t1).norm());
            }
            Ok((t, rho, l2, dtau))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| 1.0 / r.1.ln().abs()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.2).collect();
    out.tables.push(Table::new(
        "stability_curve",
        &["t", "contrast", "rho", "inv_abs_log_rho", "l2diff", "tau_diff"],
        rows.iter().zip(&xs).map(|(r, x)| vec![num(r.0), num(1.0 - r.0), num(r.1), num(*x), num(r.2), num(r.3)]).collect(),
    )?);
    let rho_min = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let rho_max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    out.metric("rho_decades", (rho_max / rho_min).log10());
    let rs = spearman(&xs, &ys).unwrap_or(f64::NAN);
    out.check(Assertion::at_least("spearman(|log rho|^-1, l2diff)", Kind::Monotonicity, rs, 0.9).substitute());
    out.check(Assertion::at_least("rho decades spanned", Kind::Bound, (rho_max / rho_min).log10(), 2.5));
    out.persisted.push(Persisted::Field(c1.gamma().clone().with_tag("gamma1")));
    out.persisted.push(Persisted::Dtn("dtn_gamma1".into(), l1));
    Ok(())
}

pub fn composition(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g1 = cfg.grid();
    let g2 = Grid::new(2 * cfg.grid_n, cfg.grid_s)?;
    let rc = random_conductivity(cfg.alpha, cfg.gamma0, cfg.big_k, cfg.seed, g1)?;
    record_random(out, &rc);
    let beta = 0.9 * cfg.alpha / cfg.big_k;
    let fracs = [0.25, 0.5, 0.75, 0.9];
    let mut rows = Vec::new();
    let mut at_beta = Vec::new();
    for g in [g1, g2] {
        let mu = gamma_to_mu(&resample(&rc.conductivity, g), cfg.big_k)?;
        let pair = BeltramiPair::from_mu(mu.clone(), cfg.big_k)?;
        let sol = principal_solution(&pair, NeumannOptions::default())?;
        let comp = compose_field(&mu, &sol)?;
        let koebe = g.disk_mask(1.0).indices().map(|i| sol.phi.samples()[i].norm()).fold(0.0, f64::max);
        out.metric(format!("max |phi| on disk (N={})", g.n()), koebe);
        out.check(Assertion::at_most(format!("phi(D) inside 4D (N={})", g.n()), Kind::Bound, koebe, 4.0));
        for f in fracs {
            let v = sobolev_norm(&comp, f * cfg.alpha / cfg.big_k)?.value;
            rows.push(vec![g.n().to_string(), num(f), num(f * cfg.alpha / cfg.big_k), num(v)]);
            if f == 0.9 {
                at_beta.push(v);
            }
        }
        if g == g1 {
            out.persisted.push(Persisted::Field(mu.with_tag("mu")));
            out.persisted.push(Persisted::Field(comp.with_tag("mu_o_phi")));
        }
    }
    out.tables.push(Table::new("composition", &["n", "beta_over_alpha_k", "beta", "norm"], rows)?);
    out.check(Assertion::at_least("norm finite at beta", Kind::Finiteness, if at_beta.iter().all(|v| v.is_finite()) { 1.0 } else { 0.0 }, 1.0));
    out.check(Assertion::at_most(format!("grid change at beta={beta}"), Kind::GridStability, (at_beta[1] / at_beta[0] - 1.0).abs(), 0.05));
    // analytic oracle: smooth bump composed with the radial stretch
    let s = 1.0 / cfg.big_k;
    let stretch = |z: Complex64| if z.norm() < 1.0 && z.norm() > 0.0 { z * z.norm().powf(s - 1.0) } else { z };
    let bump = |z: Complex64| c(0.5 * (-(z - c(0.1, -0.05)).norm_sqr() / 0.2).exp(), 0.0);
    let mu_a = ComplexField::from_fn(g2, "bump", bump);
    let phi_a = ComplexField::from_fn(g2, "stretch", stretch);
    let got = compose_values(&mu_a, &phi_a)?;
    let want = ComplexField::from_fn(g2, "exact", |z| bump(stretch(z)));
    out.check(Assertion::at_most("bicubic vs analytic composition", Kind::Oracle, got.sub(&want).sup(), 1e-6));
    let ident = compose_values(&mu_a, &ComplexField::coordinate(g2))?;
    out.check(Assertion::at_most("identity composition", Kind::Oracle, ident.sub(&mu_a).sup(), 0.0));
    Ok(())
}

pub fn regularity(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let rc = random_conductivity(cfg.alpha, cfg.gamma0, cfg.big_k, cfg.seed, g)?;
    record_random(out, &rc);
    let mu = gamma_to_mu(rc.conductivity.gamma(), cfg.big_k)?;
    let kappa = kappa_of(cfg.big_k);
    let s = 0.9 / cfg.big_k * cfg.alpha;
    let sup = mu.sup();
    let mut rows = Vec::new();
    let mut per_t = Vec::new();
    for frac in [0.25, 0.5, 1.0] {
        let t = frac * kappa / sup;
        let pair = BeltramiPair::from_mu(mu.scale(c(t, 0.0)), cfg.big_k)?;
        let sol = principal_solution(&pair, NeumannOptions::default())?;
        let v = sol.regularity_norm(s);
        rows.push(vec![num(t), num(v), num(v / t)]);
        per_t.push(v / t);
    }
    out.tables.push(Table::new("regularity_principal", &["t", "norm", "norm_over_t"], rows)?);
    let (lo, hi) = per_t.iter().fold((f64::INFINITY, 0.0f64), |(l, h), v| (l.min(*v), h.max(*v)));
    out.check(Assertion::at_least("principal norm finite", Kind::Finiteness, if hi.is_finite() { 1.0 } else { 0.0 }, 1.0).substitute());
    out.check(Assertion::at_most("norm/t spread within 1/(1-kappa)", Kind::Bound, hi / lo, 1.0 / (1.0 - kappa)).substitute());
    let opts = cgo_options(cfg);
    let p = 0.8 * 2.0 / (cfg.big_k - 1.0);
    let sols = cfg.k_list.par_iter().map(|&k| solve_cgo(&mu, k, c(1.0, 0.0), &opts)).collect::<Result<Vec<_>, _>>()?;
    let ks: Vec<f64> = cfg.k_list.iter().map(|k| k.norm()).collect();
    let regs: Vec<f64> = sols.iter().map(|sol| cgo::regularity_norm(sol, s)).collect();
    let invs: Vec<f64> = sols.iter().map(|sol| inverse_gradient_integral(sol, p)).collect();
    out.tables.push(Table::new(
        "regularity_cgo",
        &["k_abs", "norm", "inverse_gradient_integral"],
        (0..ks.len()).map(|i| vec![num(ks[i]), num(regs[i]), num(invs[i])]).collect(),
    )?);
    let finite = regs.iter().chain(&invs).all(|v| v.is_finite() && *v > 0.0);
    out.check(Assertion::at_least("cgo norms finite", Kind::Finiteness, if finite { 1.0 } else { 0.0 }, 1.0).substitute());
    if let Some(env) = exponential_envelope(&ks, &regs) {
        out.metric("envelope_rate", env.rate);
        out.metric("envelope_log_constant", env.log_constant);
        let covered = ks.iter().zip(&regs).all(|(k, v)| v.ln() <= env.log_constant + env.rate * k + env.margin + 1e-12);
        out.check(Assertion::at_least("exponential envelope covers norms", Kind::Sign, if covered { env.margin } else { -1.0 }, 0.0).substitute());
    }
    Ok(())
}

pub fn char_fn(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let mut rows = Vec::new();
    for &a in &cfg.a_list {
        let mut v = Vec::new();
        for n in [cfg.grid_n, 2 * cfg.grid_n] {
            let g = Grid::new(n, cfg.grid_s)?;
            let chi = ComplexField::from_fn(g, "chi", |z| c(if z.norm() < CHI_RADIUS { 1.0 } else { 0.0 }, 0.0));
            let value = sobolev_norm(&chi, a)?.value;
            rows.push(vec![num(a), n.to_string(), num(value)]);
            v.push(value);
        }
        let growth = v[1] / v[0] - 1.0;
        if a < 0.5 {
            out.check(Assertion::at_most(format!("stable under doubling (a={a})"), Kind::GridStability, growth, 0.05));
        } else {
            out.check(Assertion::at_least(format!("divergent under doubling (a={a})"), Kind::GridStability, growth, 0.25));
        }
    }
    out.tables.push(Table::new("char_fn", &["a", "n", "value"], rows)?);
    Ok(())
}

pub fn dbar_check(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let opts = cgo_options(cfg);
    let mu = gauss_mu(g, 0.3, c(0.2, 0.1), 0.05);
    let k = cfg.k_list[0];
    let samples = disk_samples(&g, 1.5);
    let mut dks = cfg.dk_list.clone();
    dks.sort_by(|a, b| b.total_cmp(a));
    let mut rows = Vec::new();
    let mut res = Vec::new();
    for r in dbar_residuals(&mu, k, &dks, &samples, &opts)? {
        let dk = r.delta_k;
        rows.push(vec![num(dk), num(r.residual), num(r.tau.re), num(r.tau.im)]);
        res.push(r.residual);
    }
    out.tables.push(Table::new("dbar_check", &["delta_k", "residual", "tau_re", "tau_im"], rows)?);
    out.check(Assertion::at_most(format!("residual at delta_k={}", dks[dks.len() - 1]), Kind::Bound, res[res.len() - 1], 0.05));
    out.check(Assertion::at_most("residual decreases as delta_k shrinks", Kind::Monotonicity, count_increases(&res) as f64, 0.0));
    if res.len() >= 2 {
        let o = (res[res.len() - 2] / res[res.len() - 1]).ln() / (dks[dks.len() - 2] / dks[dks.len() - 1]).ln();
        out.metric("observed_order", o);
    }
    let stretch = stretch_mu(g, cfg.big_k);
    let mut rows = Vec::new();
    for kk in [c(1.0, 0.0), c(2.0, 0.0)] {
        let (fp, fm) = solve_pair(&stretch, kk, &opts)?;
        let a = tau_from_pair(&fp, &fm, Method::Area)?;
        let b = tau_from_pair(&fp, &fm, Method::Boundary { radius: 1.0 })?;
        let rel = (a - b).norm() / a.norm();
        rows.push(vec![num(kk.re), num(kk.im), num(a.re), num(a.im), num(b.re), num(b.im), num(rel)]);
        out.check(Assertion::at_most(format!("area vs boundary tau (k={})", kk.re), Kind::Oracle, rel, 0.01));
    }
    out.tables.push(Table::new("tau_cross_check", &["k_re", "k_im", "area_re", "area_im", "boundary_re", "boundary_im", "rel_diff"], rows)?);
    Ok(())
}

pub fn linear_terms(cfg: &ScenarioConfig, out: &mut Outcome) -> Result<(), LabError> {
    let g = cfg.grid();
    let amp = 0.5;
    let mu = gauss_mu(g, amp, c(0.0, 0.0), 0.05);
    let k = cfg.k_list[0];
    let nt = neumann_term_fn(&mu, k, 3)?;
    let a = 0.5;
    let mut rows = Vec::new();
    let m0 = mu.l2();
    for (n, (f, tails)) in nt.terms.iter().zip(&nt.tails).enumerate() {
        let norm = f.l2();
        let bound = amp.powi(n as i32) * m0;
        let w = sobolev_norm(f, a)?.value;
        rows.push(vec![n.to_string(), num(norm), num(bound), num(tails[0]), num(tails[1]), num(tails[2]), num(w)]);
        out.check(Assertion::at_most(format!("||f_{n}|| <= sup|mu|^n ||mu||"), Kind::Bound, norm, bound * (1.0 + 1e-10)));
        out.check(Assertion::at_most(format!("tails decrease in R (n={n})"), Kind::Monotonicity, count_increases(tails) as f64, 0.0));
        let worst = (0..3).map(|i| tails[i] * (1.0 + (2.0 * nt.radii[i]).powi(2)).powf(a / 2.0) / w).fold(0.0, f64::max);
        out.check(Assertion::at_most(format!("tail times R^a over W^a norm (n={n})"), Kind::Oracle, worst, 1.0 + 1e-10));
    }
    out.metric("radius_1", nt.radii[0]);
    out.metric("radius_2", nt.radii[1]);
    out.metric("radius_3", nt.radii[2]);
    out.tables.push(Table::new("linear_terms", &["n", "l2", "bound", "tail_r1", "tail_r2", "tail_r3", "w_half_norm"], rows)?);
    let ks = [2.0, 4.0, 8.0, 16.0];
    let z = ComplexField::coordinate(g);
    let sups = ks
        .par_iter()
        .map(|&kk| Ok(linear_psi(&mu, c(kk, 0.0), c(1.0, 0.0), NeumannOptions::default())?.phi.sub(&z).sup()))
        .collect::<Result<Vec<f64>, LabError>>()?;
    out.tables.push(Table::new("linear_decay", &["k_abs", "sup_abs_psi_minus_z"], ks.iter().zip(&sups).map(|(k, s)| vec![num(*k), num(*s)]).collect())?);
    let lx: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let ly: Vec<f64> = sups.iter().map(|s| s.ln()).collect();
    out.check(Assertion::at_most("linear decay slope", Kind::Sign, slope(&lx, &ly).unwrap_or(f64::NAN), 0.0).substitute());
    for (i, f) in nt.terms.into_iter().enumerate() {
        out.persisted.push(Persisted::Field(f.with_tag(format!("f_{i}"))));
    }
    Ok(())
}
