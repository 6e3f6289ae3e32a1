//! Flat `key = value` scenario configuration.
//!
//! ```text
//! schema = beltrami-lab/1
//! scenario = alessandrini
//! r0_list = 0.1, 0.2, 0.3
//! mesh_h = 0.01
//! ```
//!
//! `#` starts a comment. The schema line is required, unknown or repeated
//! keys are errors, and keys not given fall back to per-scenario defaults.

use crate::scenario::Scenario;
use crate::LabError;
use field_core::Complex64;
use serde::Serialize;
use std::path::Path;

pub const SCHEMA: &str = "beltrami-lab/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub grid_n: usize,
    pub grid_s: f64,
    pub big_k: f64,
    pub alpha: f64,
    pub gamma0: f64,
    #[serde(serialize_with = "complex_list")]
    pub k_list: Vec<Complex64>,
    #[serde(serialize_with = "complex_list")]
    pub lambda_list: Vec<Complex64>,
    pub seed: u64,
    pub mesh_h: f64,
    pub n_b: usize,
    pub r0_list: Vec<f64>,
    pub dk_list: Vec<f64>,
    pub a_list: Vec<f64>,
    pub j_list: Vec<u32>,
    pub pairs: usize,
    pub tol: f64,
    #[serde(skip)]
    pub workers: usize,
}

fn complex_list<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| [c.re, c.im]))
}

fn units() -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
}

fn reals(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

impl ScenarioConfig {
    pub fn defaults(scenario: Scenario) -> Self {
        let mut c = Self {
            scenario,
            grid_n: 256,
            grid_s: 4.0,
            big_k: 2.0,
            alpha: 0.5,
            gamma0: 0.1,
            k_list: reals(&[1.0, 2.0]),
            lambda_list: vec![Complex64::new(1.0, 0.0)],
            seed: 1,
            mesh_h: 0.01,
            n_b: 16,
            r0_list: vec![0.1, 0.2, 0.3],
            dk_list: vec![4e-2, 2e-2, 1e-2],
            a_list: vec![0.45, 0.55],
            j_list: vec![1, 2, 4, 8],
            pairs: 8,
            tol: 1e-10,
            workers: 1,
        };
        match scenario {
            Scenario::Alessandrini => {
                c.grid_n = 1024;
                c.grid_s = 2.0;
            }
            Scenario::Oscillation => {
                c.grid_n = 512;
                c.grid_s = 2.0;
            }
            Scenario::Decay => {
                c.grid_n = 512;
                c.k_list = reals(&[2.0, 4.0, 8.0, 16.0, 32.0]);
                c.lambda_list = units();
            }
            Scenario::StabilityCurve => {
                c.mesh_h = 0.02;
                c.k_list = reals(&[1.0]);
            }
            Scenario::Composition => {
                c.alpha = 0.6;
            }
            Scenario::Regularity => {
                c.k_list = reals(&[1.0, 2.0, 4.0]);
            }
            Scenario::CharFn => {
                c.grid_s = 2.0;
            }
            Scenario::DbarCheck => {
                c.grid_n = 512;
                c.k_list = vec![Complex64::from_polar(2.0, 0.7)];
            }
            Scenario::LinearTerms => {
                c.grid_n = 512;
                c.k_list = vec![Complex64::new(40.0, -8.0) * (std::f64::consts::PI / 8.0)];
            }
        }
        c
    }

    pub fn parse(text: &str) -> Result<Self, LabError> {
        let mut schema = None;
        let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| LabError::Config(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if pairs.iter().any(|p| p.1 == key) || (key == "schema" && schema.is_some()) {
                return Err(LabError::Config(format!("line {}: repeated key {key}", i + 1)));
            }
            if key == "schema" {
                schema = Some(value);
            } else {
                pairs.push((i + 1, key, value));
            }
        }
        match schema {
            Some(SCHEMA) => {}
            Some(other) => return Err(LabError::Config(format!("unsupported schema {other}, expected {SCHEMA}"))),
            None => return Err(LabError::Config(format!("missing schema line (schema = {SCHEMA})"))),
        }
        let name = pairs.iter().find(|p| p.1 == "scenario").ok_or_else(|| LabError::Config("missing scenario".into()))?.2;
        let mut c = Self::defaults(name.parse()?);
        for (line, key, value) in pairs {
            c.set(key, value).map_err(|e| LabError::Config(format!("line {line}: {e}")))?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("{key}: cannot parse {v:?}"))
        }
        fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, String> {
            v.split(',').map(|x| num(key, x.trim())).collect()
        }
        match key {
            "scenario" => {}
            "grid_n" => self.grid_n = num(key, value)?,
            "grid_s" => self.grid_s = num(key, value)?,
            "big_k" => self.big_k = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "gamma0" => self.gamma0 = num(key, value)?,
            "k_list" => self.k_list = list(key, value)?,
            "lambda_list" => self.lambda_list = list(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "mesh_h" => self.mesh_h = num(key, value)?,
            "n_b" => self.n_b = num(key, value)?,
            "r0_list" => self.r0_list = list(key, value)?,
            "dk_list" => self.dk_list = list(key, value)?,
            "a_list" => self.a_list = list(key, value)?,
            "j_list" => self.j_list = list(key, value)?,
            "pairs" => self.pairs = num(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "workers" => self.workers = num(key, value)?,
            _ => return Err(format!("unknown key {key}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), LabError> {
        let bad = |what: &str| Err(LabError::Config(format!("{what} out of range")));
        if !self.grid_n.is_power_of_two() || !(16..=4096).contains(&self.grid_n) {
            return bad("grid_n (power of two in 16..=4096)");
        }
        if !(self.grid_s >= 1.5 && self.grid_s <= 64.0) {
            return bad("grid_s (1.5..=64)");
        }
        if !(self.big_k > 1.0 && self.big_k <= 100.0) {
            return bad("big_k (1, 100]");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad("alpha (0, 1)");
        }
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return bad("gamma0 (> 0)");
        }
        if self.k_list.is_empty() || self.k_list.iter().any(|k| !(k.norm().is_finite() && k.norm() <= 1e3)) {
            return bad("k_list (nonempty, |k| ≤ 1000)");
        }
        if self.lambda_list.is_empty() || self.lambda_list.iter().any(|l| (l.norm() - 1.0).abs() > 1e-12) {
            return bad("lambda_list (nonempty, |λ| = 1)");
        }
        if !(self.mesh_h > 0.0 && self.mesh_h <= 0.25) {
            return bad("mesh_h (0, 0.25]");
        }
        if !(1..=dtn::MAX_MODES).contains(&self.n_b) {
            return bad("n_b (1..=64)");
        }
        if self.r0_list.is_empty() || self.r0_list.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return bad("r0_list (nonempty, in (0, 1))");
        }
        if self.dk_list.is_empty() || self.dk_list.iter().any(|d| !(*d > 0.0 && *d <= 0.5)) {
            return bad("dk_list (nonempty, in (0, 0.5])");
        }
        if self.a_list.is_empty() || self.a_list.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
            return bad("a_list (nonempty, in (0, 1))");
        }
        if self.j_list.len() < 2 || self.j_list.iter().any(|j| !(1..=64).contains(j)) {
            return bad("j_list (at least two, in 1..=64)");
        }
        if !(2..=64).contains(&self.pairs) {
            return bad("pairs (2..=64)");
        }
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return bad("tol (0, 1e-4]");
        }
        if !(1..=256).contains(&self.workers) {
            return bad("workers (1..=256)");
        }
        Ok(())
    }

    pub fn grid(&self) -> field_core::Grid {
        field_core::Grid::new(self.grid_n, self.grid_s).expect("validated grid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let c = ScenarioConfig::parse("schema = beltrami-lab/1\nscenario = decay  # comment\n\nk_list = 2, 4+1i, -3i\nseed=9\n").unwrap();
        assert_eq!(c.scenario, Scenario::Decay);
        assert_eq!(c.k_list, vec![Complex64::new(2.0, 0.0), Complex64::new(4.0, 1.0), Complex64::new(0.0, -3.0)]);
        assert_eq!(c.seed, 9);
        assert_eq!(c.grid_n, 512);
        assert_eq!(c.lambda_list.len(), 4);
    }

    #[test]
    fn rejects() {
        for text in [
            "scenario = decay",
            "schema = beltrami-lab/2\nscenario = decay",
            "schema = beltrami-lab/1",
            "schema = beltrami-lab/1\nscenario = nope",
            "schema = beltrami-lab/1\nscenario = decay\ncolour = red",
            "schema = beltrami-lab/1\nscenario = decay\nseed = 1\nseed = 2",
            "schema = beltrami-lab/1\nscenario = decay\ngrid_n = 300",
            "schema = beltrami-lab/1\nscenario = decay\nalpha = 1.5",
            "schema = beltrami-lab/1\nscenario = decay\nlambda_list = 2",
            "schema = beltrami-lab/1\nscenario = decay\nseed = -1",
            "schema = beltrami-lab/1\nscenario decay",
        ] {
            assert!(ScenarioConfig::parse(text).is_err(), "{text}");
        }
        assert!(matches!(ScenarioConfig::parse("schema = beltrami-lab/1\nscenario = nope"), Err(LabError::UnknownScenario(_))));
    }
}
