//! Scenario artifacts.
//!
//! A run writes into its output directory:
//!
//! * `<table>.csv` for every table, RFC 4180 with a header row;
//! * `summary.json`, described below;
//! * `fields/<tag>.blab` for persisted grid fields (field-core binary format)
//!   and `fields/<tag>.dtn` for DtN matrices.
//!
//! `summary.json` is a single object:
//!
//! ```text
//! schema      "beltrami-lab-summary/1"
//! scenario    scenario name
//! passed      true when every assertion passed and no error occurred
//! config      the resolved configuration (worker count excluded)
//! assertions  [{name, kind, passed, value, bound, substitute}]
//! metrics     {name: number}, sorted by name
//! tables      CSV file names
//! fields      persisted file names, relative to the output directory
//! error       null, or the message of the error that stopped the scenario
//! ```
//!
//! `kind` is one of `bound`, `oracle`, `grid_stability`, `sign`,
//! `monotonicity`, `finiteness`. `substitute` marks assertions that stand in
//! for an estimate whose constants are not computable: only the sign,
//! monotone trend or finiteness is checked. Non-finite numbers are written as
//! `null`. Nothing in the summary depends on timing or on the worker count.

use crate::{LabError, ScenarioConfig};
use dtn::DtnMatrix;
use field_core::ComplexField;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

pub const SUMMARY_SCHEMA: &str = "beltrami-lab-summary/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Bound,
    Oracle,
    GridStability,
    Sign,
    Monotonicity,
    Finiteness,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub kind: Kind,
    pub passed: bool,
    pub value: f64,
    pub bound: f64,
    pub substitute: bool,
}

impl Assertion {
    /// Passes when `value ≤ bound`.
    pub fn at_most(name: impl Into<String>, kind: Kind, value: f64, bound: f64) -> Self {
        Self { name: name.into(), kind, passed: value <= bound, value, bound, substitute: false }
    }

    /// Passes when `value ≥ bound`.
    pub fn at_least(name: impl Into<String>, kind: Kind, value: f64, bound: f64) -> Self {
        Self { name: name.into(), kind, passed: value >= bound, value, bound, substitute: false }
    }

    pub fn substitute(mut self) -> Self {
        self.substitute = true;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub csv: Vec<u8>,
}

impl Table {
    pub fn new(name: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<Self, LabError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        let csv = w.into_inner().map_err(|e| LabError::Io(e.into_error()))?;
        Ok(Self { name: name.to_string(), csv })
    }

    pub fn text(&self) -> &str {
        std::str::from_utf8(&self.csv).expect("csv output is UTF-8")
    }

    /// Column `name` parsed as numbers.
    pub fn column(&self, name: &str) -> Vec<f64> {
        let mut r = csv::Reader::from_reader(&self.csv[..]);
        let idx = r.headers().ok().and_then(|h| h.iter().position(|c| c == name));
        match idx {
            Some(i) => r.records().filter_map(|rec| rec.ok()?.get(i)?.parse().ok()).collect(),
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Persisted {
    Field(ComplexField),
    Dtn(String, DtnMatrix),
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub config: ScenarioConfig,
    pub tables: Vec<Table>,
    pub assertions: Vec<Assertion>,
    pub metrics: BTreeMap<String, f64>,
    pub persisted: Vec<Persisted>,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct Summary<'a> {
    schema: &'static str,
    scenario: &'a str,
    passed: bool,
    config: &'a ScenarioConfig,
    assertions: &'a [Assertion],
    metrics: &'a BTreeMap<String, f64>,
    tables: Vec<String>,
    fields: Vec<String>,
    error: &'a Option<String>,
}

fn file_stem(tag: &str) -> String {
    tag.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

impl Outcome {
    pub fn new(config: ScenarioConfig) -> Self {
        Self { config, tables: Vec::new(), assertions: Vec::new(), metrics: BTreeMap::new(), persisted: Vec::new(), error: None }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.assertions.iter().all(|a| a.passed)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn check(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    pub fn metric(&mut self, name: impl Into<String>, v: f64) {
        self.metrics.insert(name.into(), v);
    }

    fn persisted_names(&self) -> Vec<String> {
        self.persisted
            .iter()
            .map(|p| match p {
                Persisted::Field(f) => format!("fields/{}.blab", file_stem(f.tag())),
                Persisted::Dtn(name, _) => format!("fields/{}.dtn", file_stem(name)),
            })
            .collect()
    }

    pub fn summary_json(&self) -> Result<String, LabError> {
        let s = Summary {
            schema: SUMMARY_SCHEMA,
            scenario: self.config.scenario.name(),
            passed: self.passed(),
            config: &self.config,
            assertions: &self.assertions,
            metrics: &self.metrics,
            tables: self.tables.iter().map(|t| format!("{}.csv", t.name)).collect(),
            fields: self.persisted_names(),
            error: &self.error,
        };
        let mut text = serde_json::to_string_pretty(&s)?;
        text.push('\n');
        Ok(text)
    }
}

/// Writes tables, `summary.json` and persisted fields under `dir`.
pub fn write_outcome(outcome: &Outcome, dir: &Path) -> Result<(), LabError> {
    std::fs::create_dir_all(dir)?;
    for t in &outcome.tables {
        std::fs::write(dir.join(format!("{}.csv", t.name)), &t.csv)?;
    }
    if !outcome.persisted.is_empty() {
        std::fs::create_dir_all(dir.join("fields"))?;
    }
    for (p, name) in outcome.persisted.iter().zip(outcome.persisted_names()) {
        match p {
            Persisted::Field(f) => field_core::persist::save(&dir.join(&name), f)?,
            Persisted::Dtn(_, m) => m.save(&dir.join(&name))?,
        }
    }
    std::fs::write(dir.join("summary.json"), outcome.summary_json()?)?;
    Ok(())
}
