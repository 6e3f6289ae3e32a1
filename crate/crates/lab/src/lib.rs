//! Experiment harness: scenario configuration, random conductivities,
//! composition with quasiconformal maps, and the scenarios behind the
//! `beltrami-lab` binary.

pub mod compose;
pub mod config;
pub mod output;
pub mod random;
pub mod scenario;
mod scenarios;
pub mod stats;

pub use compose::{compose_field, compose_values};
pub use config::{ScenarioConfig, SCHEMA};
pub use output::{write_outcome, Assertion, Kind, Outcome, Table};
pub use random::{random_conductivity, RandomConductivity};
pub use scenario::{run_scenario, Scenario};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown scenario {0:?} (see `beltrami-lab list`)")]
    UnknownScenario(String),
    #[error("config: {0}")]
    Config(String),
    #[error("point ({x:.4}, {y:.4}) lies outside the sampled box")]
    OutOfDomain { x: f64, y: f64 },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] field_core::FieldError),
    #[error(transparent)]
    Random(#[from] random::RandomError),
    #[error(transparent)]
    Beltrami(#[from] beltrami::BeltramiError),
    #[error(transparent)]
    Cgo(#[from] cgo::CgoError),
    #[error(transparent)]
    Scattering(#[from] scattering::ScatteringError),
    #[error(transparent)]
    Dtn(#[from] dtn::DtnError),
    #[error(transparent)]
    Sobolev(#[from] sobolev::SobolevError),
}

impl LabError {
    /// Process exit status for this error: 2 for usage problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::UnknownScenario(_) | LabError::Config(_) => 2,
            _ => 1,
        }
    }
}
