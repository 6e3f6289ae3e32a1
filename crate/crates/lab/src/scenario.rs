use crate::output::Outcome;
use crate::{scenarios, LabError, ScenarioConfig};
use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Alessandrini,
    Oscillation,
    Decay,
    StabilityCurve,
    Composition,
    Regularity,
    CharFn,
    DbarCheck,
    LinearTerms,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::Alessandrini,
        Scenario::Oscillation,
        Scenario::Decay,
        Scenario::StabilityCurve,
        Scenario::Composition,
        Scenario::Regularity,
        Scenario::CharFn,
        Scenario::DbarCheck,
        Scenario::LinearTerms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Alessandrini => "alessandrini",
            Scenario::Oscillation => "oscillation",
            Scenario::Decay => "decay",
            Scenario::StabilityCurve => "stability_curve",
            Scenario::Composition => "composition",
            Scenario::Regularity => "regularity",
            Scenario::CharFn => "char_fn",
            Scenario::DbarCheck => "dbar_check",
            Scenario::LinearTerms => "linear_terms",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Scenario::Alessandrini => "small inclusions: DtN distance against L² distance",
            Scenario::Oscillation => "rapidly oscillating conductivities: fluxes converge, coefficients do not",
            Scenario::Decay => "CGO phase decay sup|φ−z| in |k| for a random conductivity",
            Scenario::StabilityCurve => "shrinking-contrast pairs: L² distance against |log ρ|⁻¹",
            Scenario::Composition => "Sobolev regularity of μ∘φ under a quasiconformal change of variables",
            Scenario::Regularity => "fractional regularity of principal and CGO solutions",
            Scenario::CharFn => "Sobolev norm of a disk indicator across the α = 1/2 threshold",
            Scenario::DbarCheck => "d-bar equation in k and area/boundary scattering cross-check",
            Scenario::LinearTerms => "shifted Neumann terms, Fourier tails and linear decay",
        }
    }
}

impl FromStr for Scenario {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| LabError::UnknownScenario(s.to_string()))
    }
}

/// Runs one scenario on a pool of `cfg.workers` threads.
///
/// Numeric failures inside the scenario are recorded in the outcome (its
/// `error` field) together with whatever tables were completed; only a
/// failure to build the pool is returned as an error.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Outcome, LabError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().map_err(|e| LabError::Pool(e.to_string()))?;
    let mut out = Outcome::new(cfg.clone());
    let result = pool.install(|| match cfg.scenario {
        Scenario::Alessandrini => scenarios::alessandrini(cfg, &mut out),
        Scenario::Oscillation => scenarios::oscillation(cfg, &mut out),
        Scenario::Decay => scenarios::decay(cfg, &mut out),
        Scenario::StabilityCurve => scenarios::stability_curve(cfg, &mut out),
        Scenario::Composition => scenarios::composition(cfg, &mut out),
        Scenario::Regularity => scenarios::regularity(cfg, &mut out),
        Scenario::CharFn => scenarios::char_fn(cfg, &mut out),
        Scenario::DbarCheck => scenarios::dbar_check(cfg, &mut out),
        Scenario::LinearTerms => scenarios::linear_terms(cfg, &mut out),
    });
    if let Err(e) = result {
        out.error = Some(e.to_string());
    }
    Ok(out)
}
