//! Spreading measures of stationary states of the isotropic D-dimensional
//! harmonic oscillator.
//!
//! Three engines compute the same physical quantities:
//!
//! * **closed**: exact finite expressions in the quantum numbers (moments,
//!   Fisher information, Cartesian Shannon/Rényi entropies, disequilibrium);
//! * **oracle**: high-precision quadrature of the probability densities,
//!   used as ground truth;
//! * **asymptotic**: leading-order Rydberg (`n_r → ∞`) and high-dimensional
//!   (`D → ∞`) expressions, always tagged with what they neglect.
//!
//! Radial densities never include the `r^{D-1}` Jacobian; every integral in
//! the crate writes it explicitly.

pub mod asymptotics;
pub mod error;
pub mod infomeasures;
pub mod moments;
pub mod oracle;
pub mod specfun;
pub mod states;
pub mod uncertainty;

pub use error::{Error, Result};
pub use states::{CartesianState, HyperState, OscillatorSpec, Space, StateSpec};

/// Which engine produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Closed,
    Oracle,
    Asymptotic,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Closed => "closed",
            Engine::Oracle => "oracle",
            Engine::Asymptotic => "asymptotic",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Engine::Closed),
            "oracle" => Ok(Engine::Oracle),
            "asymptotic" => Ok(Engine::Asymptotic),
            other => Err(Error::Domain(format!("unknown engine '{other}'"))),
        }
    }
}

/// A computed quantity together with the engine that produced it.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub engine: Engine,
    pub error_estimate: Option<f64>,
    pub order_note: Option<String>,
}

impl EvalResult {
    pub fn closed(value: f64) -> Self {
        EvalResult { value, engine: Engine::Closed, error_estimate: None, order_note: None }
    }

    pub fn oracle(value: f64, error_estimate: f64) -> Self {
        EvalResult {
            value,
            engine: Engine::Oracle,
            error_estimate: Some(error_estimate),
            order_note: None,
        }
    }
}
