//! Information-theoretic spreading measures: Fisher information, Shannon and
//! Rényi entropies, disequilibrium.
//!
//! Closed forms live next to density-level quadrature counterparts
//! ([`numeric`]); the two are kept independent so each can check the other.

mod diseq;
mod fisher;
pub mod numeric;
mod renyi;
mod shannon;

pub use diseq::{
    angular_disequilibrium, angular_disequilibrium_3j, disequilibrium, radial_disequilibrium,
};
pub use fisher::{fisher, fisher_cartesian, fisher_closed, fisher_from_moments};
pub use renyi::{
    angular_entropic_moment, renyi_angular, renyi_cartesian, renyi_cartesian_ground,
    renyi_hyperspherical, renyi_hyperspherical_tol, renyi_radial,
};
pub use shannon::{
    angular_b1, hermite_entropy, hermite_kernel, log_potential, shannon_angular, shannon_cartesian,
    shannon_cartesian_sum_constant, shannon_hyperspherical, shannon_hyperspherical_tol,
    shannon_radial, swave_angular_entropy,
};

use crate::error::{domain, Result};
use crate::states::Space;
use crate::{Engine, EvalResult};
use serde::Serialize;

/// Rényi order q > 0, q ≠ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenyiOrder {
    q: f64,
}

impl RenyiOrder {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) || q == 1.0 {
            return domain(format!("Rényi order must satisfy q > 0, q ≠ 1; got {q}"));
        }
        Ok(Self { q })
    }

    pub fn q(self) -> f64 {
        self.q
    }

    /// q* with 1/q + 1/q* = 2; exists for q > 1/2.
    pub fn conjugate(self) -> Result<RenyiOrder> {
        if self.q <= 0.5 {
            return domain(format!("conjugate order needs q > 1/2, got {}", self.q));
        }
        RenyiOrder::new(self.q / (2.0 * self.q - 1.0))
    }

    /// β = (q − 1)(1 − D/2), the extra power in the radial L_q norm.
    pub fn beta(self, dim: usize) -> f64 {
        (self.q - 1.0) * (1.0 - dim as f64 / 2.0)
    }

    /// Some(q) when q is a positive integer.
    pub fn integer(self) -> Option<u32> {
        (self.q == self.q.round() && self.q <= u32::MAX as f64).then_some(self.q as u32)
    }
}

/// A measure value tagged with the space and engine that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub space: Space,
    pub engine: Engine,
    pub error_estimate: Option<f64>,
}

impl MeasureValue {
    pub fn closed(value: f64, space: Space) -> Self {
        Self { value, space, engine: Engine::Closed, error_estimate: None }
    }

    pub fn oracle(value: f64, space: Space, error_estimate: f64) -> Self {
        Self { value, space, engine: Engine::Oracle, error_estimate: Some(error_estimate) }
    }
}

impl From<MeasureValue> for EvalResult {
    fn from(m: MeasureValue) -> Self {
        EvalResult { value: m.value, engine: m.engine, error_estimate: m.error_estimate, order_note: None }
    }
}
