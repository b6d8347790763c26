//! Uncertainty relations: left side, bound, slack and saturation for each
//! relation, computed with the same engines as the measures themselves.

use crate::error::{domain, Error, Result};
use crate::infomeasures::{
    fisher, numeric, renyi_cartesian, renyi_hyperspherical_tol, shannon_angular, shannon_cartesian,
    shannon_hyperspherical_tol, swave_angular_entropy, RenyiOrder,
};
use crate::moments::radial_moment;
use crate::oracle::DEFAULT_TOL;
use crate::specfun::{digamma, ln_gamma};
use crate::states::{HyperState, Space, StateSpec};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

/// Relative tolerance for `satisfied` / `saturated`.
pub const SATURATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationId {
    HeisenbergGeneral,
    HeisenbergCentral,
    Stam,
    FisherProductGeneral,
    FisherProductCentral,
    Bbm,
    RudnickiCentral,
    RenyiConjugate,
}

impl RelationId {
    pub const ALL: [RelationId; 8] = [
        RelationId::HeisenbergGeneral,
        RelationId::HeisenbergCentral,
        RelationId::Stam,
        RelationId::FisherProductGeneral,
        RelationId::FisherProductCentral,
        RelationId::Bbm,
        RelationId::RudnickiCentral,
        RelationId::RenyiConjugate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationId::HeisenbergGeneral => "heisenberg_general",
            RelationId::HeisenbergCentral => "heisenberg_central",
            RelationId::Stam => "stam",
            RelationId::FisherProductGeneral => "fisher_product_general",
            RelationId::FisherProductCentral => "fisher_product_central",
            RelationId::Bbm => "bbm",
            RelationId::RudnickiCentral => "rudnicki_central",
            RelationId::RenyiConjugate => "renyi_conjugate",
        }
    }

    /// The inequality in words.
    pub fn statement(self) -> &'static str {
        match self {
            RelationId::HeisenbergGeneral => "<r^2><p^2> >= D^2/4",
            RelationId::HeisenbergCentral => "<r^2><p^2> >= (l + D/2)^2",
            RelationId::Stam => "4<p^2> >= F[rho] (position) / 4<r^2> >= F[gamma] (momentum)",
            RelationId::FisherProductGeneral => "F[rho] F[gamma] >= 4 D^2",
            RelationId::FisherProductCentral => "F[rho] F[gamma] >= 16 (l + D/2)^2 (1 - 2|m|/(2l + D - 2))^2",
            RelationId::Bbm => "S[rho] + S[gamma] >= D ln(e pi)",
            RelationId::RudnickiCentral => "S[rho] + S[gamma] >= C(l, mu)",
            RelationId::RenyiConjugate => "R_q[rho] + R_q'[gamma] >= D ln(pi q^(1/(2q-2)) q'^(1/(2q'-2))), 1/q + 1/q' = 2",
        }
    }

    /// Whether the relation needs definite (l, m), i.e. a hyperspherical state.
    pub fn central(self) -> bool {
        matches!(
            self,
            RelationId::HeisenbergCentral
                | RelationId::Stam
                | RelationId::FisherProductGeneral
                | RelationId::FisherProductCentral
                | RelationId::RudnickiCentral
        )
    }
}

impl std::fmt::Display for RelationId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown relation '{s}'")))
    }
}

/// Knobs for the relations that need them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckParams {
    /// Position-space Rényi order for `renyi_conjugate`; the momentum order is
    /// its conjugate q/(2q−1).
    pub q: f64,
    /// Which Stam inequality to check.
    pub space: Space,
    /// Oracle tolerance for entropic quantities.
    pub tol: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { q: 2.0, space: Space::Position, tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub relation_id: RelationId,
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
    pub satisfied: bool,
    pub saturated: bool,
}

impl RelationReport {
    pub fn new(relation_id: RelationId, lhs: f64, bound: f64) -> Self {
        let slack = lhs - bound;
        let tol = SATURATION_TOL * bound.abs().max(1.0);
        RelationReport { relation_id, lhs, bound, slack, satisfied: slack >= -tol, saturated: slack.abs() <= tol }
    }
}

fn hyper<'a>(id: RelationId, state: &'a StateSpec) -> Result<&'a HyperState> {
    match state {
        StateSpec::Hyper(h) => Ok(h),
        StateSpec::Cartesian(_) => domain(format!(
            "{id} needs definite angular quantum numbers; use a hyperspherical state"
        )),
    }
}

fn second_moments(state: &StateSpec) -> Result<(f64, f64)> {
    match state {
        StateSpec::Hyper(h) => Ok((radial_moment(h, 2.0, Space::Position)?, radial_moment(h, 2.0, Space::Momentum)?)),
        // virial theorem: ⟨p²⟩ = ω²⟨r²⟩ = E
        StateSpec::Cartesian(c) => Ok((c.energy() / (c.omega() * c.omega()), c.energy())),
    }
}

fn shannon(state: &StateSpec, space: Space, tol: f64) -> Result<f64> {
    match state {
        StateSpec::Hyper(h) => Ok(shannon_hyperspherical_tol(h, space, tol)?.value),
        StateSpec::Cartesian(c) => match shannon_cartesian(c, space) {
            Ok(v) => Ok(v.value),
            Err(Error::Unsupported(_)) => Ok(numeric::shannon(state, space, tol)?.value),
            Err(e) => Err(e),
        },
    }
}

fn renyi(state: &StateSpec, q: RenyiOrder, space: Space, tol: f64) -> Result<f64> {
    match state {
        StateSpec::Hyper(h) => Ok(renyi_hyperspherical_tol(h, q, space, tol)?.value),
        StateSpec::Cartesian(c) => match q.integer() {
            Some(qi) => Ok(renyi_cartesian(c, qi, space)?.value),
            None => Ok(numeric::renyi(state, q, space, tol)?.value),
        },
    }
}

/// Angular Shannon entropy E[Y] with the infomeasures engine.
fn angular_entropy(state: &HyperState, tol: f64) -> Result<f64> {
    if state.l() == 0 {
        swave_angular_entropy(state.dim())
    } else {
        Ok(shannon_angular(state, tol)?.0)
    }
}

/// C_{l,{μ}} = 2l + D + 2 ln(Γ(l+D/2)/2) − (2l+D−1)ψ(l+D/2)
///           + (D−1)(ψ((2l+D)/4) + ln 2) + 2E[Y].
pub fn rudnicki_bound(state: &HyperState, tol: f64) -> Result<f64> {
    let (l, d) = (state.l() as f64, state.dim() as f64);
    let h = l + d / 2.0;
    Ok(2.0 * l + d + 2.0 * (ln_gamma(h)? - LN_2) - (2.0 * l + d - 1.0) * digamma(h)?
        + (d - 1.0) * (digamma((2.0 * l + d) / 4.0)? + LN_2)
        + 2.0 * angular_entropy(state, tol)?)
}

/// D ln(π q^{1/(2q−2)} q'^{1/(2q'−2)}) for conjugate q, q'.
pub fn renyi_conjugate_bound(dim: usize, q: RenyiOrder) -> Result<f64> {
    let qc = q.conjugate()?;
    let t = |o: RenyiOrder| o.q().ln() / (2.0 * (o.q() - 1.0));
    Ok(dim as f64 * (PI.ln() + t(q) + t(qc)))
}

pub fn check(id: RelationId, state: &StateSpec, params: &CheckParams) -> Result<RelationReport> {
    let d = state.spec().dim as f64;
    let report = |lhs, bound| Ok(RelationReport::new(id, lhs, bound));
    match id {
        RelationId::HeisenbergGeneral => {
            let (r2, p2) = second_moments(state)?;
            report(r2 * p2, d * d / 4.0)
        }
        RelationId::HeisenbergCentral => {
            let h = hyper(id, state)?;
            let (r2, p2) = second_moments(state)?;
            report(r2 * p2, (h.l() as f64 + d / 2.0).powi(2))
        }
        RelationId::Stam => {
            let h = hyper(id, state)?;
            let other = match params.space {
                Space::Position => Space::Momentum,
                Space::Momentum => Space::Position,
            };
            let f = fisher(h, params.space)?.value;
            report(4.0 * radial_moment(h, 2.0, other)?, f)
        }
        RelationId::FisherProductGeneral => {
            let h = hyper(id, state)?;
            report(fisher(h, Space::Position)?.value * fisher(h, Space::Momentum)?.value, 4.0 * d * d)
        }
        RelationId::FisherProductCentral => {
            let h = hyper(id, state)?;
            let l = h.l() as f64;
            let den = 2.0 * l + d - 2.0;
            // D = 2 with l = 0 has 2l + D − 2 = 0, but then m = 0 too
            let factor = if h.abs_m() == 0 { 1.0 } else { 1.0 - 2.0 * h.abs_m() as f64 / den };
            let bound = 16.0 * (l + d / 2.0).powi(2) * factor * factor;
            report(fisher(h, Space::Position)?.value * fisher(h, Space::Momentum)?.value, bound)
        }
        RelationId::Bbm => {
            let lhs = shannon(state, Space::Position, params.tol)? + shannon(state, Space::Momentum, params.tol)?;
            report(lhs, d * (1.0 + PI.ln()))
        }
        RelationId::RudnickiCentral => {
            let h = hyper(id, state)?;
            let lhs = shannon(state, Space::Position, params.tol)? + shannon(state, Space::Momentum, params.tol)?;
            report(lhs, rudnicki_bound(h, params.tol)?)
        }
        RelationId::RenyiConjugate => {
            let q = RenyiOrder::new(params.q)?;
            let qc = q.conjugate()?;
            let lhs = renyi(state, q, Space::Position, params.tol)? + renyi(state, qc, Space::Momentum, params.tol)?;
            report(lhs, renyi_conjugate_bound(state.spec().dim, q)?)
        }
    }
}

/// Every relation that applies to the state.
pub fn check_all(state: &StateSpec, params: &CheckParams) -> Result<Vec<RelationReport>> {
    RelationId::ALL
        .into_iter()
        .filter(|id| !id.central() || matches!(state, StateSpec::Hyper(_)))
        .map(|id| check(id, state, params))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{CartesianState, OscillatorSpec};

    fn hs(omega: f64, dim: usize, n_r: usize, l: usize, m: i64) -> StateSpec {
        StateSpec::Hyper(HyperState::with_lm(OscillatorSpec::new(omega, dim).unwrap(), n_r, l, m).unwrap())
    }

    #[test]
    fn examples() {
        let p = CheckParams::default();
        let r = check(RelationId::HeisenbergCentral, &hs(1.0, 4, 0, 0, 0), &p).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-12 && (r.bound - 4.0).abs() < 1e-12 && r.saturated);

        let c = StateSpec::Cartesian(CartesianState::ground(OscillatorSpec::new(1.0, 3).unwrap()));
        let r = check(RelationId::Bbm, &c, &p).unwrap();
        assert!((r.lhs - 3.0 * (1.0 + PI.ln())).abs() < 1e-12 && r.saturated);

        let r = check(RelationId::FisherProductCentral, &hs(1.0, 3, 1, 1, 1), &p).unwrap();
        assert!((r.lhs - 196.0).abs() < 1e-10);
        assert!((r.bound - 100.0 / 9.0).abs() < 1e-12);
        assert!(r.satisfied && !r.saturated);

        assert!(check(RelationId::Stam, &c, &p).is_err());
        assert_eq!("renyi_conjugate".parse::<RelationId>().unwrap(), RelationId::RenyiConjugate);
        assert!("nope".parse::<RelationId>().is_err());
    }

    #[test]
    fn report_flags() {
        let r = RelationReport::new(RelationId::Bbm, 1.0, 1.0 + 1e-12);
        assert!(r.satisfied && r.saturated);
        let r = RelationReport::new(RelationId::Bbm, 1.0, 1.1);
        assert!(!r.satisfied && !r.saturated);
    }

    #[test]
    fn rudnicki_ground_d3() {
        let h = HyperState::ground(OscillatorSpec::new(1.0, 3).unwrap()).unwrap();
        let b = rudnicki_bound(&h, DEFAULT_TOL).unwrap();
        assert!((b - 5.5758).abs() < 1e-4, "{b}");
        let r = check(RelationId::RudnickiCentral, &StateSpec::Hyper(h), &CheckParams::default()).unwrap();
        assert!(r.satisfied && !r.saturated);
    }

    #[test]
    fn cartesian_relations() {
        let p = CheckParams { q: 3.0, ..Default::default() };
        for n in [vec![0, 0], vec![1, 0, 2], vec![3]] {
            let c = StateSpec::Cartesian(CartesianState::new(OscillatorSpec::new(0.7, n.len()).unwrap(), n.clone()).unwrap());
            let reports = check_all(&c, &p).unwrap();
            assert_eq!(reports.len(), 3);
            let ground = n.iter().all(|&k| k == 0);
            for r in reports {
                assert!(r.satisfied, "{r:?}");
                assert_eq!(r.saturated, ground, "{r:?}");
            }
        }
    }
}
