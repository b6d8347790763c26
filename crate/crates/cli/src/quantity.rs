//! Quantity registry: each id names one library operation, evaluated by the
//! requested engine.

use oscspread::asymptotics::{
    highdim_moment, highdim_renyi, highdim_renyi_sum, highdim_shannon, rydberg_heisenberg, rydberg_moment,
    rydberg_renyi, rydberg_shannon, rydberg_shannon_sum, HighDimShannonMode, Regime, RydbergLimit,
};
use oscspread::infomeasures::{
    disequilibrium, fisher, fisher_cartesian, hermite_entropy, numeric, renyi_angular, renyi_cartesian,
    renyi_hyperspherical_tol, shannon_cartesian, shannon_hyperspherical_tol, RenyiOrder,
};
use oscspread::moments::{heisenberg_product, radial_moment};
use oscspread::states::energy;
use oscspread::{Engine, Error, EvalResult, HyperState, Result, Space, StateSpec};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityId {
    Energy,
    Moment,
    Heisenberg,
    Fisher,
    FisherProduct,
    Shannon,
    ShannonSum,
    Renyi,
    RenyiSum,
    Disequilibrium,
    HermiteEntropy,
}

impl QuantityId {
    pub const ALL: [QuantityId; 11] = [
        QuantityId::Energy,
        QuantityId::Moment,
        QuantityId::Heisenberg,
        QuantityId::Fisher,
        QuantityId::FisherProduct,
        QuantityId::Shannon,
        QuantityId::ShannonSum,
        QuantityId::Renyi,
        QuantityId::RenyiSum,
        QuantityId::Disequilibrium,
        QuantityId::HermiteEntropy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuantityId::Energy => "energy",
            QuantityId::Moment => "moment",
            QuantityId::Heisenberg => "heisenberg",
            QuantityId::Fisher => "fisher",
            QuantityId::FisherProduct => "fisher_product",
            QuantityId::Shannon => "shannon",
            QuantityId::ShannonSum => "shannon_sum",
            QuantityId::Renyi => "renyi",
            QuantityId::RenyiSum => "renyi_sum",
            QuantityId::Disequilibrium => "disequilibrium",
            QuantityId::HermiteEntropy => "hermite_entropy",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            QuantityId::Energy => "energy eigenvalue (2n_r + l + D/2)w = (N + D/2)w",
            QuantityId::Moment => "radial expectation value <r^k> (position) or <p^k> (momentum); --k",
            QuantityId::Heisenberg => "Heisenberg-like product <r^k><p^k>, w-independent; --k",
            QuantityId::Fisher => "Fisher information F[rho] or F[gamma]",
            QuantityId::FisherProduct => "Fisher uncertainty product F[rho] F[gamma]",
            QuantityId::Shannon => "Shannon entropy -int rho ln rho",
            QuantityId::ShannonSum => "entropic uncertainty sum S[rho] + S[gamma]",
            QuantityId::Renyi => "Renyi entropy ln(int rho^q)/(1-q); --q",
            QuantityId::RenyiSum => "conjugate Renyi sum R_q[rho] + R_q'[gamma], 1/q + 1/q' = 2; --q",
            QuantityId::Disequilibrium => "disequilibrium int rho^2 = exp(-R_2)",
            QuantityId::HermiteEntropy => "entropy functional E(H_n) of the Hermite polynomial on the real line; --n",
        }
    }

    /// Engines with an implementation for this quantity.
    pub fn engines(self) -> &'static [&'static str] {
        match self {
            QuantityId::Energy | QuantityId::Fisher | QuantityId::FisherProduct => &["closed"],
            QuantityId::HermiteEntropy => &["closed", "oracle"],
            _ => &["closed", "oracle", "asymptotic"],
        }
    }

    /// Whether the value depends on the `space` argument.
    pub fn spaced(self) -> bool {
        matches!(
            self,
            QuantityId::Moment | QuantityId::Fisher | QuantityId::Shannon | QuantityId::Renyi | QuantityId::Disequilibrium
        )
    }

    /// Whether the quantity is a property of a state at all.
    pub fn needs_state(self) -> bool {
        self != QuantityId::HermiteEntropy
    }
}

impl std::str::FromStr for QuantityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuantityId::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown quantity '{s}' (see list-quantities)")))
    }
}

/// An engine request. The asymptotic engine carries its regime and, for the
/// high-dimensional Shannon entropy, the evaluation mode. Written as
/// `closed`, `oracle`, `asymptotic[:rydberg|:highdim[:limit|:as_published]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EngineSel {
    Closed,
    Oracle,
    Asymptotic { regime: Regime, mode: HighDimShannonMode },
}

impl EngineSel {
    pub fn label(&self) -> String {
        match self {
            EngineSel::Closed => "closed".into(),
            EngineSel::Oracle => "oracle".into(),
            EngineSel::Asymptotic { regime: Regime::Rydberg, .. } => "asymptotic:rydberg".into(),
            EngineSel::Asymptotic { regime: Regime::HighDim, mode } => match mode {
                HighDimShannonMode::Limit => "asymptotic:highdim".into(),
                HighDimShannonMode::AsPublished => "asymptotic:highdim:as_published".into(),
            },
        }
    }
}

impl std::str::FromStr for EngineSel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let head: Engine = parts.next().unwrap_or_default().parse()?;
        let sel = match head {
            Engine::Closed => EngineSel::Closed,
            Engine::Oracle => EngineSel::Oracle,
            Engine::Asymptotic => {
                let regime = match parts.next() {
                    None | Some("rydberg") => Regime::Rydberg,
                    Some("highdim") => Regime::HighDim,
                    Some(other) => return Err(Error::Domain(format!("unknown asymptotic regime '{other}'"))),
                };
                let mode = match parts.next() {
                    None => HighDimShannonMode::default(),
                    Some(m) if regime == Regime::HighDim => m.parse()?,
                    Some(m) => return Err(Error::Domain(format!("mode '{m}' applies only to the highdim regime"))),
                };
                EngineSel::Asymptotic { regime, mode }
            }
        };
        if parts.next().is_some() {
            return Err(Error::Domain(format!("malformed engine '{s}'")));
        }
        Ok(sel)
    }
}

/// Order parameters; each quantity reads only the ones it documents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    pub k: f64,
    pub q: f64,
    pub n: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { k: 2.0, q: 2.0, n: 1 }
    }
}

fn hyper(state: &StateSpec, what: &str) -> Result<HyperState> {
    match state {
        StateSpec::Hyper(h) => Ok(h.clone()),
        StateSpec::Cartesian(_) => Err(Error::Unsupported(format!("{what} needs a hyperspherical state"))),
    }
}

fn unsupported(q: QuantityId, e: &EngineSel) -> Error {
    Error::Unsupported(format!("quantity '{}' has no '{}' engine", q.as_str(), e.label()))
}

fn rydberg_limit(h: &HyperState) -> Result<RydbergLimit> {
    if h.n_r == 0 {
        return Err(Error::Domain("Rydberg asymptotics need n_r ≥ 1".into()));
    }
    RydbergLimit::new(h.l() as f64 / h.n_r as f64)
}

fn both(pos: EvalResult, mom: EvalResult) -> EvalResult {
    let error_estimate = match (pos.error_estimate, mom.error_estimate) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(0.0) + b.unwrap_or(0.0)),
    };
    let engine = if pos.engine == Engine::Oracle || mom.engine == Engine::Oracle { Engine::Oracle } else { pos.engine };
    EvalResult { value: pos.value + mom.value, engine, error_estimate, order_note: pos.order_note.or(mom.order_note) }
}

/// Evaluate one quantity. `state` may be `None` only for state-free quantities.
pub fn evaluate(
    state: Option<&StateSpec>,
    quantity: QuantityId,
    engine: &EngineSel,
    space: Space,
    p: &Params,
    tol: f64,
) -> Result<EvalResult> {
    use QuantityId as Q;
    if quantity == Q::HermiteEntropy {
        return match engine {
            EngineSel::Closed => Ok(EvalResult::closed(hermite_entropy(p.n)?)),
            EngineSel::Oracle => {
                let e = numeric::hermite_entropy(p.n, tol)?;
                Ok(EvalResult::oracle(e.value, e.abs_error_estimate))
            }
            _ => Err(unsupported(quantity, engine)),
        };
    }
    let state = state.ok_or_else(|| Error::Domain(format!("quantity '{}' needs --state", quantity.as_str())))?;
    match (quantity, engine) {
        (Q::Energy, EngineSel::Closed) => Ok(EvalResult::closed(energy(state))),

        (Q::Moment, EngineSel::Closed) => {
            Ok(EvalResult::closed(radial_moment(&hyper(state, "moment")?, p.k, space)?))
        }
        (Q::Moment, EngineSel::Oracle) => {
            let e = numeric::radial_moment(&hyper(state, "moment")?, p.k, space, tol)?;
            Ok(EvalResult::oracle(e.value, e.abs_error_estimate))
        }
        (Q::Moment, EngineSel::Asymptotic { regime, .. }) => {
            let h = hyper(state, "moment")?;
            match regime {
                Regime::Rydberg => Ok(rydberg_moment(p.k, h.n_r, rydberg_limit(&h)?, h.omega(), space)?.into()),
                Regime::HighDim => {
                    Ok(highdim_moment(p.k, h.dim(), h.omega(), h.n_r, h.l(), space)?.refined.into())
                }
            }
        }

        (Q::Heisenberg, EngineSel::Closed) => {
            Ok(EvalResult::closed(heisenberg_product(&hyper(state, "heisenberg")?, p.k)?))
        }
        (Q::Heisenberg, EngineSel::Oracle) => {
            let h = hyper(state, "heisenberg")?;
            let a = numeric::radial_moment(&h, p.k, Space::Position, tol)?;
            let b = numeric::radial_moment(&h, p.k, Space::Momentum, tol)?;
            let err = a.abs_error_estimate * b.value.abs() + b.abs_error_estimate * a.value.abs();
            Ok(EvalResult::oracle(a.value * b.value, err))
        }
        (Q::Heisenberg, EngineSel::Asymptotic { regime, .. }) => {
            let h = hyper(state, "heisenberg")?;
            match regime {
                Regime::Rydberg => Ok(rydberg_heisenberg(p.k, h.n_r)?.into()),
                Regime::HighDim => {
                    Ok(highdim_moment(p.k, h.dim(), h.omega(), h.n_r, h.l(), Space::Position)?.heisenberg.into())
                }
            }
        }

        (Q::Fisher, EngineSel::Closed) => match state {
            StateSpec::Hyper(h) => Ok(fisher(h, space)?.into()),
            StateSpec::Cartesian(c) => Ok(fisher_cartesian(c, space).into()),
        },
        (Q::FisherProduct, EngineSel::Closed) => {
            let pos = evaluate(Some(state), Q::Fisher, engine, Space::Position, p, tol)?;
            let mom = evaluate(Some(state), Q::Fisher, engine, Space::Momentum, p, tol)?;
            Ok(EvalResult::closed(pos.value * mom.value))
        }

        (Q::Shannon, EngineSel::Closed) => match state {
            StateSpec::Hyper(h) => Ok(shannon_hyperspherical_tol(h, space, tol)?.into()),
            StateSpec::Cartesian(c) => Ok(shannon_cartesian(c, space)?.into()),
        },
        (Q::Shannon, EngineSel::Oracle) => Ok(numeric::shannon(state, space, tol)?.into()),
        (Q::Shannon, EngineSel::Asymptotic { regime, mode }) => {
            let h = hyper(state, "asymptotic shannon")?;
            match regime {
                Regime::Rydberg => Ok(rydberg_shannon(&h, space)?.into()),
                Regime::HighDim => Ok(highdim_shannon(&h, space, *mode)?.into()),
            }
        }
        (Q::ShannonSum, EngineSel::Asymptotic { regime: Regime::Rydberg, .. }) => {
            Ok(rydberg_shannon_sum(&hyper(state, "asymptotic shannon_sum")?)?.into())
        }
        (Q::ShannonSum, _) => Ok(both(
            evaluate(Some(state), Q::Shannon, engine, Space::Position, p, tol)?,
            evaluate(Some(state), Q::Shannon, engine, Space::Momentum, p, tol)?,
        )),

        (Q::Renyi, EngineSel::Closed) => {
            let q = RenyiOrder::new(p.q)?;
            match state {
                StateSpec::Hyper(h) => Ok(renyi_hyperspherical_tol(h, q, space, tol)?.into()),
                StateSpec::Cartesian(c) => match q.integer() {
                    Some(qi) if qi >= 2 => Ok(renyi_cartesian(c, qi, space)?.into()),
                    _ => Err(Error::Unsupported(format!(
                        "closed Cartesian Rényi entropies need integer q ≥ 2 (got {}); use the oracle engine",
                        p.q
                    ))),
                },
            }
        }
        (Q::Renyi, EngineSel::Oracle) => Ok(numeric::renyi(state, RenyiOrder::new(p.q)?, space, tol)?.into()),
        (Q::Renyi, EngineSel::Asymptotic { regime, .. }) => {
            let h = hyper(state, "asymptotic renyi")?;
            let q = RenyiOrder::new(p.q)?;
            match regime {
                Regime::Rydberg => Ok(rydberg_renyi(&h, q, renyi_angular(&h, q, tol)?.0, space)?.into()),
                Regime::HighDim => Ok(highdim_renyi(&h, q, space)?.total.into()),
            }
        }
        (Q::RenyiSum, EngineSel::Asymptotic { regime: Regime::HighDim, .. }) => {
            Ok(highdim_renyi_sum(state.spec().dim, RenyiOrder::new(p.q)?)?.into())
        }
        (Q::RenyiSum, _) => {
            let qc = RenyiOrder::new(p.q)?.conjugate()?;
            let mom = Params { q: qc.q(), ..*p };
            Ok(both(
                evaluate(Some(state), Q::Renyi, engine, Space::Position, p, tol)?,
                evaluate(Some(state), Q::Renyi, engine, Space::Momentum, &mom, tol)?,
            ))
        }

        (Q::Disequilibrium, EngineSel::Closed) => match state {
            StateSpec::Hyper(h) => Ok(disequilibrium(h, space)?.into()),
            StateSpec::Cartesian(c) => Ok(EvalResult::closed((-renyi_cartesian(c, 2, space)?.value).exp())),
        },
        (Q::Disequilibrium, EngineSel::Oracle) => Ok(numeric::disequilibrium(state, space, tol)?.into()),
        (Q::Disequilibrium, EngineSel::Asymptotic { .. }) => {
            let r = evaluate(Some(state), Q::Renyi, engine, space, &Params { q: 2.0, ..*p }, tol)?;
            Ok(EvalResult { value: (-r.value).exp(), ..r })
        }

        _ => Err(unsupported(quantity, engine)),
    }
}

/// The space label written to output records.
pub fn space_label(quantity: QuantityId, space: Space) -> &'static str {
    if quantity.spaced() {
        space.as_str()
    } else {
        "both"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> StateSpec {
        s.parse().unwrap()
    }

    #[test]
    fn engine_selectors_round_trip() {
        for s in ["closed", "oracle", "asymptotic:rydberg", "asymptotic:highdim", "asymptotic:highdim:as_published"] {
            assert_eq!(s.parse::<EngineSel>().unwrap().label(), s);
        }
        assert_eq!("asymptotic".parse::<EngineSel>().unwrap().label(), "asymptotic:rydberg");
        assert!("asymptotic:rydberg:limit".parse::<EngineSel>().is_err());
        assert!("closed:x".parse::<EngineSel>().is_err());
        assert!("fast".parse::<EngineSel>().is_err());
    }

    #[test]
    fn every_id_parses_and_lists_engines() {
        for q in QuantityId::ALL {
            assert_eq!(q.as_str().parse::<QuantityId>().unwrap(), q);
            for e in q.engines() {
                e.parse::<EngineSel>().unwrap();
            }
        }
    }

    #[test]
    fn examples() {
        let g = st(r#"{"kind":"hyper","D":3,"omega":1,"nr":0,"mu":[0,0]}"#);
        let p = Params::default();
        let f = evaluate(Some(&g), QuantityId::Fisher, &EngineSel::Closed, Space::Position, &p, 1e-12).unwrap();
        assert_eq!(f.value, 6.0);
        let k0 = Params { k: 0.0, ..p };
        for e in [EngineSel::Closed, EngineSel::Oracle] {
            let m = evaluate(Some(&g), QuantityId::Moment, &e, Space::Momentum, &k0, 1e-12).unwrap();
            assert!((m.value - 1.0).abs() < 1e-12);
        }
        let c = st(r#"{"kind":"cartesian","omega":1,"n":[1]}"#);
        let s = evaluate(Some(&c), QuantityId::Shannon, &EngineSel::Oracle, Space::Position, &p, 1e-12).unwrap();
        assert!((s.value - 1.342_727_788_386_178).abs() < 1e-8);
        assert_eq!(s.engine, Engine::Oracle);
    }

    #[test]
    fn unsupported_combinations_are_errors() {
        let c = st(r#"{"kind":"cartesian","omega":1,"n":[1,2]}"#);
        let p = Params::default();
        assert!(evaluate(Some(&c), QuantityId::Moment, &EngineSel::Closed, Space::Position, &p, 1e-10).is_err());
        assert!(evaluate(Some(&c), QuantityId::Fisher, &EngineSel::Oracle, Space::Position, &p, 1e-10).is_err());
        assert!(evaluate(None, QuantityId::Energy, &EngineSel::Closed, Space::Position, &p, 1e-10).is_err());
    }
}
