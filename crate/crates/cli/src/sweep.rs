//! Grid sweeps: a JSON config expands to an ordered list of rows, rows are
//! evaluated in parallel and written back in config order.

use crate::format::{float, to_json};
use crate::plot::{self, PlotConfig};
use crate::quantity::{evaluate, space_label, EngineSel, Params, QuantityId};
use anyhow::{bail, ensure, Context};
use oscspread::{CartesianState, HyperState, OscillatorSpec, Space, StateSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// An integer axis: a scalar, a list, or an inclusive `{"from", "to", "step"}` span.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntRange {
    One(i64),
    List(Vec<i64>),
    Span { from: i64, to: i64, #[serde(default = "one")] step: i64 },
}

fn one() -> i64 {
    1
}

impl IntRange {
    fn values(&self) -> anyhow::Result<Vec<i64>> {
        let v = match self {
            IntRange::One(x) => vec![*x],
            IntRange::List(v) => v.clone(),
            IntRange::Span { from, to, step } => {
                ensure!(*step > 0, "range step must be positive");
                (*from..=*to).step_by(*step as usize).collect()
            }
        };
        ensure!(!v.is_empty(), "empty range");
        Ok(v)
    }

    fn nonneg(&self, what: &str) -> anyhow::Result<Vec<usize>> {
        self.values()?
            .into_iter()
            .map(|x| usize::try_from(x).with_context(|| format!("{what} must be non-negative, got {x}")))
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FloatRange {
    One(f64),
    List(Vec<f64>),
}

impl FloatRange {
    fn values(&self) -> anyhow::Result<Vec<f64>> {
        let v = match self {
            FloatRange::One(x) => vec![*x],
            FloatRange::List(v) => v.clone(),
        };
        ensure!(!v.is_empty(), "empty range");
        Ok(v)
    }
}

/// A block of states. Hyperspherical blocks range over (D, ω, n_r) and either
/// (l, m) or explicit μ lists; (l, m) pairs that do not form a state (|m| > l,
/// or |m| ≠ l in D = 2) are skipped.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateBlock {
    Hyper {
        #[serde(rename = "D")]
        dim: IntRange,
        omega: FloatRange,
        nr: IntRange,
        l: Option<IntRange>,
        m: Option<IntRange>,
        mu: Option<Vec<Vec<i64>>>,
    },
    Cartesian {
        omega: FloatRange,
        n: Vec<Vec<usize>>,
    },
}

impl StateBlock {
    fn expand(&self) -> anyhow::Result<Vec<StateSpec>> {
        let mut out = Vec::new();
        match self {
            StateBlock::Hyper { dim, omega, nr, l, m, mu } => {
                ensure!(mu.is_none() || (l.is_none() && m.is_none()), "give either mu or (l, m), not both");
                for d in dim.nonneg("D")? {
                    for &w in &omega.values()? {
                        let spec = OscillatorSpec::new(w, d)?;
                        for n_r in nr.nonneg("nr")? {
                            if let Some(mus) = mu {
                                ensure!(!mus.is_empty(), "empty mu list");
                                for m in mus {
                                    out.push(StateSpec::Hyper(HyperState::new(spec, n_r, m.clone())?));
                                }
                                continue;
                            }
                            let ls = l.as_ref().map_or(Ok(vec![0]), |r| r.nonneg("l"))?;
                            let ms = m.as_ref().map_or(Ok(vec![0]), |r| r.values())?;
                            for &l in &ls {
                                for &m in &ms {
                                    let fits = m.unsigned_abs() as usize <= l && (d != 2 || m.unsigned_abs() as usize == l);
                                    if fits {
                                        out.push(StateSpec::Hyper(HyperState::with_lm(spec, n_r, l, m)?));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            StateBlock::Cartesian { omega, n } => {
                ensure!(!n.is_empty(), "empty n list");
                for &w in &omega.values()? {
                    for ns in n {
                        let spec = OscillatorSpec::new(w, ns.len())?;
                        out.push(StateSpec::Cartesian(CartesianState::new(spec, ns.clone())?));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub states: Vec<StateBlock>,
    pub quantities: Vec<String>,
    pub engines: Vec<String>,
    #[serde(default = "default_spaces")]
    pub spaces: Vec<Space>,
    /// Moment orders for `moment` / `heisenberg`.
    #[serde(default = "default_k")]
    pub k: Vec<f64>,
    /// Rényi orders for `renyi` / `renyi_sum`.
    #[serde(default = "default_q")]
    pub q: Vec<f64>,
    /// Polynomial degrees for `hermite_entropy`.
    #[serde(default = "default_n")]
    pub n: Vec<usize>,
    #[serde(default)]
    pub output: OutputFormat,
    /// Where to write the table; stdout when absent.
    pub output_file: Option<String>,
    pub plot: Option<PlotConfig>,
}

fn default_spaces() -> Vec<Space> {
    vec![Space::Position]
}
fn default_k() -> Vec<f64> {
    vec![2.0]
}
fn default_q() -> Vec<f64> {
    vec![2.0]
}
fn default_n() -> Vec<usize> {
    vec![1]
}

/// One row before evaluation.
#[derive(Debug, Clone)]
pub struct RowSpec {
    pub state: StateSpec,
    pub quantity: QuantityId,
    pub space: Space,
    pub params: Params,
    pub engine: EngineSel,
    /// Which of k, q, n the quantity reads.
    shown: [bool; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub state: StateSpec,
    pub quantity: &'static str,
    pub space: &'static str,
    pub k: Option<f64>,
    pub q: Option<f64>,
    pub n: Option<usize>,
    /// The requested engine, including the asymptotic regime.
    pub series: String,
    /// The engine that actually produced the value.
    pub engine: Option<&'static str>,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub order_note: Option<String>,
    /// |value − reference| / |reference| against the closed (else oracle) row
    /// of the same state, quantity, space and parameters.
    pub rel_residual: Option<f64>,
    pub error: Option<String>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let c: SweepConfig = serde_json::from_str(text).context("invalid sweep config")?;
        ensure!(!c.states.is_empty(), "states must be non-empty");
        ensure!(!c.quantities.is_empty(), "quantities must be non-empty");
        ensure!(!c.engines.is_empty(), "engines must be non-empty");
        ensure!(!c.spaces.is_empty() && !c.k.is_empty() && !c.q.is_empty() && !c.n.is_empty(), "parameter lists must be non-empty");
        Ok(c)
    }

    /// All rows in config order: state blocks, then quantities, parameters,
    /// spaces and engines.
    pub fn rows(&self) -> anyhow::Result<Vec<RowSpec>> {
        let quantities: Vec<QuantityId> =
            self.quantities.iter().map(|q| q.parse()).collect::<Result<_, _>>()?;
        let engines: Vec<EngineSel> = self.engines.iter().map(|e| e.parse()).collect::<Result<_, _>>()?;
        let mut states = Vec::new();
        for b in &self.states {
            states.extend(b.expand()?);
        }
        if states.is_empty() {
            bail!("state ranges produce no valid states");
        }
        let base = Params::default();
        let mut rows = Vec::new();
        for st in &states {
            for &q in &quantities {
                let (params, shown): (Vec<Params>, [bool; 3]) = match q {
                    QuantityId::Moment | QuantityId::Heisenberg => {
                        (self.k.iter().map(|&k| Params { k, ..base }).collect(), [true, false, false])
                    }
                    QuantityId::Renyi | QuantityId::RenyiSum => {
                        (self.q.iter().map(|&x| Params { q: x, ..base }).collect(), [false, true, false])
                    }
                    QuantityId::HermiteEntropy => {
                        (self.n.iter().map(|&n| Params { n, ..base }).collect(), [false, false, true])
                    }
                    _ => (vec![base], [false; 3]),
                };
                let spaces: &[Space] = if q.spaced() { &self.spaces } else { &[Space::Position] };
                for p in &params {
                    for &space in spaces {
                        for e in &engines {
                            rows.push(RowSpec { state: st.clone(), quantity: q, space, params: *p, engine: *e, shown });
                        }
                    }
                }
            }
        }
        Ok(rows)
    }
}

pub fn run_rows(specs: &[RowSpec], tol: f64) -> Vec<Row> {
    let mut rows: Vec<Row> = specs
        .par_iter()
        .map(|s| {
            let r = evaluate(Some(&s.state), s.quantity, &s.engine, s.space, &s.params, tol);
            let (engine, value, error_estimate, order_note, error) = match r {
                Ok(v) => (Some(v.engine.as_str()), Some(v.value), v.error_estimate, v.order_note, None),
                Err(e) => (None, None, None, None, Some(e.to_string())),
            };
            Row {
                state: s.state.clone(),
                quantity: s.quantity.as_str(),
                space: space_label(s.quantity, s.space),
                k: s.shown[0].then_some(s.params.k),
                q: s.shown[1].then_some(s.params.q),
                n: s.shown[2].then_some(s.params.n),
                series: s.engine.label(),
                engine,
                value,
                error_estimate,
                order_note,
                rel_residual: None,
                error,
            }
        })
        .collect();
    attach_residuals(specs, &mut rows);
    rows
}

fn attach_residuals(specs: &[RowSpec], rows: &mut [Row]) {
    use std::collections::HashMap;
    let key = |i: usize| {
        let s = &specs[i];
        (s.state.to_json(), s.quantity, s.space, s.params.k.to_bits(), s.params.q.to_bits(), s.params.n)
    };
    let mut refs: HashMap<_, (u8, f64)> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        let rank = match specs[i].engine {
            EngineSel::Closed => 0,
            EngineSel::Oracle => 1,
            _ => continue,
        };
        if let Some(v) = r.value {
            let e = refs.entry(key(i)).or_insert((rank, v));
            if rank < e.0 {
                *e = (rank, v);
            }
        }
    }
    for i in 0..rows.len() {
        let Some(v) = rows[i].value else { continue };
        if let Some(&(rank, reference)) = refs.get(&key(i)) {
            let own = match specs[i].engine {
                EngineSel::Closed => 0,
                EngineSel::Oracle => 1,
                _ => 2,
            };
            if own > rank && reference != 0.0 {
                rows[i].rel_residual = Some((v - reference).abs() / reference.abs());
            }
        }
    }
}

const CSV_HEADER: [&str; 13] = [
    "state", "quantity", "space", "k", "q", "n", "series", "engine", "value", "error_estimate", "order_note",
    "rel_residual", "error",
];

pub fn write_csv(rows: &[Row]) -> anyhow::Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let f = |x: Option<f64>| x.map(float).unwrap_or_default();
    for r in rows {
        w.write_record([
            to_json(&r.state),
            r.quantity.to_string(),
            r.space.to_string(),
            f(r.k),
            f(r.q),
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.series.clone(),
            r.engine.unwrap_or_default().to_string(),
            f(r.value),
            f(r.error_estimate),
            r.order_note.clone().unwrap_or_default(),
            f(r.rel_residual),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn write_json_lines(rows: &[Row]) -> String {
    rows.iter().map(|r| to_json(r) + "\n").collect()
}

/// Runs a sweep; returns the table text and whether every row succeeded.
pub fn run(config: &SweepConfig, tol: f64) -> anyhow::Result<(String, bool)> {
    let specs = config.rows()?;
    let rows = run_rows(&specs, tol);
    let ok = rows.iter().all(|r| r.error.is_none());
    let text = match config.output {
        OutputFormat::Json => write_json_lines(&rows),
        OutputFormat::Csv => write_csv(&rows)?,
    };
    if let Some(p) = &config.plot {
        let svg = plot::render(p, &specs, &rows)?;
        std::fs::write(&p.file, svg).with_context(|| format!("writing plot {}", p.file))?;
    }
    Ok((text, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(s: &str) -> SweepConfig {
        SweepConfig::parse(s).unwrap()
    }

    #[test]
    fn expansion_order_and_skips() {
        let c = config(
            r#"{"states":[{"kind":"hyper","D":[2,3],"omega":1,"nr":{"from":0,"to":1},"l":[0,1],"m":[-1,0,1]}],
                "quantities":["energy"],"engines":["closed"]}"#,
        );
        let rows = c.rows().unwrap();
        // D=2: l=0,m=0 ; l=1,m=±1 — D=3: l=0,m=0 ; l=1,m∈{−1,0,1}; each for two n_r
        assert_eq!(rows.len(), 2 * 3 + 2 * 4);
        assert_eq!(rows[0].state.spec().dim, 2);
        assert_eq!(rows.last().unwrap().state.spec().dim, 3);
    }

    #[test]
    fn rydberg_residuals_decrease() {
        let c = config(
            r#"{"states":[{"kind":"hyper","D":3,"omega":1,"nr":[50,200,800]}],
                "quantities":["moment"],"k":[1],"engines":["closed","asymptotic"]}"#,
        );
        let rows = run_rows(&c.rows().unwrap(), 1e-10);
        let res: Vec<f64> = rows.iter().filter_map(|r| r.rel_residual).collect();
        assert_eq!(res.len(), 3);
        assert!(res[0] > res[1] && res[1] > res[2], "{res:?}");
    }

    #[test]
    fn failed_rows_are_recorded() {
        let c = config(
            r#"{"states":[{"kind":"cartesian","omega":1,"n":[[0,1]]}],
                "quantities":["moment","energy"],"engines":["closed"],"output":"csv"}"#,
        );
        let (text, ok) = run(&c, 1e-10).unwrap();
        assert!(!ok);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains("hyperspherical"));
        assert!(lines[2].contains("2.0000000000000000e0"));
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(SweepConfig::parse(r#"{"states":[],"quantities":["energy"],"engines":["closed"]}"#).is_err());
        let c = config(r#"{"states":[{"kind":"hyper","D":3,"omega":1,"nr":0}],"quantities":["nope"],"engines":["closed"]}"#);
        assert!(c.rows().is_err());
    }
}
