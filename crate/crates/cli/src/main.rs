//! `oscspread` command-line front end.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error (including
//! unsupported requests), 4 convergence failure (the partial result is still
//! printed, flagged `"converged":false`), 5 internal consistency failure,
//! 1 when a sweep or validation run has failing rows.

use clap::{Parser, Subcommand};
use oscspread_cli::format::{emit, to_json};
use oscspread_cli::quantity::{evaluate, space_label, EngineSel, Params, QuantityId};
use oscspread_cli::{sweep, validate};
use oscspread::oracle::DEFAULT_TOL;
use oscspread::uncertainty::{check, check_all, CheckParams, RelationId};
use oscspread::{Error, Space, StateSpec};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oscspread", version, about = "Spreading and entropic measures of D-dimensional oscillator states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one quantity for one state.
    Compute {
        /// State as JSON, e.g. '{"kind":"hyper","D":3,"omega":1,"nr":0,"mu":[0,0]}'.
        #[arg(long)]
        state: Option<String>,
        #[arg(long)]
        quantity: String,
        /// closed | oracle | asymptotic[:rydberg | :highdim[:limit | :as_published]]
        #[arg(long, default_value = "closed")]
        engine: String,
        #[arg(long, default_value = "position")]
        space: String,
        /// Moment order.
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        k: f64,
        /// Rényi order.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Hermite degree.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Evaluate a grid described by a JSON config file.
    Sweep {
        #[arg(long)]
        config: String,
    },
    /// Check uncertainty relations for one state.
    Uncertainty {
        #[arg(long)]
        state: String,
        /// One relation id; all applicable relations when absent.
        #[arg(long)]
        relation: Option<String>,
        /// Position-space Rényi order of the conjugate pair.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Which Stam inequality to check.
        #[arg(long, default_value = "position")]
        space: String,
    },
    /// Run the cross-engine validation suite.
    Validate {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<String>,
    },
    /// List every quantity id with its engines.
    ListQuantities,
}

/// A failure with its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn parse(m: impl std::fmt::Display) -> Self {
        Fail { code: 2, message: m.to_string() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Unsupported(_) => 3,
            Error::Convergence { .. } => 4,
            Error::Consistency(_) => 5,
        };
        Fail { code, message: e.to_string() }
    }
}

fn oracle_tol() -> Result<f64, Fail> {
    match std::env::var("HO_ORACLE_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Fail::parse(format!("HO_ORACLE_TOL must be a positive real, got '{s}'"))),
        },
    }
}

/// Parse a state; malformed JSON is a parse error, invalid quantum numbers a domain error.
fn parse_state(s: &str) -> Result<StateSpec, Fail> {
    serde_json::from_str::<StateSpec>(s).map_err(|e| {
        let msg = format!("invalid state: {e}");
        if e.is_data() && (msg.contains("domain error") || msg.contains("unsupported")) {
            Fail { code: 3, message: msg }
        } else {
            Fail::parse(msg)
        }
    })
}

fn parse_space(s: &str) -> Result<Space, Fail> {
    s.parse().map_err(Fail::parse)
}

#[derive(Serialize)]
struct Record<'a> {
    state: Option<&'a StateSpec>,
    quantity: &'a str,
    space: &'a str,
    engine: &'a str,
    value: f64,
    error_estimate: Option<f64>,
    order_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
}

fn compute(
    state: Option<String>,
    quantity: &str,
    engine: &str,
    space: &str,
    params: Params,
) -> Result<(), Fail> {
    let tol = oracle_tol()?;
    let quantity: QuantityId = quantity.parse().map_err(Fail::parse)?;
    let engine: EngineSel = engine.parse().map_err(Fail::parse)?;
    let space = parse_space(space)?;
    let state = state.as_deref().map(parse_state).transpose()?;
    if state.is_none() && quantity.needs_state() {
        return Err(Fail::parse(format!("quantity '{}' needs --state", quantity.as_str())));
    }
    let label = engine.label();
    let record = |value, error_estimate, order_note, engine_tag: &str, converged| {
        to_json(&Record {
            state: state.as_ref(),
            quantity: quantity.as_str(),
            space: space_label(quantity, space),
            engine: engine_tag,
            value,
            error_estimate,
            order_note,
            converged,
        })
    };
    match evaluate(state.as_ref(), quantity, &engine, space, &params, tol) {
        Ok(r) => {
            emit(&(record(r.value, r.error_estimate, r.order_note, r.engine.as_str(), None) + "\n"));
            Ok(())
        }
        Err(Error::Convergence { message, estimate, abs_error }) => {
            emit(&(record(estimate, Some(abs_error), None, &label, Some(false)) + "\n"));
            Err(Error::Convergence { message, estimate, abs_error }.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn run_sweep(path: &str) -> Result<bool, Fail> {
    let tol = oracle_tol()?;
    let text = std::fs::read_to_string(path).map_err(|e| Fail::parse(format!("reading {path}: {e}")))?;
    let cfg = sweep::SweepConfig::parse(&text).map_err(|e| Fail::parse(format!("{e:#}")))?;
    // config-level problems (unknown ids, invalid states) are parse errors
    cfg.rows().map_err(|e| Fail::parse(format!("{e:#}")))?;
    let (table, ok) = sweep::run(&cfg, tol).map_err(|e| Fail { code: 1, message: format!("{e:#}") })?;
    match &cfg.output_file {
        Some(f) => std::fs::write(f, table).map_err(|e| Fail { code: 1, message: format!("writing {f}: {e}") })?,
        None => emit(&table),
    }
    Ok(ok)
}

fn uncertainty(state: &str, relation: Option<String>, q: f64, space: &str) -> Result<(), Fail> {
    let params = CheckParams { q, space: parse_space(space)?, tol: oracle_tol()? };
    let state = parse_state(state)?;
    let reports = match relation {
        Some(r) => {
            let id: RelationId = r.parse().map_err(Fail::parse)?;
            vec![check(id, &state, &params)?]
        }
        None => check_all(&state, &params)?,
    };
    for r in reports {
        emit(&(to_json(&r) + "\n"));
    }
    Ok(())
}

fn list_quantities() {
    #[derive(Serialize)]
    struct Entry {
        id: &'static str,
        description: &'static str,
        engines: &'static [&'static str],
        space_dependent: bool,
    }
    for q in QuantityId::ALL {
        let e = Entry { id: q.as_str(), description: q.description(), engines: q.engines(), space_dependent: q.spaced() };
        emit(&(to_json(&e) + "\n"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Compute { state, quantity, engine, space, k, q, n } => {
            compute(state, &quantity, &engine, &space, Params { k, q, n }).map(|_| true)
        }
        Cmd::Sweep { config } => run_sweep(&config),
        Cmd::Uncertainty { state, relation, q, space } => uncertainty(&state, relation, q, &space).map(|_| true),
        Cmd::Validate { quick: _, full, report } => {
            let preset = if full { validate::Preset::Full } else { validate::Preset::Quick };
            let tol = match std::env::var_os("HO_ORACLE_TOL") {
                Some(_) => oracle_tol().map(Some),
                None => Ok(None),
            };
            tol.and_then(|t| validate::run(preset, t, report.as_deref()).map_err(|m| Fail { code: 1, message: m }))
        }
        Cmd::ListQuantities => {
            list_quantities();
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
