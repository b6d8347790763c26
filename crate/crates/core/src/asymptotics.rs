//! Rydberg (n_r → ∞) and high-dimensional (D → ∞) asymptotics.
//!
//! Every value carries an `order_note` naming what was neglected, so callers
//! can show it next to the number. Nothing here is ever substituted silently
//! for an exact result.

use crate::error::{domain, Error, Result};
use crate::infomeasures::{shannon_angular, swave_angular_entropy, RenyiOrder};
use crate::oracle::{integrate_adaptive, DEFAULT_TOL};
use crate::specfun::{bessel_j, digamma, ln_gamma};
use crate::states::{HyperState, Space};
use crate::{Engine, EvalResult};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};

/// Which limit produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Rydberg,
    HighDim,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticValue {
    pub value: f64,
    pub regime: Regime,
    pub order_note: String,
}

impl AsymptoticValue {
    fn rydberg(value: f64, note: impl Into<String>) -> Self {
        AsymptoticValue { value, regime: Regime::Rydberg, order_note: note.into() }
    }

    fn high_dim(value: f64, note: impl Into<String>) -> Self {
        AsymptoticValue { value, regime: Regime::HighDim, order_note: note.into() }
    }
}

impl From<AsymptoticValue> for EvalResult {
    fn from(v: AsymptoticValue) -> Self {
        EvalResult {
            value: v.value,
            engine: Engine::Asymptotic,
            error_estimate: None,
            order_note: Some(v.order_note),
        }
    }
}

/// s = lim l/n_r of a Rydberg sequence.
///
/// The contracted radial variable x/n_r of such states spreads over
/// [a₋, a₊] with a± = (√(1+s) ± 1)², and the squared orthonormal Laguerre
/// functions converge weakly to the arcsine law on that interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RydbergLimit {
    s: f64,
}

impl RydbergLimit {
    pub fn new(s: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&s) {
            return domain(format!("Rydberg limit s = lim l/n_r must lie in [0,1), got {s}"));
        }
        Ok(RydbergLimit { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Upper edge a = a₊; equals 4 at s = 0.
    pub fn a(&self) -> f64 {
        let r = (1.0 + self.s).sqrt();
        (r + 1.0) * (r + 1.0)
    }

    /// Lower edge a₋ (0 at s = 0).
    pub fn a_minus(&self) -> f64 {
        let r = (1.0 + self.s).sqrt();
        (r - 1.0) * (r - 1.0)
    }

    /// ₂F₁(−k/2, ½; 1; 1 − a₋/a₊) = (1/π)∫₀^π (cos²(θ/2) + (a₋/a₊) sin²(θ/2))^{k/2} dθ.
    fn arcsine_factor(&self, k: f64) -> Result<f64> {
        let ratio = self.a_minus() / self.a();
        let f = |t: f64| {
            let c = (0.5 * t).cos();
            let s = (0.5 * t).sin();
            (c * c + ratio * s * s).powf(0.5 * k)
        };
        Ok(integrate_adaptive(f, 0.0, PI, &[], 1e-13)?.value / PI)
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return domain(format!("ω must be positive and finite, got {omega}"));
    }
    Ok(())
}

/// Γ((1+k)/2) / (√π Γ(1+k/2)), the s = 0 arcsine moment of order k/2 on [0,1].
fn swave_arcsine(k: f64) -> Result<f64> {
    Ok((ln_gamma(0.5 * (1.0 + k))? - ln_gamma(1.0 + 0.5 * k)? - 0.5 * PI.ln()).exp())
}

/// ⟨r^k⟩ (position) or ⟨p^k⟩ (momentum) of a Rydberg state.
///
/// (a₊ n_r)^{k/2} ₂F₁(−k/2, ½; 1; 1 − a₋/a₊) ω^{−k/2}; at s = 0 this is
/// (4n_r)^{k/2} Γ((1+k)/2)/(√π Γ(1+k/2)) ω^{−k/2}, valid for k > −1.
pub fn rydberg_moment(k: f64, n_r: usize, limit: RydbergLimit, omega: f64, space: Space) -> Result<AsymptoticValue> {
    check_omega(omega)?;
    if !k.is_finite() {
        return domain(format!("moment order must be finite, got {k}"));
    }
    if n_r == 0 {
        return domain("Rydberg asymptotics need n_r ≥ 1");
    }
    let shape = if limit.s == 0.0 {
        if k <= -1.0 {
            return Err(Error::Unsupported(format!(
                "Rydberg moments with bounded l are only known for k > −1 (got k = {k})"
            )));
        }
        swave_arcsine(k)?
    } else {
        limit.arcsine_factor(k)?
    };
    let pos = (limit.a() * n_r as f64 / omega).powf(0.5 * k) * shape;
    let value = match space {
        Space::Position => pos,
        Space::Momentum => pos * omega.powf(k),
    };
    Ok(AsymptoticValue::rydberg(value, "leading order in n_r; relative o(1)"))
}

/// ⟨r^k⟩⟨p^k⟩ ≈ (4n_r)^k π^{−1} [Γ((1+k)/2)/Γ(1+k/2)]², independent of ω.
pub fn rydberg_heisenberg(k: f64, n_r: usize) -> Result<AsymptoticValue> {
    if !(k > -1.0 && k.is_finite()) {
        return Err(Error::Unsupported(format!("Rydberg Heisenberg products need k > −1, got {k}")));
    }
    if n_r == 0 {
        return domain("Rydberg asymptotics need n_r ≥ 1");
    }
    let v = (4.0 * n_r as f64).powf(k) * swave_arcsine(k)?.powi(2);
    Ok(AsymptoticValue::rydberg(v, "leading order in n_r for bounded l; relative o(1)"))
}

/// High-dimensional moment asymptotics at fixed (n_r, l).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighDimMoment {
    /// √(2π) e^{−α} α^{α+n_r+(k+1)/2} / Γ(n_r+l+D/2) · ω^{−k/2}, α = l + D/2 − 1.
    pub refined: AsymptoticValue,
    /// (D/(2ω))^{k/2}.
    pub leading: AsymptoticValue,
    /// ⟨r^k⟩⟨p^k⟩ ≈ (D/2)^k.
    pub heisenberg: AsymptoticValue,
    /// Characteristic length r_c = (D/(2ω))^{1/2}.
    pub r_c: f64,
}

/// Dimensions below this are flagged in the order notes.
pub const HIGH_DIM_WARN: usize = 50;

fn dim_note(dim: usize, note: &str) -> String {
    if dim < HIGH_DIM_WARN {
        format!("{note}; D = {dim} is small for a D → ∞ expansion")
    } else {
        note.to_string()
    }
}

pub fn highdim_moment(k: f64, dim: usize, omega: f64, n_r: usize, l: usize, space: Space) -> Result<HighDimMoment> {
    check_omega(omega)?;
    if dim < 2 {
        return domain(format!("high-dimensional asymptotics need D ≥ 2, got {dim}"));
    }
    if !k.is_finite() {
        return domain(format!("moment order must be finite, got {k}"));
    }
    let d = dim as f64;
    let alpha = l as f64 + d / 2.0 - 1.0;
    if alpha <= 0.0 {
        return domain("the refined high-D form needs α = l + D/2 − 1 > 0");
    }
    let s = space.scale(omega);
    let ln_refined = 0.5 * (2.0 * PI).ln() - alpha + (alpha + n_r as f64 + 0.5 * (k + 1.0)) * alpha.ln()
        - ln_gamma(n_r as f64 + alpha + 1.0)?;
    let refined = (ln_refined - 0.5 * k * s.ln()).exp();
    let r_c = (d / (2.0 * s)).sqrt();
    Ok(HighDimMoment {
        refined: AsymptoticValue::high_dim(refined, dim_note(dim, "Stirling-level in α; relative O(1/D)")),
        leading: AsymptoticValue::high_dim(r_c.powf(k), dim_note(dim, "leading order in D; relative O(1/D)")),
        heisenberg: AsymptoticValue::high_dim((d / 2.0).powf(k), dim_note(dim, "relative O(1/D)")),
        r_c,
    })
}

/// The three-term large-n expansion of ∫₀^∞ x^β ω_α(x) L̃²_n ln L̃²_n dx
/// (orthonormal Laguerre, ω_α = x^α e^{−x}). The Shannon entropy E(L̃) is the
/// negative of the β = 0 value.
pub fn laguerre_entropy_asymptotics(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return domain(format!("Laguerre parameter must exceed −1, got {alpha}"));
    }
    if n == 0 {
        return domain("large-degree expansion needs n ≥ 1");
    }
    let nf = n as f64;
    let g = |x: f64| ln_gamma(x);
    let lead = ((2.0 * beta + 2.0) * LN_2 + g(beta + 1.5)? - 0.5 * PI.ln() - g(beta + 2.0)?).exp();
    let c = ((2.0 * beta) * LN_2 + g(beta + 0.5)? - 0.5 * PI.ln() - g(beta + 1.0)?).exp();
    let bracket = 2.0 * (alpha + 1.0) * digamma(beta + 1.0)? - (2.0 * alpha + 1.0) * digamma(beta + 0.5)?
        - 2.0 * PI.ln()
        - 4.0 * (alpha + 1.0) * LN_2
        + crate::specfun::EULER_GAMMA
        + 4.0
        + 2.0 * (alpha + 2.0 * beta)
        + 4.0 * alpha * beta;
    Ok(lead * nf.powf(beta + 1.0) - c * (alpha + 1.0) * nf.powf(beta) * nf.ln() + 0.5 * c * bracket * nf.powf(beta))
}

fn angular_shannon(state: &HyperState) -> Result<f64> {
    if state.l() == 0 {
        swave_angular_entropy(state.dim())
    } else {
        Ok(shannon_angular(state, DEFAULT_TOL)?.0)
    }
}

fn rydberg_state_check(state: &HyperState) -> Result<()> {
    if state.dim() < 2 {
        return domain("hyperspherical asymptotics need D ≥ 2");
    }
    if state.n_r == 0 {
        return domain("Rydberg asymptotics need n_r ≥ 1");
    }
    Ok(())
}

/// S ≈ (D/2) ln n_r + ln π − 1 + E[Y] ∓ (D/2) ln ω.
pub fn rydberg_shannon(state: &HyperState, space: Space) -> Result<AsymptoticValue> {
    rydberg_state_check(state)?;
    let d = state.dim() as f64;
    let core = 0.5 * d * (state.n_r as f64).ln() + PI.ln() - 1.0 + angular_shannon(state)?;
    let v = core - 0.5 * d * space.scale(state.omega()).ln();
    Ok(AsymptoticValue::rydberg(v, "absolute o(1) in n_r"))
}

/// S[ρ] + S[γ] ≈ D ln n_r + 2(ln π − 1 + E[Y]); ω-free.
pub fn rydberg_shannon_sum(state: &HyperState) -> Result<AsymptoticValue> {
    rydberg_state_check(state)?;
    let d = state.dim() as f64;
    let v = d * (state.n_r as f64).ln() + 2.0 * (PI.ln() - 1.0 + angular_shannon(state)?);
    Ok(AsymptoticValue::rydberg(v, "absolute o(1) in n_r"))
}

/// Regime of the Rydberg L_q-norm asymptotics relative to q* = D/(D−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormRegime {
    Below,
    Critical,
    Above,
}

const CRITICAL_TOL: f64 = 1e-12;

pub fn critical_order(dim: usize) -> f64 {
    dim as f64 / (dim as f64 - 1.0)
}

pub fn norm_regime(dim: usize, q: f64) -> NormRegime {
    let qs = critical_order(dim);
    if (q - qs).abs() <= CRITICAL_TOL {
        NormRegime::Critical
    } else if q < qs {
        NormRegime::Below
    } else {
        NormRegime::Above
    }
}

/// C(β,q) = 2^{β+1}/π^{q+½} · Γ(β+1−q/2) Γ(1−q/2) Γ(q+½) / (Γ(β+2−q) Γ(1+q)).
pub fn norm_constant_c(beta: f64, q: f64) -> Result<f64> {
    let pole = |x: f64| x <= 0.0 && x == x.round();
    for (x, what) in [(beta + 1.0 - q / 2.0, "Γ(β+1−q/2)"), (1.0 - q / 2.0, "Γ(1−q/2)")] {
        if pole(x) {
            return domain(format!("C(β,q) is singular: {what} has a pole at q = {q}, β = {beta}"));
        }
    }
    use crate::specfun::gamma::ln_gamma_signed;
    let (l1, s1) = ln_gamma_signed(beta + 1.0 - q / 2.0)?;
    let (l2, s2) = ln_gamma_signed(1.0 - q / 2.0)?;
    let l3 = ln_gamma(q + 0.5)?;
    // 1/Γ vanishes at poles of the denominator
    if pole(beta + 2.0 - q) {
        return Ok(0.0);
    }
    let (l4, s4) = ln_gamma_signed(beta + 2.0 - q)?;
    let l5 = ln_gamma(1.0 + q)?;
    let ln = (beta + 1.0) * LN_2 - (q + 0.5) * PI.ln() + l1 + l2 + l3 - l4 - l5;
    Ok(s1 * s2 * s4 * ln.exp())
}

static BESSEL_MEMO: Lazy<Mutex<HashMap<(u64, u64, u64), f64>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// McMahon's large-order approximation to the m-th positive zero of J_ν.
fn bessel_zero(nu: f64, m: usize) -> f64 {
    let b = (m as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * b;
    b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// C_B(α,β,q) = 2∫₀^∞ t^{2β+1} |J_α(2t)|^{2q} dt, finite for q above q*.
///
/// The integrand is non-negative, so the panels between consecutive zeros of
/// J_α(2t) form a positive, slowly decaying series. We add the analytic tail of
/// the averaged Hankel envelope, M_q π^{−q} T^p/(−p) with p = 2β+2−q and
/// M_q = Γ(q+½)/(√π Γ(q+1)), and remove the remaining T^{p−1}, T^{p−2}, …
/// terms by Richardson elimination over cut points T, 2T, 4T, 8T.
pub fn bessel_norm_constant(alpha: f64, beta: f64, q: f64) -> Result<f64> {
    let key = (alpha.to_bits(), beta.to_bits(), q.to_bits());
    if let Some(v) = BESSEL_MEMO.lock().get(&key) {
        return Ok(*v);
    }
    let v = bessel_norm_constant_uncached(alpha, beta, q)?;
    BESSEL_MEMO.lock().insert(key, v);
    Ok(v)
}

fn bessel_norm_constant_uncached(alpha: f64, beta: f64, q: f64) -> Result<f64> {
    if !(alpha >= 0.0 && q > 0.0) {
        return domain(format!("C_B needs α ≥ 0 and q > 0, got α = {alpha}, q = {q}"));
    }
    let p = 2.0 * beta + 2.0 - q;
    if p >= 0.0 {
        return domain(format!("C_B diverges at infinity: 2β + 2 − q = {p} ≥ 0"));
    }
    if 2.0 * beta + 2.0 + 2.0 * q * alpha <= 0.0 {
        return domain("C_B diverges at the origin");
    }
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let j = bessel_j(alpha, 2.0 * t).unwrap_or(0.0).abs();
        if j == 0.0 {
            return 0.0;
        }
        ((2.0 * beta + 1.0) * t.ln() + 2.0 * q * j.ln()).exp()
    };
    let mean = (ln_gamma(q + 0.5)? - 0.5 * PI.ln() - ln_gamma(q + 1.0)?).exp();
    let tail = |t: f64| mean * PI.powf(-q) * t.powf(p) / (-p);

    // cut points: zeros of J_α(2t) beyond the transition region
    let first = ((2.0 * alpha * alpha + 40.0) / PI).ceil() as usize + 1;
    let mut last_estimate: Option<f64> = None;
    let mut base = first;
    for _ in 0..6 {
        let ms: Vec<usize> = (0..5).map(|i| base << i).collect();
        let mut cuts = Vec::with_capacity(ms.len());
        let mut acc = 0.0;
        let mut prev_t = 0.0;
        let mut prev_m = 0;
        for &m in &ms {
            let t_m = 0.5 * bessel_zero(alpha, m);
            // early zeros as breakpoints (approximate is fine for splitting)
            let breaks: Vec<f64> = (prev_m + 1..m).map(|i| 0.5 * bessel_zero(alpha, i)).filter(|&b| b > prev_t && b < t_m).collect();
            acc += integrate_adaptive(f, prev_t, t_m, &breaks, 1e-13)?.value;
            cuts.push((t_m, acc + tail(t_m)));
            prev_t = t_m;
            prev_m = m;
        }
        let lo = richardson(&cuts[..4], p);
        let hi = richardson(&cuts[1..], p);
        let est = 2.0 * hi;
        if (hi - lo).abs() <= 1e-9 * hi.abs() {
            return Ok(est);
        }
        if let Some(prev) = last_estimate {
            if (est - prev).abs() <= 1e-8 * est.abs() {
                return Ok(est);
            }
        }
        last_estimate = Some(est);
        base *= 2;
    }
    Err(Error::Convergence {
        message: format!("C_B(α={alpha}, β={beta}, q={q}) did not settle"),
        estimate: last_estimate.unwrap_or(f64::NAN),
        abs_error: f64::NAN,
    })
}

/// Limit C of A(T) = C + Σ_{j≥1} c_j T^{p−j} from as many samples as unknowns.
fn richardson(samples: &[(f64, f64)], p: f64) -> f64 {
    let n = samples.len();
    let mut m = vec![vec![0.0; n + 1]; n];
    for (i, &(t, a)) in samples.iter().enumerate() {
        m[i][0] = 1.0;
        for j in 1..n {
            m[i][j] = t.powf(p - j as f64);
        }
        m[i][n] = a;
    }
    // Gaussian elimination with partial pivoting
    for c in 0..n {
        let piv = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, piv);
        for r in 0..n {
            if r != c {
                let k = m[r][c] / m[c][c];
                for j in c..=n {
                    m[r][j] -= k * m[c][j];
                }
            }
        }
    }
    m[0][n] / m[0][0]
}

/// N_asymp(n_r, l, D, q), the Rydberg value of the weighted Laguerre L_q norm
/// whose logarithm over 1 − q is the radial Rényi entropy (up to −ln 2ω^{D/2}).
pub fn rydberg_norm(n_r: usize, l: usize, dim: usize, q: f64) -> Result<AsymptoticValue> {
    if dim <= 2 {
        return Err(Error::Unsupported(format!("Rydberg L_q-norm asymptotics are stated for D > 2, got D = {dim}")));
    }
    if n_r == 0 {
        return domain("Rydberg asymptotics need n_r ≥ 1");
    }
    let order = RenyiOrder::new(q)?;
    let d = dim as f64;
    let nf = n_r as f64;
    let beta = order.beta(dim);
    let alpha = l as f64 + d / 2.0 - 1.0;
    let (v, note) = match norm_regime(dim, q) {
        NormRegime::Below => {
            (norm_constant_c(beta, q)? * (2.0 * nf).powf((1.0 - q) * d / 2.0), "relative o(1); q below q*")
        }
        NormRegime::Critical => {
            let c = 2.0 / (PI.powf(q + 0.5) * nf.powf(q / 2.0)) * (ln_gamma(q + 0.5)? - ln_gamma(q + 1.0)?).exp();
            (c * nf.ln(), "O(1) inside the logarithm dropped; q = q*")
        }
        NormRegime::Above => (
            bessel_norm_constant(alpha, beta, q)? * nf.powf((q - 1.0) * d / 2.0 - q),
            "relative o(1); q above q*",
        ),
    };
    Ok(AsymptoticValue::rydberg(v, note))
}

/// Rydberg Rényi entropy
/// R_q ≈ −ln 2 ∓ (D/2) ln ω + ln N_asymp/(1−q) + R_q[Y].
///
/// `angular` is R_q[Y], which does not depend on n_r.
pub fn rydberg_renyi(state: &HyperState, q: RenyiOrder, angular: f64, space: Space) -> Result<AsymptoticValue> {
    rydberg_state_check(state)?;
    let qf = q.q();
    let n = rydberg_norm(state.n_r, state.l(), state.dim(), qf)?;
    let d = state.dim() as f64;
    let v = -LN_2 - 0.5 * d * space.scale(state.omega()).ln() + n.value.ln() / (1.0 - qf) + angular;
    Ok(AsymptoticValue::rydberg(v, format!("absolute o(1) in n_r; {}", n.order_note)))
}

/// R_q[ρ] + R_q[γ] ≈ 2 ln N_asymp/(1−q) + 2R_q[Y] − 2 ln 2; ω-free.
pub fn rydberg_renyi_sum(state: &HyperState, q: RenyiOrder, angular: f64) -> Result<AsymptoticValue> {
    let pos = rydberg_renyi(state, q, angular, Space::Position)?;
    let mom = rydberg_renyi(state, q, angular, Space::Momentum)?;
    let d = state.dim() as f64;
    // the ω terms cancel exactly; recombine without them to keep the sum ω-free to rounding
    let ln_w = state.omega().ln();
    let v = (pos.value + 0.5 * d * ln_w) + (mom.value - 0.5 * d * ln_w);
    Ok(AsymptoticValue::rydberg(v, pos.order_note))
}

/// Evaluation mode of the high-dimensional Shannon entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HighDimShannonMode {
    /// (D/2) ln(eπ/ω) in position, (D/2) ln(eπω) in momentum.
    #[default]
    Limit,
    /// Radial pieces A₂,∞ + E(L̃_∞) ∓ (D/2) ln ω, which carry a ½ D ln D
    /// term; the angular contributions are left out as published.
    AsPublished,
}

impl std::str::FromStr for HighDimShannonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "limit" => Ok(HighDimShannonMode::Limit),
            "as_published" => Ok(HighDimShannonMode::AsPublished),
            other => domain(format!("unknown high-D Shannon mode '{other}' (limit | as_published)")),
        }
    }
}

pub fn highdim_shannon(state: &HyperState, space: Space, mode: HighDimShannonMode) -> Result<AsymptoticValue> {
    let dim = state.dim();
    let d = dim as f64;
    let ln_s = space.scale(state.omega()).ln();
    match mode {
        HighDimShannonMode::Limit => Ok(AsymptoticValue::high_dim(
            0.5 * d * (1.0 + PI.ln() - ln_s),
            dim_note(dim, "leading O(D); O(ln D) dropped"),
        )),
        HighDimShannonMode::AsPublished => {
            let (n_r, l) = (state.n_r as f64, state.l() as f64);
            let a2 = d / 2.0 - l * (d / 2.0).ln() - l * (n_r + l - 0.5) * 2.0 / d + 2.0 * n_r + l - LN_2;
            let el = 0.5 * d * d.ln() - 0.5 * (LN_2 + 1.0) * d + 0.5 * d.ln();
            Ok(AsymptoticValue::high_dim(
                a2 + el - 0.5 * d * ln_s,
                dim_note(dim, "½ D ln D + O(D); angular terms not included"),
            ))
        }
    }
}

/// Ẽ(D, {μ}) as a logarithm; 0 when all μ are equal.
pub fn ln_e_tilde(state: &HyperState) -> Result<f64> {
    let mut v = 0.0;
    for f in state.angular_factors() {
        if f.degree == 0 {
            continue;
        }
        let (a, hi, lo) = (f.alpha_j, (f.degree + f.mu_next) as f64, f.mu_next as f64);
        v += 2.0 * (hi - lo) * (a + lo).ln() + ln_gamma(2.0 * a + 2.0 * lo)? - ln_gamma(2.0 * a + lo + hi)?
            + ln_gamma(a + lo)?
            - ln_gamma(a + hi)?;
    }
    Ok(v)
}

/// M̃(D, q, {μ}) as a logarithm; 0 when all μ are equal.
///
/// The π^{1−D/2} prefactor cancels against the √π of every factor with
/// μ_j = μ_{j+1}, so only the non-trivial factors are visited.
pub fn ln_m_tilde(state: &HyperState, q: f64) -> Result<f64> {
    let mut v = 4f64.ln() * q * (state.l() as f64 - state.abs_m() as f64);
    for f in state.angular_factors() {
        if f.degree == 0 {
            continue;
        }
        let dm = f.degree as f64;
        v += ln_gamma(q * dm + 0.5)? - q * ln_gamma(dm + 1.0)? - 0.5 * PI.ln();
    }
    Ok(v)
}

/// High-dimensional Rényi entropy pieces of one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighDimRenyi {
    /// ½D ln D + ½ ln(q^{1/(q−1)}/(2se)) D + (q n_r/(1−q) − ½) ln D.
    pub radial: AsymptoticValue,
    /// −½D ln D + ½D ln(2eπ) + ½ ln D + ln(Ẽ^q M̃)/(1−q).
    pub angular: AsymptoticValue,
    /// Position: (D/2) ln(q^{1/(q−1)}π/ω) + q n_r ln D/(1−q) + ln(Ẽ^q M̃ Ĉ 2^{−q n_r})/(1−q).
    /// Momentum: (D/2) ln(q^{1/(q−1)}πω) + q n_r ln D/(1−q).
    pub total: AsymptoticValue,
    /// (D/2) ln(q^{1/(q−1)}π) ∓ (D/2) ln ω.
    pub leading: AsymptoticValue,
}

pub fn highdim_renyi(state: &HyperState, q: RenyiOrder, space: Space) -> Result<HighDimRenyi> {
    let dim = state.dim();
    if dim < 3 {
        return domain("high-dimensional asymptotics need D ≥ 3");
    }
    let (d, qf) = (dim as f64, q.q());
    let (n_r, l) = (state.n_r as f64, state.l() as f64);
    let ln_s = space.scale(state.omega()).ln();
    let ln_d = d.ln();
    let lnq = qf.ln() / (qf - 1.0);
    let radial = 0.5 * d * ln_d + 0.5 * (lnq - LN_2 - ln_s - 1.0) * d + (qf * n_r / (1.0 - qf) - 0.5) * ln_d;
    let em = qf * ln_e_tilde(state)? + ln_m_tilde(state, qf)?;
    let angular = -0.5 * d * ln_d + 0.5 * d * (2.0 * PI).ln() + 0.5 * d + 0.5 * ln_d + em / (1.0 - qf);
    let leading = 0.5 * d * (lnq + PI.ln() - ln_s);
    let total = match space {
        Space::Position => {
            let ln_c = (qf - 1.0) * LN_2 - qf * ln_gamma(n_r + 1.0)? - qf * (2.0 * n_r + l) * qf.ln()
                + 2.0 * n_r * qf * (qf - 1.0).abs().ln();
            leading + qf * n_r / (1.0 - qf) * ln_d + (em + ln_c - qf * n_r * LN_2) / (1.0 - qf)
        }
        Space::Momentum => leading + qf * n_r / (1.0 - qf) * ln_d,
    };
    Ok(HighDimRenyi {
        radial: AsymptoticValue::high_dim(radial, dim_note(dim, "O(1) dropped")),
        angular: AsymptoticValue::high_dim(angular, dim_note(dim, "o(1) dropped")),
        total: AsymptoticValue::high_dim(total, dim_note(dim, "o(1) dropped")),
        leading: AsymptoticValue::high_dim(leading, dim_note(dim, "O(ln D) dropped")),
    })
}

/// R_p[ρ] + R_q[γ] ≈ D ln(π p^{1/(2(p−1))} q^{1/(2(q−1))}) with q = p/(2p−1).
pub fn highdim_renyi_sum(dim: usize, p: RenyiOrder) -> Result<AsymptoticValue> {
    let q = p.conjugate()?;
    let (pf, qf) = (p.q(), q.q());
    let v = dim as f64 * (PI.ln() + pf.ln() / (2.0 * (pf - 1.0)) + qf.ln() / (2.0 * (qf - 1.0)));
    Ok(AsymptoticValue::high_dim(v, dim_note(dim, "O(ln D) dropped")))
}

/// Exact angular entropy ln(2π^{D/2}/Γ(D/2)) of S-wave states (any q), with its
/// large-D form −½D ln D + ½D ln(2eπ) + ½ ln D.
pub fn highdim_swave_angular(dim: usize) -> Result<(f64, AsymptoticValue)> {
    let exact = swave_angular_entropy(dim)?;
    let d = dim as f64;
    let asym = -0.5 * d * d.ln() + 0.5 * d * (2.0 * PI * std::f64::consts::E).ln() + 0.5 * d.ln();
    Ok((exact, AsymptoticValue::high_dim(asym, dim_note(dim, "O(1) dropped"))))
}

/// Angular Rényi entropy of the circular state μ₁ = … = μ_{D−1} = n − 1 at large D.
pub fn highdim_circular_angular(dim: usize, n: usize, q: RenyiOrder) -> Result<AsymptoticValue> {
    if n == 0 {
        return domain("circular states need n ≥ 1");
    }
    let (_, s) = highdim_swave_angular(dim)?;
    let qf = q.q();
    let extra = (ln_gamma((n as f64 - 1.0) * qf + 1.0)? - qf * ln_gamma(n as f64)?) / (1.0 - qf);
    Ok(AsymptoticValue::high_dim(s.value + extra, s.order_note))
}
