//! Shannon entropies.
//!
//! Cartesian states have a closed form in the Hermite roots. For
//! hyperspherical states the radial and angular parts reduce to entropies of
//! orthonormal Laguerre and Gegenbauer polynomials, which have no known closed
//! form; those kernels come from the quadrature oracle.

use super::MeasureValue;
use crate::error::{domain, Error, Result};
use crate::oracle::{polynomial_entropy_estimate, DEFAULT_TOL};
use crate::specfun::dd::Dd;
use crate::specfun::gamma::{digamma, ln_factorial, ln_gamma, EULER_GAMMA};
use crate::specfun::hyper::hyp_entire_neg_sq_dd;
use crate::specfun::PolySpec;
use crate::states::{CartesianState, HyperState, Space};
use std::f64::consts::{LN_2, PI};

/// Largest tolerated rounding estimate on the Hermite kernel.
const KERNEL_TOL: f64 = 1e-11;
const DD_EPS: f64 = 4.93e-32;

fn binomial_dd(n: u64, k: u64) -> Dd {
    let mut b: u128 = 1;
    for i in 0..k {
        b = b * (n - i) as u128 / (i + 1) as u128;
    }
    let hi = b as f64;
    let lo = (b as i128 - hi as i128) as f64;
    Dd { hi, lo }
}

/// v_n(x) = V_n(x)/(2ⁿ n! √π), with an estimate of its rounding error.
fn reduced_potential(n: usize, x: f64) -> Result<(Dd, f64)> {
    let (f22, m22) = hyp_entire_neg_sq_dd(&[1.0, 1.0], &[1.5, 2.0], x)?;
    let x2 = Dd::new(x) * Dd::new(x);
    let mut v = Dd::new(LN_2) + Dd::new(0.5 * EULER_GAMMA) - x2 * f22;
    let mut err = DD_EPS * m22 * x2.hi;
    let mut inner = Dd::ZERO;
    for k in 1..=n {
        let (f11, m11) = hyp_entire_neg_sq_dd(&[k as f64], &[0.5], x)?;
        let c = (binomial_dd(n as u64, k as u64) * 2f64.powi(k as i32)).div_f64(k as f64);
        let t = c * f11;
        inner = if k % 2 == 1 { inner - t } else { inner + t };
        err += DD_EPS * c.hi * m11;
    }
    v = v + inner * 0.5;
    Ok((v, err + f64::EPSILON * v.hi.abs()))
}

/// Logarithmic potential V_n(x) of the Hermite polynomial H_n.
pub fn log_potential(n: usize, x: f64) -> Result<f64> {
    let (v, _) = reduced_potential(n, x)?;
    Ok(v.to_f64() * (n as f64 * LN_2 + ln_factorial(n as u64) + 0.5 * PI.ln()).exp())
}

/// κ_n = −E(H_n)/(2ⁿ n! √π) = −2n ln 2 + 2 Σ_k v_n(x_{n,k}).
///
/// The hypergeometric sums cancel heavily as n grows; the evaluation is in
/// double-double and refuses degrees where even that leaves more than
/// `KERNEL_TOL` of rounding error.
pub fn hermite_kernel(n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let roots = PolySpec::hermite(n).roots()?;
    let mut s = Dd::new(-2.0 * n as f64 * LN_2);
    let mut err = 0.0;
    for &x in &roots {
        let (v, e) = reduced_potential(n, x)?;
        s = s + v * 2.0;
        err += 2.0 * e;
    }
    if err > KERNEL_TOL {
        return Err(Error::Unsupported(format!(
            "closed Hermite entropy loses precision at n = {n} (rounding ≈ {err:.1e}); use the oracle engine"
        )));
    }
    Ok(s.to_f64())
}

/// E(H_n) = ∫_ℝ H_n² ln H_n² e^{−x²} dx = 2ⁿn!√π ln 2^{2n} − 2 Σ_k V_n(x_{n,k}).
pub fn hermite_entropy(n: usize) -> Result<f64> {
    let scale = (n as f64 * LN_2 + ln_factorial(n as u64) + 0.5 * PI.ln()).exp();
    Ok(-scale * hermite_kernel(n)?)
}

/// A(D; {n_i}): the state-dependent part of the Cartesian Shannon entropies.
pub fn shannon_cartesian_sum_constant(state: &CartesianState) -> Result<f64> {
    let mut a = 0.0;
    for &n in &state.n {
        if n > 0 {
            a += n as f64 * (LN_2 + 1.0) + ln_factorial(n as u64) + hermite_kernel(n)?;
        }
    }
    Ok(a)
}

/// S = A + (D/2) ln(eπ/α′) in position space, A + (D/2) ln(eπα′) in momentum space.
pub fn shannon_cartesian(state: &CartesianState, space: Space) -> Result<MeasureValue> {
    let a = shannon_cartesian_sum_constant(state)?;
    let d = state.dim() as f64;
    let s = space.scale(state.alpha_prime());
    Ok(MeasureValue::closed(a + 0.5 * d * (1.0 + PI.ln() - s.ln()), space))
}

/// ln(2π^{D/2}/Γ(D/2)), the angular entropy of S-wave states.
pub fn swave_angular_entropy(dim: usize) -> Result<f64> {
    if dim < 2 {
        return domain("angular entropy needs D ≥ 2");
    }
    let h = dim as f64 / 2.0;
    Ok(2f64.ln() + h * PI.ln() - ln_gamma(h)?)
}

/// B₁ = ln 2π − 2 Σ_j |μ_{j+1}| [ψ(2α_j+μ_j+|μ_{j+1}|) − ψ(α_j+μ_j) − ln 2 − 1/(2(α_j+μ_j))].
pub fn angular_b1(state: &HyperState) -> Result<f64> {
    let mut b = (2.0 * PI).ln();
    for f in state.angular_factors() {
        if f.mu_next == 0 {
            continue;
        }
        let mu = f.mu_next as f64;
        let top = f.alpha_j + (f.degree + f.mu_next) as f64;
        let bracket = digamma(2.0 * f.alpha_j + (f.degree + 2 * f.mu_next) as f64)? - digamma(top)? - LN_2 - 0.5 / top;
        b -= 2.0 * mu * bracket;
    }
    Ok(b)
}

/// Radial Shannon entropy 2n_r + l + D/2 − ln 2 − l ψ(n_r+l+D/2) + E(L̃) ∓ (D/2) ln ω,
/// with the Laguerre entropy E(L̃) from quadrature. Returns (value, error estimate).
pub fn shannon_radial(state: &HyperState, space: Space, tol: f64) -> Result<(f64, f64)> {
    let (n_r, l, d) = (state.n_r as f64, state.l() as f64, state.dim() as f64);
    let e = polynomial_entropy_estimate(&state.radial_poly(), 0.0, tol)?;
    let mut v = 2.0 * n_r + l + d / 2.0 - LN_2 + e.value - 0.5 * d * space.scale(state.omega()).ln();
    if state.l() > 0 {
        v -= l * digamma(n_r + l + d / 2.0)?;
    }
    Ok((v, e.abs_error_estimate))
}

/// Angular Shannon entropy B₁ + Σ_j E(C̃_j), Gegenbauer entropies from quadrature.
pub fn shannon_angular(state: &HyperState, tol: f64) -> Result<(f64, f64)> {
    let mut v = angular_b1(state)?;
    let mut err = 0.0;
    for f in state.angular_factors() {
        let e = polynomial_entropy_estimate(&f.poly(), 0.0, tol)?;
        v += e.value;
        err += e.abs_error_estimate;
    }
    Ok((v, err))
}

/// Hyperspherical Shannon entropy at an explicit oracle tolerance.
pub fn shannon_hyperspherical_tol(state: &HyperState, space: Space, tol: f64) -> Result<MeasureValue> {
    let (r, er) = shannon_radial(state, space, tol)?;
    let (a, ea) = shannon_angular(state, tol)?;
    Ok(MeasureValue::oracle(r + a, space, er + ea))
}

/// Radial + angular Shannon entropy of a hyperspherical state.
pub fn shannon_hyperspherical(state: &HyperState, space: Space) -> Result<MeasureValue> {
    shannon_hyperspherical_tol(state, space, DEFAULT_TOL)
}
