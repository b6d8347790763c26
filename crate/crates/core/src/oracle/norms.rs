//! Laguerre L_q norms and polynomial entropies by quadrature.

use super::adaptive::{integrate_adaptive, IntegralEstimate};
use super::rules::{gauss_rule, RuleFamily};
use crate::error::{domain, Result};
use crate::specfun::poly::{Family, PolySpec};

/// Default relative tolerance for closed-form validation.
pub const DEFAULT_TOL: f64 = 1e-11;

struct NormParams {
    alpha: f64,
    beta: f64,
    spec: PolySpec,
}

fn norm_params(n_r: usize, l: usize, dim: usize, q: f64) -> Result<NormParams> {
    if !(q > 0.0 && q.is_finite()) {
        return domain(format!("L_q norm needs q > 0, got {q}"));
    }
    if dim < 2 {
        return domain(format!("hyperspherical norm needs D ≥ 2, got {dim}"));
    }
    let alpha = l as f64 + dim as f64 / 2.0 - 1.0;
    let beta = (1.0 - q) * (alpha - l as f64);
    if beta + q * alpha <= -1.0 {
        return domain(format!("L_q norm diverges: β + qα = {} ≤ −1", beta + q * alpha));
    }
    Ok(NormParams { alpha, beta, spec: PolySpec::laguerre(n_r, alpha)?.orthonormal() })
}

fn integer_q(q: f64) -> Option<u32> {
    (q == q.round() && (1.0..=64.0).contains(&q)).then_some(q as u32)
}

/// ln N_{n_r,l}(D, q), N = ∫₀^∞ ([L̃_{n_r}^{(α)}(x)]² x^α e^{−x})^q x^β dx with
/// α = l + D/2 − 1 and β = (1 − q)(α − l).
///
/// Integer q is exact: after y = qx the integrand is y^{qα+β} e^{−y} times a
/// polynomial of degree 2q·n_r, integrated by Gauss–Laguerre of order q·n_r + 1.
pub fn ln_weighted_lq_norm(n_r: usize, l: usize, dim: usize, q: f64) -> Result<f64> {
    let p = norm_params(n_r, l, dim, q)?;
    match integer_q(q) {
        Some(qi) => {
            let a = q * p.alpha + p.beta;
            let rule = gauss_rule(RuleFamily::GaussLaguerre { alpha: a }, qi as usize * n_r + 1)?;
            let lp = rule.integrate_ln(|y| q * p.spec.eval_scaled(y / q).ln_sq());
            Ok(lp - (a + 1.0) * q.ln())
        }
        None => Ok(weighted_lq_norm_adaptive(n_r, l, dim, q, 1e-12)?.value.ln()),
    }
}

/// N_{n_r,l}(D, q); see [`ln_weighted_lq_norm`].
pub fn weighted_lq_norm(n_r: usize, l: usize, dim: usize, q: f64) -> Result<f64> {
    Ok(ln_weighted_lq_norm(n_r, l, dim, q)?.exp())
}

/// N_{n_r,l}(D, q) by adaptive quadrature with the Laguerre roots as breakpoints.
pub fn weighted_lq_norm_adaptive(n_r: usize, l: usize, dim: usize, q: f64, tol: f64) -> Result<IntegralEstimate> {
    let p = norm_params(n_r, l, dim, q)?;
    let mut roots = p.spec.roots()?;
    let e = q * p.alpha + p.beta;
    roots.extend(peak_breaks(e / q));
    let f = |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        (q * (p.spec.eval_scaled(x).ln_sq() - x) + e * x.ln()).exp()
    };
    integrate_adaptive(f, 0.0, f64::INFINITY, &roots, tol)
}

/// Breakpoints around the bulk of x^c e^{−x}, which sits near x = c with width
/// √c; without them a low-degree integrand at large c can slip between nodes.
pub(crate) fn peak_breaks(c: f64) -> Vec<f64> {
    if c < 8.0 {
        return Vec::new();
    }
    let w = c.sqrt();
    (-6..=6).map(|k| c + k as f64 * w).filter(|&x| x > 0.0).collect()
}

fn ln_weight(family: Family, x: f64) -> f64 {
    match family {
        Family::Hermite => -x * x,
        Family::Laguerre { alpha } => alpha * x.ln() - x,
        Family::Gegenbauer { lambda } => (lambda - 0.5) * ((-x).ln_1p() + x.ln_1p()),
    }
}

/// E_β(y_n) = −∫ x^β w(x) y_n²(x) ln y_n²(x) dx over the family support, with
/// 0 ln 0 = 0 at the roots. β ≠ 0 is only meaningful on the Laguerre half-line.
pub fn polynomial_entropy_estimate(spec: &PolySpec, beta_shift: f64, tol: f64) -> Result<IntegralEstimate> {
    spec.family.validate()?;
    if beta_shift != 0.0 && !matches!(spec.family, Family::Laguerre { .. }) {
        return domain("a shifted polynomial entropy is only defined for Laguerre weights");
    }
    if let Family::Laguerre { alpha } = spec.family {
        if alpha + beta_shift <= -1.0 {
            return domain(format!("x^{} weight is not integrable at 0", alpha + beta_shift));
        }
    }
    let mut roots = spec.roots()?;
    if let Family::Laguerre { alpha } = spec.family {
        roots.extend(peak_breaks(alpha + beta_shift));
    }
    let (a, b) = spec.family.support();
    let f = |x: f64| {
        let ly = spec.eval_scaled(x).ln_sq();
        if ly == f64::NEG_INFINITY {
            return 0.0;
        }
        let mut g = ln_weight(spec.family, x) + ly;
        if beta_shift != 0.0 {
            g += beta_shift * x.ln();
        }
        let v = -g.exp() * ly;
        if v.is_nan() {
            0.0
        } else {
            v
        }
    };
    integrate_adaptive(f, a, b, &roots, tol)
}

/// [`polynomial_entropy_estimate`] at the default tolerance.
pub fn polynomial_entropy(spec: &PolySpec, beta_shift: f64) -> Result<f64> {
    Ok(polynomial_entropy_estimate(spec, beta_shift, DEFAULT_TOL)?.value)
}
