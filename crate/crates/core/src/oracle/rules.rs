//! Gaussian quadrature rules from Jacobi matrices.
//!
//! Nodes are Jacobi-matrix eigenvalues refined by Newton steps; weights come
//! from the Christoffel function, w_i = mass / Σ_k p̂_k(x_i)², evaluated in
//! log space so that extreme parameters (α in the thousands) keep every weight
//! representable through `ln_weights`.

use crate::error::{domain, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::poly::{
    ln_christoffel_sum, recurrence_roots, symmetrize, Family, JacobiRecurrence,
};
use crate::specfun::sum::{log_sum_exp, CompensatedSum};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum RuleFamily {
    /// e^{−x²} on ℝ
    GaussHermite,
    /// x^α e^{−x} on [0, ∞)
    GaussLaguerre { alpha: f64 },
    /// (1 − x)^a (1 + x)^b on [−1, 1]
    GaussJacobi { a: f64, b: f64 },
}

impl RuleFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RuleFamily::GaussHermite => Ok(()),
            RuleFamily::GaussLaguerre { alpha } if alpha > -1.0 && alpha.is_finite() => Ok(()),
            RuleFamily::GaussJacobi { a, b } if a > -1.0 && b > -1.0 && a.is_finite() && b.is_finite() => Ok(()),
            other => domain(format!("quadrature parameters out of range: {other:?}")),
        }
    }

    /// Gauss–Jacobi rule matching the Gegenbauer weight (1 − x²)^{λ−1/2}.
    pub fn gegenbauer(lambda: f64) -> Self {
        RuleFamily::GaussJacobi { a: lambda - 0.5, b: lambda - 0.5 }
    }

    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            RuleFamily::GaussHermite => Family::Hermite.weight(x),
            RuleFamily::GaussLaguerre { alpha } => Family::Laguerre { alpha }.weight(x),
            RuleFamily::GaussJacobi { a, b } => {
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    (1.0 - x).powf(a) * (1.0 + x).powf(b)
                }
            }
        }
    }

    fn symmetric(&self) -> bool {
        match *self {
            RuleFamily::GaussHermite => true,
            RuleFamily::GaussLaguerre { .. } => false,
            RuleFamily::GaussJacobi { a, b } => a == b,
        }
    }

    fn key(&self) -> (u8, u64, u64) {
        match *self {
            RuleFamily::GaussHermite => (0, 0, 0),
            RuleFamily::GaussLaguerre { alpha } => (1, alpha.to_bits(), 0),
            RuleFamily::GaussJacobi { a, b } => (2, a.to_bits(), b.to_bits()),
        }
    }
}

impl JacobiRecurrence for RuleFamily {
    fn diag(&self, k: usize) -> f64 {
        match *self {
            RuleFamily::GaussHermite => 0.0,
            RuleFamily::GaussLaguerre { alpha } => 2.0 * k as f64 + alpha + 1.0,
            RuleFamily::GaussJacobi { a, b } => {
                if a == b {
                    return 0.0;
                }
                let s = 2.0 * k as f64 + a + b;
                if k == 0 {
                    (b - a) / (a + b + 2.0)
                } else {
                    (b * b - a * a) / (s * (s + 2.0))
                }
            }
        }
    }

    fn beta(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            RuleFamily::GaussHermite => 0.5 * kf,
            RuleFamily::GaussLaguerre { alpha } => kf * (kf + alpha),
            RuleFamily::GaussJacobi { a, b } => {
                let s = 2.0 * kf + a + b;
                if k == 1 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
                } else {
                    4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
                }
            }
        }
    }

    fn ln_mass(&self) -> f64 {
        match *self {
            RuleFamily::GaussHermite => Family::Hermite.ln_mass(),
            RuleFamily::GaussLaguerre { alpha } => ln_gamma(alpha + 1.0).expect("α > −1"),
            RuleFamily::GaussJacobi { a, b } => {
                (a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0).expect("a > −1")
                    + ln_gamma(b + 1.0).expect("b > −1")
                    - ln_gamma(a + b + 2.0).expect("a + b > −2")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    pub family: RuleFamily,
    pub order: usize,
    pub nodes: Vec<f64>,
    /// May underflow to 0 or overflow for extreme parameters; `ln_weights` is exact.
    pub weights: Vec<f64>,
    pub ln_weights: Vec<f64>,
    pub ln_mass: f64,
}

impl QuadratureRule {
    /// Polynomials up to this degree are integrated exactly.
    pub fn exactness_degree(&self) -> usize {
        2 * self.order - 1
    }

    /// Σ w_i f(x_i).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut s = CompensatedSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s.add(w * f(*x));
        }
        s.total()
    }

    /// ln Σ w_i e^{g(x_i)} for log-domain integrands.
    pub fn integrate_ln(&self, g: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.ln_weights).map(|(x, lw)| lw + g(*x)).collect();
        log_sum_exp(&terms)
    }
}

fn build_rule(family: RuleFamily, order: usize) -> Result<QuadratureRule> {
    let mut nodes = recurrence_roots(&family, order)?;
    if family.symmetric() {
        symmetrize(&mut nodes);
    }
    let ln_mass = family.ln_mass();
    let mut ln_weights: Vec<f64> =
        nodes.iter().map(|&x| ln_mass - ln_christoffel_sum(&family, order, x)).collect();
    if family.symmetric() {
        for i in 0..order / 2 {
            let m = 0.5 * (ln_weights[i] + ln_weights[order - 1 - i]);
            ln_weights[i] = m;
            ln_weights[order - 1 - i] = m;
        }
    }
    let weights = ln_weights.iter().map(|l| l.exp()).collect();
    Ok(QuadratureRule { family, order, nodes, weights, ln_weights, ln_mass })
}

type RuleKey = ((u8, u64, u64), usize);

static RULE_CACHE: Lazy<RwLock<HashMap<RuleKey, Arc<QuadratureRule>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Gauss rule of the given order, memoized process-wide.
pub fn gauss_rule(family: RuleFamily, order: usize) -> Result<Arc<QuadratureRule>> {
    family.validate()?;
    if order == 0 {
        return domain("quadrature order must be at least 1");
    }
    let key = (family.key(), order);
    if let Some(r) = RULE_CACHE.read().get(&key) {
        return Ok(Arc::clone(r));
    }
    let rule = Arc::new(build_rule(family, order)?);
    // another thread may have raced us; keep whichever landed first
    let mut cache = RULE_CACHE.write();
    Ok(Arc::clone(cache.entry(key).or_insert(rule)))
}
