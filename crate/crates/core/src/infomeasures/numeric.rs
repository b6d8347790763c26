//! Density-level quadrature of the entropic functionals. Nothing here uses a
//! closed form: each integral is taken over the actual density factor with
//! the polynomial roots as breakpoints.

use super::{MeasureValue, RenyiOrder};
use crate::error::Result;
use crate::oracle::norms::peak_breaks;
use crate::oracle::{integrate_adaptive, integrate_adaptive_scaled, IntegralEstimate};
use crate::specfun::PolySpec;
use crate::states::{CartesianState, HyperState, Space, StateSpec};
use std::f64::consts::PI;

/// What to integrate against a density h: −h ln h, or h^q.
#[derive(Debug, Clone, Copy)]
enum Functional {
    Entropy,
    Power(f64),
}

impl Functional {
    /// Integrand from ln h and the log of the measure density.
    fn apply(self, ln_h: f64, ln_measure: f64) -> f64 {
        if ln_h == f64::NEG_INFINITY {
            return 0.0;
        }
        let v = match self {
            Functional::Entropy => -(ln_h + ln_measure).exp() * ln_h,
            Functional::Power(q) => (q * ln_h + ln_measure).exp(),
        };
        if v.is_finite() {
            v
        } else {
            0.0
        }
    }
}

fn axis(state: &CartesianState, i: usize, space: Space, f: Functional, tol: f64) -> Result<IntegralEstimate> {
    let s = space.scale(state.alpha_prime());
    let rs = s.sqrt();
    let poly = PolySpec::hermite(state.n[i]).orthonormal();
    let breaks: Vec<f64> = poly.roots()?.iter().map(|x| x / rs).collect();
    let g = |x: f64| {
        let y = rs * x;
        f.apply(0.5 * s.ln() + poly.eval_scaled(y).ln_sq() - y * y, 0.0)
    };
    integrate_adaptive_scaled(g, f64::NEG_INFINITY, f64::INFINITY, &breaks, tol, 1.0 / rs)
}

fn radial(state: &HyperState, space: Space, f: Functional, tol: f64) -> Result<IntegralEstimate> {
    radial_weighted(state, space, f, 0.0, tol)
}

/// Radial functional against r^{D−1+k} dr.
fn radial_weighted(state: &HyperState, space: Space, f: Functional, k: f64, tol: f64) -> Result<IntegralEstimate> {
    let s = space.scale(state.omega());
    let jac = state.dim() as f64 - 1.0 + k;
    let mut roots = state.radial_poly().roots()?;
    roots.extend(peak_breaks(state.alpha()));
    let breaks: Vec<f64> = roots.iter().map(|x| (x / s).sqrt()).collect();
    let g = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        f.apply(state.ln_radial_density(space, r), jac * r.ln())
    };
    integrate_adaptive_scaled(g, 0.0, f64::INFINITY, &breaks, tol, 1.0 / s.sqrt())
}

fn angular(state: &HyperState, j: usize, f: Functional, tol: f64) -> Result<IntegralEstimate> {
    let a = state.angular_factors()[j - 1];
    let poly = a.poly();
    let mut breaks = poly.roots()?;
    let lambda = a.lambda();
    if lambda > 8.0 {
        // the weight concentrates in |x| ≲ 1/√λ
        let w = 1.0 / lambda.sqrt();
        breaks.extend((-6..=6).map(|k| k as f64 * w).filter(|x| x.abs() < 1.0));
    }
    let (mu, w) = (a.mu_next as f64, a.alpha_j - 0.5);
    let g = |x: f64| {
        let l1 = (-x).ln_1p() + x.ln_1p();
        let mut ln_h = poly.eval_scaled(x).ln_sq();
        if mu > 0.0 {
            ln_h += mu * l1;
        }
        let ln_w = if w == 0.0 { 0.0 } else { w * l1 };
        f.apply(ln_h, ln_w)
    };
    integrate_adaptive(g, -1.0, 1.0, &breaks, tol)
}

/// −∫ρ ln ρ r^{D−1} dr of the radial density.
pub fn radial_entropy(state: &HyperState, space: Space, tol: f64) -> Result<IntegralEstimate> {
    radial(state, space, Functional::Entropy, tol)
}

/// ⟨r^k⟩ = ∫ρ r^{D−1+k} dr (⟨p^k⟩ in momentum space) by quadrature.
pub fn radial_moment(state: &HyperState, k: f64, space: Space, tol: f64) -> Result<IntegralEstimate> {
    if !crate::moments::moment_exists(state, k) {
        return crate::error::domain(format!("⟨r^{k}⟩ diverges for l = {}, D = {}", state.l(), state.dim()));
    }
    radial_weighted(state, space, Functional::Power(1.0), k, tol)
}

/// ∫ρ^q r^{D−1} dr of the radial density.
pub fn radial_power(state: &HyperState, space: Space, q: f64, tol: f64) -> Result<IntegralEstimate> {
    radial(state, space, Functional::Power(q), tol)
}

/// −∫ f ln f (1−x²)^{α_j−1/2} dx for the j-th angular factor f.
pub fn angular_factor_entropy(state: &HyperState, j: usize, tol: f64) -> Result<IntegralEstimate> {
    angular(state, j, Functional::Entropy, tol)
}

/// ∫ f^q (1−x²)^{α_j−1/2} dx for the j-th angular factor f.
pub fn angular_factor_power(state: &HyperState, j: usize, q: f64, tol: f64) -> Result<IntegralEstimate> {
    angular(state, j, Functional::Power(q), tol)
}

/// −∫ρ ln ρ over the unit sphere, from the factorized angular density.
pub fn angular_entropy(state: &HyperState, tol: f64) -> Result<(f64, f64)> {
    let mut v = (2.0 * PI).ln();
    let mut e = 0.0;
    for j in 1..=state.angular_factors().len() {
        let r = angular_factor_entropy(state, j, tol)?;
        v += r.value;
        e += r.abs_error_estimate;
    }
    Ok((v, e))
}

/// ln ∫|Y|^{2q} dΩ with its absolute error estimate.
pub fn ln_angular_power(state: &HyperState, q: f64, tol: f64) -> Result<(f64, f64)> {
    let mut v = (1.0 - q) * (2.0 * PI).ln();
    let mut e = 0.0;
    for j in 1..=state.angular_factors().len() {
        let r = angular_factor_power(state, j, q, tol)?;
        v += r.value.ln();
        e += r.abs_error_estimate / r.value;
    }
    Ok((v, e))
}

/// ∫ H_n(x)² ln H_n(x)² e^{−x²} dx over the whole real line.
pub fn hermite_entropy(n: usize, tol: f64) -> Result<IntegralEstimate> {
    let poly = PolySpec::hermite(n);
    let breaks = poly.roots()?;
    let g = |x: f64| {
        let l = poly.eval_scaled(x).ln_sq();
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            (l - x * x).exp() * l
        }
    };
    integrate_adaptive(g, f64::NEG_INFINITY, f64::INFINITY, &breaks, tol)
}

/// Shannon entropy by quadrature of the density.
pub fn shannon(state: &StateSpec, space: Space, tol: f64) -> Result<MeasureValue> {
    let (v, e) = match state {
        StateSpec::Cartesian(c) => {
            let mut v = 0.0;
            let mut e = 0.0;
            for i in 0..c.dim() {
                let r = axis(c, i, space, Functional::Entropy, tol)?;
                v += r.value;
                e += r.abs_error_estimate;
            }
            (v, e)
        }
        StateSpec::Hyper(h) => {
            let r = radial_entropy(h, space, tol)?;
            let (a, ea) = angular_entropy(h, tol)?;
            (r.value + a, r.abs_error_estimate + ea)
        }
    };
    Ok(MeasureValue::oracle(v, space, e))
}

/// ln ∫ρ^q by quadrature, with an absolute error estimate on the logarithm.
pub fn ln_entropic_moment(state: &StateSpec, q: f64, space: Space, tol: f64) -> Result<(f64, f64)> {
    match state {
        StateSpec::Cartesian(c) => {
            let mut v = 0.0;
            let mut e = 0.0;
            for i in 0..c.dim() {
                let r = axis(c, i, space, Functional::Power(q), tol)?;
                v += r.value.ln();
                e += r.abs_error_estimate / r.value;
            }
            Ok((v, e))
        }
        StateSpec::Hyper(h) => {
            let r = radial_power(h, space, q, tol)?;
            let (a, ea) = ln_angular_power(h, q, tol)?;
            Ok((r.value.ln() + a, r.abs_error_estimate / r.value + ea))
        }
    }
}

/// Rényi entropy by quadrature of the density.
pub fn renyi(state: &StateSpec, q: RenyiOrder, space: Space, tol: f64) -> Result<MeasureValue> {
    let (l, e) = ln_entropic_moment(state, q.q(), space, tol)?;
    let k = 1.0 / (1.0 - q.q());
    Ok(MeasureValue::oracle(k * l, space, (k * e).abs()))
}

/// Disequilibrium ∫ρ² by quadrature of the density.
pub fn disequilibrium(state: &StateSpec, space: Space, tol: f64) -> Result<MeasureValue> {
    let (l, e) = ln_entropic_moment(state, 2.0, space, tol)?;
    let v = l.exp();
    Ok(MeasureValue::oracle(v, space, v * e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::OscillatorSpec;

    #[test]
    fn moment_oracle_matches_closed_form() {
        for &(d, n_r, l) in &[(2usize, 0usize, 0usize), (3, 4, 2), (6, 10, 5), (12, 7, 1)] {
            let h = HyperState::with_lm(OscillatorSpec::new(0.5, d).unwrap(), n_r, l, 0).unwrap();
            for k in [-1.0, 1.0, 2.0, 6.0] {
                for sp in [Space::Position, Space::Momentum] {
                    let q = radial_moment(&h, k, sp, 1e-13).unwrap().value;
                    let c = crate::moments::radial_moment(&h, k, sp).unwrap();
                    assert!((q / c - 1.0).abs() < 1e-11, "D={d} n_r={n_r} l={l} k={k}: {q} {c}");
                }
            }
        }
        let h = HyperState::ground(OscillatorSpec::new(1.0, 2).unwrap()).unwrap();
        assert!(radial_moment(&h, -2.0, Space::Position, 1e-12).is_err());
    }

    #[test]
    fn gaussian_references() {
        for d in [1usize, 2, 3] {
            for omega in [0.5, 1.0, 2.0] {
                let spec = OscillatorSpec::new(omega, d).unwrap();
                let c = StateSpec::Cartesian(CartesianState::ground(spec));
                let want = 0.5 * d as f64 * ((1.0 + PI.ln()) - omega.ln());
                let got = shannon(&c, Space::Position, 1e-12).unwrap().value;
                assert!((got - want).abs() < 1e-10, "D={d} ω={omega}: {got} vs {want}");
                // ∫ρ² = (ω/2π)^{D/2}
                let dq = disequilibrium(&c, Space::Position, 1e-12).unwrap().value;
                assert!((dq - (omega / (2.0 * PI)).powf(d as f64 / 2.0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angular_normalization_and_swave() {
        let spec = OscillatorSpec::new(1.0, 4).unwrap();
        let s = HyperState::new(spec, 0, vec![3, 2, -1]).unwrap();
        for j in 1..=2 {
            assert!((angular_factor_power(&s, j, 1.0, 1e-13).unwrap().value - 1.0).abs() < 1e-12);
        }
        let g = HyperState::ground(OscillatorSpec::new(1.0, 3).unwrap()).unwrap();
        assert!((angular_entropy(&g, 1e-12).unwrap().0 - (4.0 * PI).ln()).abs() < 1e-12);
    }

    #[test]
    fn hermite_entropy_low_orders() {
        assert!(hermite_entropy(0, 1e-12).unwrap().value.abs() < 1e-14);
        let e1 = hermite_entropy(1, 1e-13).unwrap().value;
        let want = PI.sqrt() * (4.0 - 2.0 * crate::specfun::EULER_GAMMA);
        assert!((e1 - want).abs() < 1e-11 * want, "{e1} vs {want}");
    }
}
