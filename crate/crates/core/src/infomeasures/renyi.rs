//! Rényi entropies R_q = ln(∫ρ^q)/(1 − q).

use super::{numeric, MeasureValue, RenyiOrder};
use crate::error::{domain, Error, Result};
use crate::oracle::{gauss_rule, ln_weighted_lq_norm, weighted_lq_norm_adaptive, RuleFamily, DEFAULT_TOL};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::lauricella_fa_finite;
use crate::states::{CartesianState, HyperState, Space};
use std::f64::consts::PI;

/// (D/2) ln(π q^{1/(q−1)}/α′) in position space; α′ → 1/α′ in momentum space.
/// Valid for every q > 0, q ≠ 1.
pub fn renyi_cartesian_ground(dim: usize, omega: f64, q: RenyiOrder, space: Space) -> f64 {
    let q = q.q();
    0.5 * dim as f64 * (PI.ln() + q.ln() / (q - 1.0) - space.scale(omega).ln())
}

/// Closed form for integer q ≥ 2 built on the finite Lauricella sums 𝔉_q(n_i).
pub fn renyi_cartesian(state: &CartesianState, q: u32, space: Space) -> Result<MeasureValue> {
    if q < 2 {
        return domain(format!("closed Cartesian Rényi entropy needs integer q ≥ 2, got {q}"));
    }
    let qf = q as f64;
    let d = state.dim() as f64;
    let k = ((qf - 0.5) * PI.ln() + 0.5 * qf.ln()) / (qf - 1.0);
    let kbar = (qf * 4f64.ln() + ln_gamma(0.5 + qf)? - 0.5 * PI.ln() - qf * qf.ln()) / (1.0 - qf);
    let mut v = -0.5 * d * space.scale(state.alpha_prime()).ln() + k * d + kbar * state.odd_count() as f64;
    for &n in &state.n {
        let nf = n as f64;
        // ln((n+1)/2)_{1/2} = ln Γ(n/2 + 1) − ln Γ((n+1)/2)
        let poch = ln_gamma(nf / 2.0 + 1.0)? - ln_gamma((nf + 1.0) / 2.0)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        v += qf / (qf - 1.0) * sign * poch;
        let f = lauricella_fa_finite(q, (n % 2) as u32, n as u64)?;
        if f <= 0.0 {
            return Err(Error::Consistency(format!("Lauricella sum 𝔉_{q}({n}) = {f} is not positive")));
        }
        v += f.ln() / (1.0 - qf);
    }
    Ok(MeasureValue::closed(v, space))
}

/// Radial part −ln(2 s^{D/2}) + ln N_{n_r,l}(D,q)/(1 − q), s = ω^{±1}.
/// Integer q is exact; other q use adaptive quadrature. Returns (value, error).
pub fn renyi_radial(state: &HyperState, q: RenyiOrder, space: Space, tol: f64) -> Result<(f64, f64)> {
    let (d, qf) = (state.dim(), q.q());
    let s = space.scale(state.omega());
    let (ln_n, err) = match q.integer() {
        Some(_) => (ln_weighted_lq_norm(state.n_r, state.l(), d, qf)?, 0.0),
        None => {
            let e = weighted_lq_norm_adaptive(state.n_r, state.l(), d, qf, tol)?;
            (e.value.ln(), e.abs_error_estimate / e.value)
        }
    };
    let v = -(2f64.ln() + 0.5 * d as f64 * s.ln()) + ln_n / (1.0 - qf);
    Ok((v, (err / (1.0 - qf)).abs()))
}

/// ln Λ_q = ln ∫|Y|^{2q} dΩ, factor by factor: Gauss–Gegenbauer for integer q
/// (exact), adaptive quadrature otherwise. Returns (ln Λ_q, error).
pub fn angular_entropic_moment(state: &HyperState, q: RenyiOrder, tol: f64) -> Result<(f64, f64)> {
    let qf = q.q();
    match q.integer() {
        Some(qi) => {
            let mut v = (1.0 - qf) * (2.0 * PI).ln();
            for f in state.angular_factors() {
                let lambda = f.alpha_j + qf * f.mu_next as f64;
                let rule = gauss_rule(RuleFamily::gegenbauer(lambda), qi as usize * f.degree + 1)?;
                let p = f.poly();
                v += rule.integrate(|x| p.eval(x).powi(2 * qi as i32)).ln();
            }
            Ok((v, 0.0))
        }
        None => numeric::ln_angular_power(state, qf, tol),
    }
}

/// Angular Rényi entropy ln Λ_q/(1 − q). Returns (value, error).
pub fn renyi_angular(state: &HyperState, q: RenyiOrder, tol: f64) -> Result<(f64, f64)> {
    let (l, e) = angular_entropic_moment(state, q, tol)?;
    let k = 1.0 / (1.0 - q.q());
    Ok((k * l, (k * e).abs()))
}

/// Radial + angular Rényi entropy at an explicit quadrature tolerance.
pub fn renyi_hyperspherical_tol(state: &HyperState, q: RenyiOrder, space: Space, tol: f64) -> Result<MeasureValue> {
    let (r, er) = renyi_radial(state, q, space, tol)?;
    let (a, ea) = renyi_angular(state, q, tol)?;
    Ok(match q.integer() {
        Some(_) => MeasureValue::closed(r + a, space),
        None => MeasureValue::oracle(r + a, space, er + ea),
    })
}

/// Rényi entropy of a hyperspherical state.
pub fn renyi_hyperspherical(state: &HyperState, q: RenyiOrder, space: Space) -> Result<MeasureValue> {
    renyi_hyperspherical_tol(state, q, space, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infomeasures::shannon::{shannon_hyperspherical_tol, swave_angular_entropy};
    use crate::states::{OscillatorSpec, StateSpec};

    fn order(q: f64) -> RenyiOrder {
        RenyiOrder::new(q).unwrap()
    }

    #[test]
    fn one_dimensional_values() {
        // (n, q, R_q) by direct quadrature at 30 digits
        let table = [
            (0usize, 2u32, 0.5 * (2.0 * PI).ln()),
            (1, 2, 1.206_620_605_656_453_7),
            (0, 3, 0.847_018_015_091_727),
            (1, 3, 1.140_911_347_542_787),
            (2, 2, 1.364_249_549_860_037),
            (2, 3, 1.295_988_811_694_707),
            (3, 2, 1.473_683_390_905_499),
            (3, 3, 1.401_379_349_545_871),
            (4, 2, 1.557_800_074_737_395),
            (4, 3, 1.481_229_460_382_777),
            (5, 2, 1.626_254_218_166_807),
            (5, 3, 1.545_519_851_021_355),
        ];
        let spec = OscillatorSpec::new(1.0, 1).unwrap();
        for (n, q, want) in table {
            let s = CartesianState::new(spec, vec![n]).unwrap();
            let got = renyi_cartesian(&s, q, Space::Position).unwrap().value;
            assert!((got - want).abs() < 1e-12, "n={n} q={q}: {got} vs {want}");
        }
    }

    #[test]
    fn ground_and_momentum_flip() {
        for d in [1usize, 2, 5] {
            for omega in [0.5, 2.0] {
                let spec = OscillatorSpec::new(omega, d).unwrap();
                let g = CartesianState::ground(spec);
                for q in [2u32, 3, 5] {
                    for space in Space::BOTH {
                        let c = renyi_cartesian(&g, q, space).unwrap().value;
                        let w = renyi_cartesian_ground(d, omega, order(q as f64), space);
                        assert!((c - w).abs() < 1e-12);
                    }
                }
            }
        }
        let s = CartesianState::new(OscillatorSpec::new(3.0, 2).unwrap(), vec![3, 2]).unwrap();
        let p = renyi_cartesian(&s, 2, Space::Position).unwrap().value;
        let m = renyi_cartesian(&s, 2, Space::Momentum).unwrap().value;
        assert!((m - p - 2.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cartesian_matches_density_quadrature() {
        let spec = OscillatorSpec::new(1.3, 2).unwrap();
        for n in [vec![5, 2], vec![3, 4], vec![1, 0]] {
            let s = CartesianState::new(spec, n.clone()).unwrap();
            for q in [2u32, 3] {
                let a = renyi_cartesian(&s, q, Space::Position).unwrap().value;
                let b = numeric::renyi(&StateSpec::Cartesian(s.clone()), order(q as f64), Space::Position, 1e-13)
                    .unwrap()
                    .value;
                assert!((a - b).abs() < 1e-9, "{n:?} q={q}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn hyperspherical_engines() {
        // uniform angular density for S-waves
        for d in [2usize, 3, 6] {
            let g = HyperState::ground(OscillatorSpec::new(1.0, d).unwrap()).unwrap();
            for q in [0.5, 2.0, 3.7] {
                let (a, _) = renyi_angular(&g, order(q), 1e-12).unwrap();
                assert!((a - swave_angular_entropy(d).unwrap()).abs() < 1e-11);
            }
        }
        let g = HyperState::ground(OscillatorSpec::new(1.0, 3).unwrap()).unwrap();
        let r2 = renyi_hyperspherical(&g, order(2.0), Space::Position).unwrap().value;
        assert!(((-r2).exp() - (2.0 * PI).powf(-1.5)).abs() < 1e-14);
        let c = renyi_cartesian(&CartesianState::ground(g.spec), 2, Space::Position).unwrap().value;
        assert!((r2 - c).abs() < 1e-10);

        let s = HyperState::new(OscillatorSpec::new(0.8, 4).unwrap(), 2, vec![2, 1, -1]).unwrap();
        for q in [2.0, 3.0, 0.6, 1.7] {
            for space in Space::BOTH {
                let a = renyi_hyperspherical_tol(&s, order(q), space, 1e-12).unwrap().value;
                let b = numeric::renyi(&StateSpec::Hyper(s.clone()), order(q), space, 1e-12).unwrap().value;
                assert!((a - b).abs() < 1e-8, "q={q}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn shannon_limit_is_bracketed() {
        let s = HyperState::new(OscillatorSpec::new(1.0, 3).unwrap(), 1, vec![1, 1]).unwrap();
        let sh = shannon_hyperspherical_tol(&s, Space::Position, 1e-12).unwrap().value;
        let lo = renyi_hyperspherical_tol(&s, order(0.999), Space::Position, 1e-12).unwrap().value;
        let hi = renyi_hyperspherical_tol(&s, order(1.001), Space::Position, 1e-12).unwrap().value;
        assert!(lo > sh && sh > hi, "{lo} {sh} {hi}");
        assert!((lo - sh).abs() < 1e-3 && (hi - sh).abs() < 1e-3);
    }
}
