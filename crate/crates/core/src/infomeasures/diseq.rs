//! Disequilibrium ⟨ρ⟩ = ∫ρ², the product of a radial and an angular part.

use super::MeasureValue;
use crate::error::{domain, Error, Result};
use crate::specfun::gamma::{binomial, ln_factorial, ln_gamma};
use crate::specfun::linearize::gegenbauer_square_linearize;
use crate::specfun::sum::CompensatedSum;
use crate::specfun::wigner_3j;
use crate::states::{HyperState, Space};
use std::f64::consts::{LN_2, PI};

const ROUTE_AGREEMENT: f64 = 1e-9;

/// ∫ρ_{n_r,l}² r^{D−1} dr as the triple sum obtained from squaring the Laguerre
/// linearization and integrating products of Laguerre polynomials:
///
/// s^{D/2} 2^{1−D/2−2l−4n_r} Γ(D/2+2l) Σ_{k,k'} Σ_r binom(2n_r−2k, n_r−k) binom(2n_r−2k', n_r−k')
///   (2k)!/k! (2k')!/k'! / (Γ(l+D/2+k) Γ(l+D/2+k'))
///   binom(1−D/2, 2k−r) binom(1−D/2, 2k'−r) binom(2l+D/2−1+r, r).
pub fn radial_disequilibrium(state: &HyperState, space: Space) -> Result<f64> {
    let (n, l, h) = (state.n_r as u64, state.l() as f64, state.dim() as f64 / 2.0);
    let s = space.scale(state.omega());
    let ln_pre = h * s.ln() + (1.0 - h - 2.0 * l - 4.0 * n as f64) * LN_2 + ln_gamma(h + 2.0 * l)?;
    let outer = |k: u64| -> Result<f64> {
        Ok(binomial((2 * n - 2 * k) as f64, (n - k) as i64).ln() + ln_factorial(2 * k) - ln_factorial(k)
            - ln_gamma(l + h + k as f64)?)
    };
    let mut acc = CompensatedSum::new();
    for k in 0..=n {
        let ok = outer(k)?;
        for kp in 0..=n {
            let okp = outer(kp)?;
            let scale = (ln_pre + ok + okp).exp();
            for r in 0..=(2 * k).min(2 * kp) {
                let b = binomial(1.0 - h, (2 * k - r) as i64)
                    * binomial(1.0 - h, (2 * kp - r) as i64)
                    * binomial(2.0 * l + h - 1.0 + r as f64, r as i64);
                acc.add(scale * b);
            }
        }
    }
    Ok(acc.total())
}

/// (1/2π) Π_j Σ_k b(λ_j, λ_j+|μ_{j+1}|, μ_j−|μ_{j+1}|; k)² from Dougall's linearization.
pub fn angular_disequilibrium(state: &HyperState) -> Result<f64> {
    let mut v = 1.0 / (2.0 * PI);
    for f in state.angular_factors() {
        let e = gegenbauer_square_linearize(f.degree as u64, f.lambda(), f.mu_next as u64)?;
        v *= e.coefficients.iter().map(|(_, b)| b * b).sum::<f64>();
    }
    Ok(v)
}

/// Σ_{l'=0}^{2l} (2l+1)²(2l'+1)/(4π) (l l l'; 0 0 0)² (l l l'; m m −2m)², valid for D = 3.
pub fn angular_disequilibrium_3j(l: usize, m: i64) -> Result<f64> {
    if m.unsigned_abs() as usize > l {
        return domain(format!("|m| = {} exceeds l = {l}", m.abs()));
    }
    let (lf, mf) = (l as f64, m as f64);
    let mut acc = CompensatedSum::new();
    for lp in 0..=2 * l {
        let lpf = lp as f64;
        let a = wigner_3j(lf, lf, lpf, 0.0, 0.0, 0.0);
        if a == 0.0 {
            continue;
        }
        let b = wigner_3j(lf, lf, lpf, mf, mf, -2.0 * mf);
        acc.add((2.0 * lf + 1.0).powi(2) * (2.0 * lpf + 1.0) / (4.0 * PI) * (a * b).powi(2));
    }
    Ok(acc.total())
}

/// ∫ρ² of a hyperspherical state; in D = 3 the Dougall and 3j routes must agree.
pub fn disequilibrium(state: &HyperState, space: Space) -> Result<MeasureValue> {
    if state.dim() < 2 {
        return domain("hyperspherical disequilibrium needs D ≥ 2");
    }
    let ang = angular_disequilibrium(state)?;
    if state.dim() == 3 {
        let alt = angular_disequilibrium_3j(state.l(), state.m())?;
        if (alt - ang).abs() > ROUTE_AGREEMENT * ang {
            return Err(Error::Consistency(format!("angular disequilibrium: Dougall {ang} vs 3j {alt}")));
        }
    }
    Ok(MeasureValue::closed(radial_disequilibrium(state, space)? * ang, space))
}
