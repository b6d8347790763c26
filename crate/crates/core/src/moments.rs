//! Radial expectation values ⟨r^k⟩ and ⟨p^k⟩ of hyperspherical states.
//!
//! With x = ωr² and α = l + D/2 − 1,
//!
//! ⟨r^k⟩ = ω^{−k/2} n_r!/Γ(n_r+α+1) Σ_i binom(k/2, n_r−i)² Γ(α+1+k/2+i)/i!
//!       = ω^{−k/2} Γ(α+1+k/2)/Γ(α+1) ₃F₂(−n_r, −k/2, k/2+1; α+1, 1; 1),
//!
//! and ⟨p^k⟩ = ω^k ⟨r^k⟩. The finite sum has positive terms only and is the
//! value returned; the ₃F₂ form is evaluated alongside as a consistency check.

use crate::error::{domain, Error, Result};
use crate::specfun::gamma::{ln_factorial, ln_gamma};
use crate::specfun::sum::log_sum_exp;
use crate::specfun::Hypergeometric;
use crate::states::{HyperState, Space};

/// Relative agreement demanded between the two closed forms.
pub const DUAL_FORM_TOL: f64 = 1e-12;

/// ⟨r^k⟩ exists iff k > −D − 2l.
pub fn moment_exists(state: &HyperState, k: f64) -> bool {
    k.is_finite() && k > -(state.dim() as f64) - 2.0 * state.l() as f64
}

fn check_exists(state: &HyperState, k: f64) -> Result<()> {
    if moment_exists(state, k) {
        Ok(())
    } else {
        domain(format!(
            "⟨r^{k}⟩ diverges: need k > −D − 2l = {}",
            -(state.dim() as f64) - 2.0 * state.l() as f64
        ))
    }
}

/// ln|binom(a, j)| for j = 0..=n; −∞ where the coefficient vanishes.
fn ln_abs_binomials(a: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for j in 1..=n {
        let f = a - (j - 1) as f64;
        acc += if f == 0.0 { f64::NEG_INFINITY } else { f.abs().ln() - (j as f64).ln() };
        out.push(acc);
    }
    out
}

/// Position ⟨r^k⟩ from the binomial finite sum, as a logarithm.
pub fn ln_moment_finite_sum(state: &HyperState, k: f64) -> Result<f64> {
    check_exists(state, k)?;
    let n = state.n_r;
    let a = state.alpha() + 1.0 + k / 2.0;
    let lb = ln_abs_binomials(k / 2.0, n);
    let mut terms = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let b = lb[n - i];
        if b == f64::NEG_INFINITY {
            continue;
        }
        terms.push(2.0 * b + ln_gamma(a + i as f64)? - ln_factorial(i as u64));
    }
    let pre = ln_factorial(n as u64) - ln_gamma(n as f64 + state.alpha() + 1.0)?;
    Ok(pre + log_sum_exp(&terms) - 0.5 * k * state.omega().ln())
}

/// Position ⟨r^k⟩ from the ₃F₂ form, with Σ|terms| scaled the same way.
pub fn moment_3f2(state: &HyperState, k: f64) -> Result<(f64, f64)> {
    check_exists(state, k)?;
    let b1 = state.alpha() + 1.0;
    let h = Hypergeometric::new(&[-(state.n_r as f64), -k / 2.0, k / 2.0 + 1.0], &[b1, 1.0]);
    let (v, mag) = h.eval_terminating(1.0)?;
    let pre = (ln_gamma(b1 + k / 2.0)? - ln_gamma(b1)? - 0.5 * k * state.omega().ln()).exp();
    Ok((pre * v, pre * mag))
}

/// ⟨r^k⟩ (position) or ⟨p^k⟩ (momentum).
///
/// Fails with a consistency error if the ₃F₂ form disagrees with the finite
/// sum by more than 1e−12 relative plus the rounding envelope of its
/// alternating terms.
pub fn radial_moment(state: &HyperState, k: f64, space: Space) -> Result<f64> {
    let fs = ln_moment_finite_sum(state, k)?.exp();
    let (f3, mag) = moment_3f2(state, k)?;
    let envelope = 32.0 * (state.n_r as f64 + 1.0) * f64::EPSILON * mag;
    if (f3 - fs).abs() > DUAL_FORM_TOL * fs.abs() + envelope {
        return Err(Error::Consistency(format!(
            "⟨r^{k}⟩: finite sum {fs:e} vs 3F2 {f3:e} for n_r={}, l={}, D={}",
            state.n_r,
            state.l(),
            state.dim()
        )));
    }
    Ok(match space {
        Space::Position => fs,
        Space::Momentum => state.omega().powf(k) * fs,
    })
}

/// ⟨r^{k+2}⟩ from ⟨r^k⟩ and ⟨r^{k−2}⟩ by the Kramers-type recurrence
/// (k+2)ω²⟨r^{k+2}⟩ = (k+1)ω(2n+D)⟨r^k⟩ + k[(k²−D²)/4 − (l−1)(l+D−1)]⟨r^{k−2}⟩,
/// where the bracket equals k²/4 − α².
pub fn recurrence_step(state: &HyperState, k: f64, m_k: f64, m_km2: f64) -> Result<f64> {
    if k == -2.0 {
        return domain("the moment recurrence divides by k + 2");
    }
    let w = state.omega();
    let d = state.dim() as f64;
    let l = state.l() as f64;
    let n = state.n() as f64;
    let c1 = (k + 1.0) * w * (2.0 * n + d);
    let c2 = k * ((k * k - d * d) / 4.0 - (l - 1.0) * (l + d - 1.0));
    // k = 0 has no ⟨r^{−2}⟩ contribution even when that moment diverges
    let tail = if c2 == 0.0 { 0.0 } else { c2 * m_km2 };
    Ok((c1 * m_k + tail) / ((k + 2.0) * w * w))
}

/// ⟨r^{−k−2}⟩ = ω^{k+1} Γ(l + (D−k)/2 − 1)/Γ(l + (D+k)/2) · ⟨r^k⟩.
///
/// This is the reflection the ₃F₂ symmetry k → −k−2 actually supports; at
/// k = 1 it is the ⟨r^{−3}⟩–⟨r⟩ relation.
pub fn reflection_moment(state: &HyperState, k: f64) -> Result<f64> {
    check_exists(state, k)?;
    check_exists(state, -k - 2.0)?;
    let d = state.dim() as f64;
    let l = state.l() as f64;
    let ratio = ln_gamma(l + (d - k) / 2.0 - 1.0)? - ln_gamma(l + (d + k) / 2.0)?;
    Ok(((k + 1.0) * state.omega().ln() + ratio).exp() * radial_moment(state, k, Space::Position)?)
}

/// ⟨r^{−3}⟩ = 4ω²⟨r⟩ / ((D − 1 + 2l)(D − 3 + 2l)).
pub fn inverse_cube_moment(state: &HyperState) -> Result<f64> {
    let d = state.dim() as f64;
    let l = state.l() as f64;
    let den = (d - 1.0 + 2.0 * l) * (d - 3.0 + 2.0 * l);
    if den <= 0.0 {
        return domain("⟨r^{−3}⟩ diverges for this state");
    }
    Ok(4.0 * state.omega().powi(2) * radial_moment(state, 1.0, Space::Position)? / den)
}

/// ⟨r^k⟩⟨p^k⟩, independent of ω.
pub fn heisenberg_product(state: &HyperState, k: f64) -> Result<f64> {
    Ok(radial_moment(state, k, Space::Position)? * radial_moment(state, k, Space::Momentum)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::OscillatorSpec;
    use proptest::prelude::*;

    fn state(omega: f64, dim: usize, n_r: usize, l: usize) -> HyperState {
        let m = if dim == 2 { l as i64 } else { 0 };
        HyperState::with_lm(OscillatorSpec::new(omega, dim).unwrap(), n_r, l, m).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn spec_examples() {
        let s = state(1.0, 3, 1, 2);
        assert!(rel(radial_moment(&s, 2.0, Space::Position).unwrap(), 5.5) < 1e-14);
        for n_r in 0..5 {
            let s = state(2.0, 3, n_r, 1);
            assert!(rel(radial_moment(&s, -2.0, Space::Position).unwrap(), 4.0 / 3.0) < 1e-14);
            assert!(rel(radial_moment(&s, 0.0, Space::Momentum).unwrap(), 1.0) < 1e-15);
        }
        let g = state(1.0, 3, 0, 0);
        assert!(radial_moment(&g, -3.0, Space::Position).is_err());
        assert!(rel(radial_moment(&g, 4.0, Space::Position).unwrap(), 3.75) < 1e-14);
    }

    #[test]
    fn recurrence_examples() {
        let s = state(1.3, 4, 2, 1);
        let r2 = recurrence_step(&s, 0.0, 1.0, radial_moment(&s, -2.0, Space::Position).unwrap()).unwrap();
        assert!(rel(r2, (2.0 * 2.0 + 1.0 + 2.0) / 1.3) < 1e-14);
        let g = state(1.0, 3, 0, 0);
        let r4 = recurrence_step(&g, 2.0, 1.5, 1.0).unwrap();
        assert!(rel(r4, 3.75) < 1e-15);
        assert!(recurrence_step(&g, -2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn recurrence_matches_closed_form_on_grid() {
        for dim in [2, 3, 6] {
            for n_r in 0..=8 {
                for l in 0..=4 {
                    let s = state(1.0, dim, n_r, l);
                    for k in [0.0, 2.0, 4.0] {
                        let m = |j: f64| radial_moment(&s, j, Space::Position).unwrap();
                        let km2 = if moment_exists(&s, k - 2.0) { m(k - 2.0) } else { f64::NAN };
                        let got = recurrence_step(&s, k, m(k), km2).unwrap();
                        assert!(rel(got, m(k + 2.0)) < 1e-12, "D={dim} n_r={n_r} l={l} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_and_inverse_cube() {
        for n_r in 0..=4 {
            let s = state(1.4, 5, n_r, 1);
            let direct = radial_moment(&s, -3.0, Space::Position).unwrap();
            assert!(rel(inverse_cube_moment(&s).unwrap(), direct) < 1e-12);
            assert!(rel(reflection_moment(&s, 1.0).unwrap(), direct) < 1e-12);
            for k in [0.5, 1.5, 2.0] {
                let direct = radial_moment(&s, -k - 2.0, Space::Position).unwrap();
                assert!(rel(reflection_moment(&s, k).unwrap(), direct) < 1e-11, "k={k}");
            }
        }
        // the ⟨r^{−k−2}⟩ side must exist
        assert!(reflection_moment(&state(1.0, 3, 0, 0), 2.0).is_err());
    }

    #[test]
    fn even_moment_formulas() {
        for (dim, n_r, l) in [(3, 2, 1), (5, 3, 2), (4, 0, 3)] {
            let s = state(0.8, dim, n_r, l);
            let (eta, big_l, w) = (s.eta(), s.big_l(), s.omega());
            let m4 = 0.5 * (3.0 * (eta + 1.5).powi(2) - (big_l - 0.5) * (big_l + 1.5)) / (w * w);
            assert!(rel(radial_moment(&s, 4.0, Space::Position).unwrap(), m4) < 1e-13);
            let mm4 = (eta + 1.5) / ((big_l - 0.5) * (big_l + 0.5) * (big_l + 1.5)) * w * w;
            assert!(rel(radial_moment(&s, -4.0, Space::Position).unwrap(), mm4) < 1e-13);
        }
    }

    #[test]
    fn heisenberg_examples() {
        for dim in [2, 3, 7] {
            for n_r in 0..4 {
                for l in 0..3 {
                    let want = (2.0 * n_r as f64 + l as f64 + dim as f64 / 2.0).powi(2);
                    for omega in [0.5, 1.0, 2.0] {
                        let s = state(omega, dim, n_r, l);
                        assert!(rel(heisenberg_product(&s, 2.0).unwrap(), want) < 1e-12);
                        assert!(rel(heisenberg_product(&s, 0.0).unwrap(), 1.0) < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn rydberg_scale_moments_stay_finite() {
        let s = state(1.0, 3, 1000, 5);
        let r2 = radial_moment(&s, 2.0, Space::Position).unwrap();
        assert!(rel(r2, 2000.0 + 5.0 + 1.5) < 1e-12);
        let half = radial_moment(&s, 0.5, Space::Position).unwrap();
        assert!(half.is_finite() && half > 0.0);
    }

    proptest! {
        #[test]
        fn omega_scaling(n_r in 0usize..12, l in 0usize..5, dim in 2usize..9, k in -1.5f64..6.0, omega in 0.1f64..5.0) {
            let a = state(omega, dim, n_r, l);
            let b = state(1.0, dim, n_r, l);
            let ra = radial_moment(&a, k, Space::Position).unwrap();
            let rb = radial_moment(&b, k, Space::Position).unwrap();
            prop_assert!(rel(ra, omega.powf(-k / 2.0) * rb) < 1e-13);
            let pa = radial_moment(&a, k, Space::Momentum).unwrap();
            prop_assert!(rel(pa, omega.powf(k) * ra) < 1e-15);
        }

        #[test]
        fn heisenberg_bound(n_r in 0usize..15, l in 0usize..6, dim in 2usize..12) {
            let s = state(1.0, dim, n_r, l);
            let h = heisenberg_product(&s, 2.0).unwrap();
            let ld = (l as f64 + dim as f64 / 2.0).powi(2);
            prop_assert!(h >= dim as f64 * dim as f64 / 4.0 - 1e-12);
            prop_assert!(h >= ld - 1e-12);
            prop_assert_eq!((h - ld).abs() < 1e-12, n_r == 0);
        }
    }
}
