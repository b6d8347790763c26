//! Fisher information.

use super::MeasureValue;
use crate::error::{domain, Error, Result};
use crate::moments::radial_moment;
use crate::states::{CartesianState, HyperState, Space};

const AGREEMENT: f64 = 1e-12;

/// 4(2n_r + l − |m| + D/2) ω^{±1}.
pub fn fisher_closed(state: &HyperState, space: Space) -> f64 {
    let c = 2.0 * state.n_r as f64 + state.l() as f64 - state.abs_m() as f64 + state.dim() as f64 / 2.0;
    4.0 * c * space.scale(state.omega())
}

/// F[ρ] = 4⟨p²⟩ − 2|m|(2l + D − 2)⟨r^{−2}⟩, and the mirror image in momentum space.
pub fn fisher_from_moments(state: &HyperState, space: Space) -> Result<f64> {
    let other = match space {
        Space::Position => Space::Momentum,
        Space::Momentum => Space::Position,
    };
    let m = state.abs_m() as f64;
    let second = 4.0 * radial_moment(state, 2.0, other)?;
    if m == 0.0 {
        return Ok(second);
    }
    let c = 2.0 * m * (2.0 * state.l() as f64 + state.dim() as f64 - 2.0);
    Ok(second - c * radial_moment(state, -2.0, space)?)
}

/// Fisher information of a Cartesian state: each real Hermite factor gives
/// 4⟨p_i²⟩ = 4(n_i + ½)ω, so F = 4(N + D/2) ω^{±1}.
pub fn fisher_cartesian(state: &CartesianState, space: Space) -> MeasureValue {
    let c = state.total() as f64 + state.dim() as f64 / 2.0;
    MeasureValue::closed(4.0 * c * space.scale(state.omega()), space)
}

/// Closed-form Fisher information, cross-checked against the moment combination.
pub fn fisher(state: &HyperState, space: Space) -> Result<MeasureValue> {
    if state.dim() < 2 {
        return domain("Fisher information of hyperspherical states needs D ≥ 2");
    }
    let closed = fisher_closed(state, space);
    let via = fisher_from_moments(state, space)?;
    if (closed - via).abs() > AGREEMENT * closed.abs() {
        return Err(Error::Consistency(format!("Fisher closed form {closed} vs moment route {via}")));
    }
    Ok(MeasureValue::closed(closed, space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::OscillatorSpec;

    #[test]
    fn examples() {
        let g = HyperState::ground(OscillatorSpec::new(1.0, 3).unwrap()).unwrap();
        assert_eq!(fisher(&g, Space::Position).unwrap().value, 6.0);
        let s = HyperState::with_lm(OscillatorSpec::new(2.0, 3).unwrap(), 1, 1, 1).unwrap();
        assert!((fisher(&s, Space::Position).unwrap().value - 28.0).abs() < 1e-12);
        let p = fisher(&s, Space::Position).unwrap().value * fisher(&s, Space::Momentum).unwrap().value;
        assert!((p - 16.0 * 3.5f64.powi(2)).abs() < 1e-11);
    }

    #[test]
    fn cartesian_matches_hyperspherical_on_shared_states() {
        use crate::states::CartesianState;
        for d in [2usize, 3, 5] {
            let spec = OscillatorSpec::new(0.7, d).unwrap();
            let g = HyperState::ground(spec).unwrap();
            for space in Space::BOTH {
                let c = fisher_cartesian(&CartesianState::ground(spec), space).value;
                assert!((c - fisher(&g, space).unwrap().value).abs() < 1e-13);
            }
        }
        // (n_r=0, l=1, m=0) in D=3 is the Cartesian state (0,0,1)
        let spec = OscillatorSpec::new(1.3, 3).unwrap();
        let h = HyperState::with_lm(spec, 0, 1, 0).unwrap();
        let c = CartesianState::new(spec, vec![0, 0, 1]).unwrap();
        for space in Space::BOTH {
            assert!((fisher_cartesian(&c, space).value - fisher(&h, space).unwrap().value).abs() < 1e-12);
        }
    }

    #[test]
    fn moment_route_agrees_on_grid() {
        for d in [2usize, 3, 4, 6] {
            for omega in [0.5, 1.0, 2.0] {
                let spec = OscillatorSpec::new(omega, d).unwrap();
                for n_r in 0..5 {
                    for l in 0..4usize {
                        let ms: Vec<i64> = if d == 2 { vec![l as i64, -(l as i64)] } else { (-(l as i64)..=l as i64).collect() };
                        for m in ms {
                            let s = HyperState::with_lm(spec, n_r, l, m).unwrap();
                            for space in Space::BOTH {
                                fisher(&s, space).unwrap();
                            }
                        }
                    }
                }
            }
        }
    }
}
