//! Oscillator states and their probability densities.
//!
//! Hyperspherical states are labelled by (n_r, μ₁ … μ_{D−1}) with l = μ₁ and
//! m = μ_{D−1}; Cartesian states by (n₁ … n_D). The Cartesian Gaussian width
//! is α′ = ω, the value consistent with E = (N + D/2)ω.
//!
//! Radial densities exclude the r^{D−1} Jacobian, and angular factors exclude
//! the (1 − x²)^{α_j − 1/2} solid-angle weight.

use crate::error::{domain, Error, Result};
use crate::specfun::poly::PolySpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub omega: f64,
    pub dim: usize,
}

impl OscillatorSpec {
    pub fn new(omega: f64, dim: usize) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return domain(format!("oscillator strength must be positive, got {omega}"));
        }
        if dim == 0 {
            return domain("dimension must be at least 1");
        }
        Ok(Self { omega, dim })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub const BOTH: [Space; 2] = [Space::Position, Space::Momentum];

    pub fn as_str(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }

    /// ω in position space, 1/ω in momentum space.
    pub fn scale(self, omega: f64) -> f64 {
        match self {
            Space::Position => omega,
            Space::Momentum => 1.0 / omega,
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "position" => Ok(Space::Position),
            "momentum" => Ok(Space::Momentum),
            other => domain(format!("unknown space '{other}'")),
        }
    }
}

/// One Gegenbauer factor C̃^{(λ)}_{n}(cos θ_j) of a hyperspherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularFactor {
    pub j: usize,
    /// μ_j − |μ_{j+1}|
    pub degree: usize,
    /// α_j = (D − j − 1)/2
    pub alpha_j: f64,
    /// |μ_{j+1}|
    pub mu_next: usize,
}

impl AngularFactor {
    /// λ = α_j + |μ_{j+1}|
    pub fn lambda(&self) -> f64 {
        self.alpha_j + self.mu_next as f64
    }
    pub fn poly(&self) -> PolySpec {
        PolySpec::gegenbauer(self.degree, self.lambda()).expect("λ > 0").orthonormal()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperState {
    pub spec: OscillatorSpec,
    pub n_r: usize,
    pub mu: Vec<i64>,
}

impl HyperState {
    pub fn new(spec: OscillatorSpec, n_r: usize, mu: Vec<i64>) -> Result<Self> {
        let d = spec.dim;
        if d < 2 {
            return domain("hyperspherical states need D ≥ 2");
        }
        if mu.len() != d - 1 {
            return domain(format!("expected {} angular quantum numbers for D = {d}, got {}", d - 1, mu.len()));
        }
        // D = 2 has the single label m, with l = |m|
        if d > 2 {
            for w in mu.windows(2) {
                if w[0] < w[1].abs() {
                    return domain(format!("angular quantum numbers must satisfy μ₁ ≥ … ≥ |μ_(D−1)|: {mu:?}"));
                }
            }
        }
        Ok(Self { spec, n_r, mu })
    }

    /// Ground state n_r = 0, μ = 0.
    pub fn ground(spec: OscillatorSpec) -> Result<Self> {
        Self::new(spec, 0, vec![0; spec.dim.saturating_sub(1)])
    }

    /// State with l and all deeper μ zero except the last one, m.
    pub fn with_lm(spec: OscillatorSpec, n_r: usize, l: usize, m: i64) -> Result<Self> {
        let d = spec.dim;
        if d == 2 {
            if l as i64 != m.abs() {
                return domain("in D = 2, l = |m|");
            }
            return Self::new(spec, n_r, vec![m]);
        }
        let mut mu = vec![0i64; d.saturating_sub(1)];
        if !mu.is_empty() {
            mu[0] = l as i64;
            let last = mu.len() - 1;
            if last > 0 {
                mu[last] = m;
                for v in mu.iter_mut().take(last).skip(1) {
                    *v = m.abs();
                }
            }
        }
        Self::new(spec, n_r, mu)
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }
    pub fn omega(&self) -> f64 {
        self.spec.omega
    }
    pub fn l(&self) -> usize {
        self.mu[0].unsigned_abs() as usize
    }
    pub fn m(&self) -> i64 {
        *self.mu.last().expect("D ≥ 2")
    }
    pub fn abs_m(&self) -> usize {
        self.m().unsigned_abs() as usize
    }
    /// n = 2n_r + l
    pub fn n(&self) -> usize {
        2 * self.n_r + self.l()
    }
    /// η = n + (D − 3)/2
    pub fn eta(&self) -> f64 {
        self.n() as f64 + (self.dim() as f64 - 3.0) / 2.0
    }
    /// L = l + (D − 3)/2
    pub fn big_l(&self) -> f64 {
        self.l() as f64 + (self.dim() as f64 - 3.0) / 2.0
    }
    /// Laguerre parameter α = l + D/2 − 1.
    pub fn alpha(&self) -> f64 {
        self.l() as f64 + self.dim() as f64 / 2.0 - 1.0
    }

    pub fn energy(&self) -> f64 {
        (self.n() as f64 + self.dim() as f64 / 2.0) * self.omega()
    }

    pub fn radial_poly(&self) -> PolySpec {
        PolySpec::laguerre(self.n_r, self.alpha()).expect("α ≥ 0").orthonormal()
    }

    /// Gegenbauer factors j = 1 … D − 2.
    pub fn angular_factors(&self) -> Vec<AngularFactor> {
        let d = self.dim();
        (1..d.saturating_sub(1))
            .map(|j| {
                let mu_j = self.mu[j - 1].unsigned_abs() as usize;
                let mu_next = self.mu[j].unsigned_abs() as usize;
                AngularFactor { j, degree: mu_j - mu_next, alpha_j: (d - j - 1) as f64 / 2.0, mu_next }
            })
            .collect()
    }

    /// ln of the radial density factor (Jacobian excluded).
    pub fn ln_radial_density(&self, space: Space, r: f64) -> f64 {
        let s = space.scale(self.omega());
        let x = s * r * r;
        let l = self.l() as f64;
        let mut v = LN_2 + 0.5 * self.dim() as f64 * s.ln() - x + self.radial_poly().eval_scaled(x).ln_sq();
        if self.l() > 0 {
            v += l * x.ln();
        }
        v
    }

    /// ρ_{n_r,l}(r) or γ_{n_r,l}(p): 2 s^{D/2} x^l e^{−x} [L̃_{n_r}^{(α)}(x)]², x = s r², s = ω^{±1}.
    pub fn radial_density(&self, space: Space, r: f64) -> f64 {
        self.ln_radial_density(space, r).exp()
    }

    /// [C̃^{(λ)}_{μ_j − μ_{j+1}}(x)]² (1 − x²)^{|μ_{j+1}|}, without the solid-angle weight.
    pub fn angular_density_factor(&self, j: usize, x: f64) -> Result<f64> {
        let f = self.angular_factors();
        if j == 0 || j > f.len() {
            return domain(format!("angular index j = {j} outside 1..={}", f.len()));
        }
        let a = f[j - 1];
        Ok(a.poly().eval(x).powi(2) * ((1.0 - x) * (1.0 + x)).powi(a.mu_next as i32))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartesianState {
    pub spec: OscillatorSpec,
    pub n: Vec<usize>,
}

impl CartesianState {
    pub fn new(spec: OscillatorSpec, n: Vec<usize>) -> Result<Self> {
        if n.len() != spec.dim {
            return domain(format!("expected {} Cartesian quantum numbers, got {}", spec.dim, n.len()));
        }
        Ok(Self { spec, n })
    }

    pub fn ground(spec: OscillatorSpec) -> Self {
        Self { spec, n: vec![0; spec.dim] }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }
    pub fn omega(&self) -> f64 {
        self.spec.omega
    }
    /// Width parameter α′ of the Gaussian factors.
    pub fn alpha_prime(&self) -> f64 {
        self.spec.omega
    }
    /// N = Σ n_i
    pub fn total(&self) -> usize {
        self.n.iter().sum()
    }
    /// N_O, the number of odd n_i.
    pub fn odd_count(&self) -> usize {
        self.n.iter().filter(|&&k| k % 2 == 1).count()
    }
    /// ν_i = n_i mod 2
    pub fn parities(&self) -> Vec<u32> {
        self.n.iter().map(|&k| (k % 2) as u32).collect()
    }

    pub fn energy(&self) -> f64 {
        (self.total() as f64 + self.dim() as f64 / 2.0) * self.omega()
    }

    /// One-dimensional factor √s [H̃_n(√s x)]² e^{−s x²}, s = α′^{±1}.
    pub fn factor_density(&self, i: usize, space: Space, x: f64) -> f64 {
        let s = space.scale(self.alpha_prime());
        let y = s.sqrt() * x;
        let h = PolySpec::hermite(self.n[i]).orthonormal().eval_scaled(y);
        (0.5 * s.ln() + h.ln_sq() - y * y).exp()
    }

    pub fn density(&self, space: Space, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return domain(format!("point has {} coordinates, state has D = {}", x.len(), self.dim()));
        }
        Ok((0..self.dim()).map(|i| self.factor_density(i, space, x[i])).product())
    }
}

pub fn energy(state: &StateSpec) -> f64 {
    match state {
        StateSpec::Hyper(h) => h.energy(),
        StateSpec::Cartesian(c) => c.energy(),
    }
}

pub fn radial_density(state: &HyperState, space: Space, r: f64) -> f64 {
    state.radial_density(space, r)
}

pub fn angular_density_factor(state: &HyperState, j: usize, x: f64) -> Result<f64> {
    state.angular_density_factor(j, x)
}

pub fn cartesian_density(state: &CartesianState, space: Space, x: &[f64]) -> Result<f64> {
    state.density(space, x)
}

/// Either kind of state, with the shared JSON form
/// `{"kind":"hyper","D":3,"omega":1.0,"nr":2,"mu":[1,0]}` or
/// `{"kind":"cartesian","omega":1.0,"n":[2,1,0]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub enum StateSpec {
    Hyper(HyperState),
    Cartesian(CartesianState),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawState {
    Hyper {
        #[serde(rename = "D")]
        dim: usize,
        omega: f64,
        nr: usize,
        mu: Vec<i64>,
    },
    Cartesian {
        omega: f64,
        n: Vec<usize>,
    },
}

impl TryFrom<RawState> for StateSpec {
    type Error = Error;
    fn try_from(raw: RawState) -> Result<Self> {
        match raw {
            RawState::Hyper { dim, omega, nr, mu } => {
                Ok(StateSpec::Hyper(HyperState::new(OscillatorSpec::new(omega, dim)?, nr, mu)?))
            }
            RawState::Cartesian { omega, n } => {
                let spec = OscillatorSpec::new(omega, n.len())?;
                Ok(StateSpec::Cartesian(CartesianState::new(spec, n)?))
            }
        }
    }
}

impl From<StateSpec> for RawState {
    fn from(s: StateSpec) -> Self {
        match s {
            StateSpec::Hyper(h) => RawState::Hyper { dim: h.spec.dim, omega: h.spec.omega, nr: h.n_r, mu: h.mu },
            StateSpec::Cartesian(c) => RawState::Cartesian { omega: c.spec.omega, n: c.n },
        }
    }
}

impl StateSpec {
    pub fn spec(&self) -> OscillatorSpec {
        match self {
            StateSpec::Hyper(h) => h.spec,
            StateSpec::Cartesian(c) => c.spec,
        }
    }
    pub fn kind(&self) -> &'static str {
        match self {
            StateSpec::Hyper(_) => "hyper",
            StateSpec::Cartesian(_) => "cartesian",
        }
    }
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }
}

impl std::str::FromStr for StateSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("invalid state JSON: {e}")))
    }
}

/// π^{−D/2}, the ground-state peak at ω = 1.
pub fn ground_peak(dim: usize) -> f64 {
    PI.powf(-(dim as f64) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gauss_rule, integrate_adaptive, RuleFamily};

    fn spec(omega: f64, dim: usize) -> OscillatorSpec {
        OscillatorSpec::new(omega, dim).unwrap()
    }

    #[test]
    fn energy_examples() {
        let c = CartesianState::new(spec(2.0, 3), vec![1, 0, 2]).unwrap();
        assert_eq!(c.energy(), 9.0);
        assert_eq!(HyperState::ground(spec(1.0, 3)).unwrap().energy(), 1.5);
        let h = HyperState::new(spec(1.0, 5), 2, vec![1, 0, 0, 0]).unwrap();
        assert_eq!(h.energy(), 7.5);
        assert_eq!(h.eta(), 6.0);
        assert_eq!(h.big_l(), 2.0);
        assert_eq!(h.alpha(), 2.5);
    }

    #[test]
    fn invalid_states_are_rejected() {
        assert!(OscillatorSpec::new(0.0, 3).is_err());
        assert!(HyperState::new(spec(1.0, 3), 0, vec![1, 2]).is_err());
        assert!(HyperState::new(spec(1.0, 3), 0, vec![1]).is_err());
        assert!(HyperState::new(spec(1.0, 1), 0, vec![]).is_err());
        assert!(CartesianState::new(spec(1.0, 2), vec![1]).is_err());
        assert!(HyperState::new(spec(1.0, 4), 0, vec![2, 1, -1]).is_ok());
        assert!(HyperState::new(spec(1.0, 2), 0, vec![-3]).is_ok());
    }

    fn radial_norm(h: &HyperState, space: Space) -> f64 {
        let s = space.scale(h.omega());
        let roots: Vec<f64> = h.radial_poly().roots().unwrap().iter().map(|x| (x / s).sqrt()).collect();
        let d = h.dim() as i32;
        integrate_adaptive(|r| h.radial_density(space, r) * r.powi(d - 1), 0.0, f64::INFINITY, &roots, 1e-12)
            .unwrap()
            .value
    }

    #[test]
    fn radial_normalization() {
        for dim in [2, 3, 6] {
            for n_r in 0..=6 {
                for l in 0..=4 {
                    let m = if dim == 2 { l as i64 } else { 0 };
                    let h = HyperState::with_lm(spec(1.7, dim), n_r, l, m).unwrap();
                    for space in Space::BOTH {
                        let v = radial_norm(&h, space);
                        assert!((v - 1.0).abs() < 1e-11, "D={dim} n_r={n_r} l={l} {space:?}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn momentum_is_rescaled_position() {
        for omega in [0.5, 2.0, 3.3] {
            let h = HyperState::with_lm(spec(omega, 3), 2, 1, 0).unwrap();
            for i in 0..10 {
                let p = 0.3 + 0.4 * i as f64;
                let got = h.radial_density(Space::Momentum, p);
                let want = omega.powi(-3) * h.radial_density(Space::Position, p / omega);
                assert!((got - want).abs() <= 1e-13 * want.abs(), "ω={omega} p={p}");
            }
            let c = CartesianState::new(spec(omega, 2), vec![3, 1]).unwrap();
            for i in 0..10 {
                let p = [0.2 * i as f64 - 0.7, 0.1 * i as f64];
                let got = c.density(Space::Momentum, &p).unwrap();
                let want = omega.powi(-2) * c.density(Space::Position, &[p[0] / omega, p[1] / omega]).unwrap();
                assert!((got - want).abs() <= 1e-13 * want.abs());
            }
        }
    }

    #[test]
    fn angular_factors_are_normalized() {
        let h = HyperState::with_lm(spec(1.0, 3), 0, 1, 0).unwrap();
        // orthonormal Legendre C̃₁^{(1/2)} = √(3/2)·x
        assert!((h.angular_density_factor(1, 0.4).unwrap() - 1.5 * 0.16).abs() < 1e-15);
        assert!(h.angular_density_factor(2, 0.0).is_err());
        assert!(HyperState::ground(spec(1.0, 2)).unwrap().angular_factors().is_empty());
        for (dim, mu) in [(3, vec![2, -1]), (4, vec![3, 1, 1]), (5, vec![4, 2, 2, -1]), (6, vec![0; 5])] {
            let h = HyperState::new(spec(1.0, dim), 1, mu).unwrap();
            for f in h.angular_factors() {
                let rule = gauss_rule(RuleFamily::gegenbauer(f.alpha_j), f.degree + f.mu_next + 1).unwrap();
                let v = rule.integrate(|x| h.angular_density_factor(f.j, x).unwrap());
                assert!((v - 1.0).abs() < 1e-13, "D={dim} j={}", f.j);
            }
        }
    }

    #[test]
    fn cartesian_factors_are_normalized() {
        let rule = gauss_rule(RuleFamily::GaussHermite, 12).unwrap();
        for omega in [0.5, 1.0, 2.0] {
            let c = CartesianState::new(spec(omega, 4), vec![0, 3, 5, 8]).unwrap();
            for i in 0..4 {
                // ∫ρ_i dx with x = y/√ω against e^{−y²}
                let v = rule.integrate(|y| {
                    let x = y / omega.sqrt();
                    c.factor_density(i, Space::Position, x) * (y * y).exp() / omega.sqrt()
                });
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
        let g = CartesianState::ground(spec(1.0, 3));
        assert!((g.density(Space::Position, &[0.0; 3]).unwrap() - ground_peak(3)).abs() < 1e-15);
        assert!(g.density(Space::Position, &[0.0; 2]).is_err());
    }

    #[test]
    fn ground_states_agree_across_coordinates() {
        for dim in [2usize, 3, 5] {
            for omega in [0.7, 1.0, 2.5] {
                let h = HyperState::ground(spec(omega, dim)).unwrap();
                let c = CartesianState::ground(spec(omega, dim));
                let area = 2.0 * PI.powf(dim as f64 / 2.0)
                    / crate::specfun::gamma(dim as f64 / 2.0).unwrap();
                for i in 0..20 {
                    let x: Vec<f64> = (0..dim).map(|k| ((i * 7 + k * 3) % 11) as f64 / 9.0 - 0.5).collect();
                    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    for space in Space::BOTH {
                        let cart = c.density(space, &x).unwrap();
                        let hyp = h.radial_density(space, r) / area;
                        assert!((cart - hyp).abs() <= 1e-12 * cart, "D={dim} ω={omega}");
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s: StateSpec = r#"{"kind":"hyper","D":3,"omega":1.0,"nr":2,"mu":[1,0]}"#.parse().unwrap();
        assert_eq!(s.to_json(), r#"{"kind":"hyper","D":3,"omega":1.0,"nr":2,"mu":[1,0]}"#);
        let c: StateSpec = r#"{"kind":"cartesian","omega":1.0,"n":[2,1,0]}"#.parse().unwrap();
        assert_eq!(c.to_json(), r#"{"kind":"cartesian","omega":1.0,"n":[2,1,0]}"#);
        assert_eq!(energy(&c), 4.5);
        assert!(r#"{"kind":"hyper","D":3,"omega":1.0,"nr":2,"mu":[0,1]}"#.parse::<StateSpec>().is_err());
        assert!(r#"{"kind":"hyper","D":3,"omega":1.0,"nr":2,"mu":[1,0],"x":1}"#.parse::<StateSpec>().is_err());
    }
}
