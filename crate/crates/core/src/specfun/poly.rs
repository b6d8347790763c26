//! Classical orthogonal polynomials through their Jacobi-matrix recurrences.
//!
//! Everything is driven by the monic recurrence coefficients (a_k, β_k) of the
//! weight. Values are propagated in the probability-normalized basis
//! p̂_{k+1} √β_{k+1} = (x − a_k) p̂_k − √β_k p̂_{k−1}, with a running log scale so
//! that degrees in the thousands and parameters in the thousands stay finite.

use super::gamma::{ln_factorial, ln_gamma, ln_gamma_signed, pochhammer};
use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// weight e^{−x²} on ℝ
    Hermite,
    /// weight x^α e^{−x} on [0, ∞)
    Laguerre { alpha: f64 },
    /// weight (1 − x²)^{λ−1/2} on [−1, 1]
    Gegenbauer { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Standard textbook normalization (H_n, L_n^{(α)}, C_n^{(λ)}).
    Orthogonal,
    /// Unit L² norm under the family weight.
    Orthonormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolySpec {
    pub family: Family,
    pub degree: usize,
    pub normalization: Normalization,
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Hermite => Ok(()),
            Family::Laguerre { alpha } if alpha > -1.0 && alpha.is_finite() => Ok(()),
            Family::Laguerre { alpha } => domain(format!("Laguerre parameter α = {alpha} must exceed −1")),
            Family::Gegenbauer { lambda } if lambda > -0.5 && lambda.is_finite() && lambda != 0.0 => Ok(()),
            Family::Gegenbauer { lambda } => domain(format!(
                "Gegenbauer parameter λ = {lambda} must exceed −1/2 and be nonzero"
            )),
        }
    }

    /// Diagonal a_k of the Jacobi matrix.
    pub fn diag(&self, k: usize) -> f64 {
        match *self {
            Family::Laguerre { alpha } => 2.0 * k as f64 + alpha + 1.0,
            _ => 0.0,
        }
    }

    /// Off-diagonal β_k (k ≥ 1) of the monic recurrence.
    pub fn beta(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            Family::Hermite => 0.5 * kf,
            Family::Laguerre { alpha } => kf * (kf + alpha),
            Family::Gegenbauer { lambda } => {
                if k == 1 {
                    1.0 / (2.0 * (1.0 + lambda))
                } else {
                    kf * (kf + 2.0 * lambda - 1.0) / (4.0 * (kf + lambda) * (kf + lambda - 1.0))
                }
            }
        }
    }

    /// ln ∫ w(x) dx.
    pub fn ln_mass(&self) -> f64 {
        match *self {
            Family::Hermite => 0.5 * PI.ln(),
            Family::Laguerre { alpha } => ln_gamma(alpha + 1.0).expect("α > −1"),
            Family::Gegenbauer { lambda } => {
                0.5 * PI.ln() + ln_gamma(lambda + 0.5).expect("λ > −1/2")
                    - ln_gamma(lambda + 1.0).expect("λ > −1/2")
            }
        }
    }

    /// Weight function evaluated at x (zero outside the support).
    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            Family::Hermite => (-x * x).exp(),
            Family::Laguerre { alpha } => {
                if x <= 0.0 {
                    if x == 0.0 && alpha == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    (alpha * x.ln() - x).exp()
                }
            }
            Family::Gegenbauer { lambda } => {
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    ((1.0 - x) * (1.0 + x)).powf(lambda - 0.5)
                }
            }
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            Family::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            Family::Laguerre { .. } => (0.0, f64::INFINITY),
            Family::Gegenbauer { .. } => (-1.0, 1.0),
        }
    }
}

/// Monic three-term recurrence of an orthogonality measure:
/// x p_k = p_{k+1} + a_k p_k + β_k p_{k−1}.
pub trait JacobiRecurrence {
    fn diag(&self, k: usize) -> f64;
    /// β_k for k ≥ 1.
    fn beta(&self, k: usize) -> f64;
    /// ln of the total mass of the weight.
    fn ln_mass(&self) -> f64;
}

impl JacobiRecurrence for Family {
    fn diag(&self, k: usize) -> f64 {
        Family::diag(self, k)
    }
    fn beta(&self, k: usize) -> f64 {
        Family::beta(self, k)
    }
    fn ln_mass(&self) -> f64 {
        Family::ln_mass(self)
    }
}

/// Probability-normalized p̂_n(x) (and p̂_n'(x) when asked) as
/// (mantissa, derivative mantissa, ln_scale).
pub fn recurrence_scaled<R: JacobiRecurrence + ?Sized>(
    r: &R,
    n: usize,
    x: f64,
    with_derivative: bool,
) -> (f64, f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut ln_scale = 0.0;
    let mut b_k = 0.0; // √β_k
    for k in 0..n {
        let b_next = r.beta(k + 1).sqrt();
        let a = r.diag(k);
        let p_next = ((x - a) * p - b_k * p_prev) / b_next;
        if with_derivative {
            let d_next = (p + (x - a) * d - b_k * d_prev) / b_next;
            d_prev = d;
            d = d_next;
        }
        p_prev = p;
        p = p_next;
        b_k = b_next;
        let big = p.abs().max(d.abs());
        if big > RESCALE_AT {
            p /= big;
            p_prev /= big;
            d /= big;
            d_prev /= big;
            ln_scale += big.ln();
        }
    }
    (p, d, ln_scale)
}

/// ln Σ_{k<n} p̂_k(x)², the reciprocal Christoffel function of the probability measure.
pub fn ln_christoffel_sum<R: JacobiRecurrence + ?Sized>(r: &R, n: usize, x: f64) -> f64 {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let mut sum = 1.0;
    let mut ln_scale = 0.0;
    let mut b_k = 0.0;
    for k in 0..n.saturating_sub(1) {
        let b_next = r.beta(k + 1).sqrt();
        let p_next = ((x - r.diag(k)) * p - b_k * p_prev) / b_next;
        p_prev = p;
        p = p_next;
        b_k = b_next;
        sum += p * p;
        if p.abs() > RESCALE_AT {
            let big = p.abs();
            p /= big;
            p_prev /= big;
            sum /= big * big;
            ln_scale += 2.0 * big.ln();
        }
    }
    sum.ln() + ln_scale
}

/// Zeros of p_n for the recurrence: Jacobi-matrix eigenvalues refined by two Newton steps.
pub fn recurrence_roots<R: JacobiRecurrence + ?Sized>(r: &R, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let diag: Vec<f64> = (0..n).map(|k| r.diag(k)).collect();
    let off: Vec<f64> = (1..n).map(|k| r.beta(k).sqrt()).collect();
    let mut roots = tridiagonal_eigenvalues(diag, off)?;
    for x in roots.iter_mut() {
        for _ in 0..2 {
            let (p, dp, _) = recurrence_scaled(r, n, *x, true);
            if dp != 0.0 && p.is_finite() && dp.is_finite() {
                let step = p / dp;
                if step.abs() < 1e-6 * (1.0 + x.abs()) {
                    *x -= step;
                }
            }
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(roots)
}

/// Make a sorted root set exactly antisymmetric about the origin.
pub fn symmetrize(roots: &mut [f64]) {
    let n = roots.len();
    for i in 0..n / 2 {
        let m = 0.5 * (roots[n - 1 - i] - roots[i]);
        roots[i] = -m;
        roots[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
}

/// A value stored as mantissa · e^{ln_scale}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }
    /// ln(value²), −∞ at a zero.
    pub fn ln_sq(&self) -> f64 {
        2.0 * (self.mantissa.abs().ln() + self.ln_scale)
    }
}

const RESCALE_AT: f64 = 1e150;

impl PolySpec {
    pub fn new(family: Family, degree: usize, normalization: Normalization) -> Result<Self> {
        family.validate()?;
        Ok(Self { family, degree, normalization })
    }
    pub fn hermite(n: usize) -> Self {
        Self { family: Family::Hermite, degree: n, normalization: Normalization::Orthogonal }
    }
    pub fn laguerre(n: usize, alpha: f64) -> Result<Self> {
        Self::new(Family::Laguerre { alpha }, n, Normalization::Orthogonal)
    }
    pub fn gegenbauer(n: usize, lambda: f64) -> Result<Self> {
        Self::new(Family::Gegenbauer { lambda }, n, Normalization::Orthogonal)
    }
    pub fn orthonormal(mut self) -> Self {
        self.normalization = Normalization::Orthonormal;
        self
    }
    pub fn orthogonal(mut self) -> Self {
        self.normalization = Normalization::Orthogonal;
        self
    }

    /// ln of the squared norm h_n = ∫ w p_n² for the orthogonal normalization.
    pub fn ln_norm_sq(&self) -> f64 {
        let n = self.degree as u64;
        let nf = n as f64;
        match self.family {
            Family::Hermite => 0.5 * PI.ln() + nf * 2f64.ln() + ln_factorial(n),
            Family::Laguerre { alpha } => ln_gamma(nf + alpha + 1.0).unwrap() - ln_factorial(n),
            Family::Gegenbauer { lambda } => {
                let (g2, _) = ln_gamma_signed(nf + 2.0 * lambda).unwrap();
                let (gl, _) = ln_gamma_signed(lambda).unwrap();
                PI.ln() + (1.0 - 2.0 * lambda) * 2f64.ln() + g2
                    - ln_factorial(n)
                    - (nf + lambda).abs().ln()
                    - 2.0 * gl
            }
        }
    }

    /// Sign of the textbook leading coefficient.
    fn orthogonal_sign(&self) -> f64 {
        match self.family {
            Family::Hermite => 1.0,
            Family::Laguerre { .. } => {
                if self.degree % 2 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
            Family::Gegenbauer { lambda } => pochhammer(lambda, self.degree as u64).signum(),
        }
    }

    /// Log-scaled evaluation p_n(x) = mantissa · e^{ln_scale}.
    pub fn eval_scaled(&self, x: f64) -> Scaled {
        let (p, _, ln_scale) = recurrence_scaled(&self.family, self.degree, x, false);
        let mut s = Scaled { mantissa: p, ln_scale };
        self.apply_normalization(&mut s);
        s
    }

    fn apply_normalization(&self, s: &mut Scaled) {
        // p̂ is orthonormal w.r.t. w/mass; both normalizations keep the textbook sign.
        s.ln_scale -= 0.5 * self.family.ln_mass();
        s.mantissa *= self.orthogonal_sign();
        if self.normalization == Normalization::Orthogonal {
            s.ln_scale += 0.5 * self.ln_norm_sq();
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_scaled(x).value()
    }

    /// Real roots in ascending order: Jacobi-matrix eigenvalues polished by Newton steps.
    pub fn roots(&self) -> Result<Vec<f64>> {
        let mut roots = recurrence_roots(&self.family, self.degree)?;
        if matches!(self.family, Family::Hermite | Family::Gegenbauer { .. }) {
            symmetrize(&mut roots);
        }
        Ok(roots)
    }
}

/// L_n^{(α)}(x) by the standard recurrence; valid for every real α.
pub fn laguerre_textbook(n: usize, alpha: f64, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, 1.0 + alpha - x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let kf = k as f64;
        let c = ((2.0 * kf + 1.0 + alpha - x) * b - (kf + alpha) * a) / (kf + 1.0);
        a = b;
        b = c;
    }
    b
}

/// Free-function form of [`PolySpec::eval`].
pub fn eval_poly(spec: &PolySpec, x: f64) -> Result<f64> {
    spec.family.validate()?;
    Ok(spec.eval(x))
}

pub fn poly_roots(spec: &PolySpec) -> Result<Vec<f64>> {
    spec.family.validate()?;
    spec.roots()
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson shifts.
/// `off[i]` couples rows i and i+1.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    let mut e = off;
    e.resize(n, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Convergence {
                    message: "tridiagonal QL iteration".into(),
                    estimate: d[l],
                    abs_error: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}
