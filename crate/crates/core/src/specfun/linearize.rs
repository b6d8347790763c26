//! Linearization of powers and squares of orthogonal polynomials.

use super::gamma::{binomial, gamma, ln_factorial, ln_gamma, ln_gamma_signed};
use super::hyper::Hypergeometric;
use super::dd::Dd;
use super::poly::{Family, Normalization, PolySpec};
use super::sum::CompensatedSum;
use crate::error::Result;
use serde::Serialize;
use std::f64::consts::PI;

/// Σ_k c_k P_k(√arg_scale_sq · x) in a target polynomial family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearizationExpansion {
    pub target: Family,
    pub normalization: Normalization,
    /// Square of the argument scale; kept exact so evaluation can form the
    /// scaled argument to double-double precision.
    pub arg_scale_sq: f64,
    /// (degree k, coefficient c_k)
    pub coefficients: Vec<(usize, f64)>,
    /// Rounding residues c_k − fl(c_k) when the coefficients are known exactly.
    #[serde(skip)]
    residues: Vec<f64>,
}

impl LinearizationExpansion {
    pub fn arg_scale(&self) -> f64 {
        self.arg_scale_sq.sqrt()
    }

    /// Evaluate the expansion. Textbook-normalized Hermite and Laguerre targets
    /// are summed in double-double, since their terms can exceed the result by
    /// many orders of magnitude.
    pub fn eval(&self, x: f64) -> f64 {
        match (self.target, self.normalization) {
            (Family::Hermite, Normalization::Orthogonal) => {
                let y = Dd::sqrt(self.arg_scale_sq) * x;
                self.sum_dd(|n| hermite_dd(n, y))
            }
            (Family::Laguerre { alpha }, Normalization::Orthogonal) => {
                let y = Dd::sqrt(self.arg_scale_sq) * x;
                self.sum_dd(|n| laguerre_dd(n, alpha, y))
            }
            (family, normalization) => {
                let y = self.arg_scale() * x;
                let mut s = CompensatedSum::new();
                for &(k, c) in &self.coefficients {
                    s.add(c * PolySpec { family, degree: k, normalization }.eval(y));
                }
                s.total()
            }
        }
    }

    fn sum_dd(&self, poly: impl Fn(usize) -> Vec<Dd>) -> f64 {
        let top = self.coefficients.iter().map(|c| c.0).max().unwrap_or(0);
        let values = poly(top);
        let mut s = Dd::ZERO;
        for (i, &(k, c)) in self.coefficients.iter().enumerate() {
            let lo = self.residues.get(i).copied().unwrap_or(0.0);
            s = s + values[k] * Dd { hi: c, lo };
        }
        s.to_f64()
    }
}

/// H_0..=H_n at y.
fn hermite_dd(n: usize, y: Dd) -> Vec<Dd> {
    let mut v = vec![Dd::ONE];
    if n >= 1 {
        v.push(y * 2.0);
    }
    for k in 1..n {
        let next = y * v[k] * 2.0 - v[k - 1] * (2.0 * k as f64);
        v.push(next);
    }
    v
}

/// L_0^{(α)}..=L_n^{(α)} at y; valid for any real α.
fn laguerre_dd(n: usize, alpha: f64, y: Dd) -> Vec<Dd> {
    let mut v = vec![Dd::ONE];
    if n >= 1 {
        v.push(Dd::new(1.0) + Dd::new(alpha) - y);
    }
    for k in 1..n {
        let kf = k as f64;
        let a = Dd::new(2.0 * kf + 1.0) + Dd::new(alpha) - y;
        let b = Dd::new(kf) + Dd::new(alpha);
        v.push((a * v[k] - b * v[k - 1]).div_f64(kf + 1.0));
    }
    v
}

/// |H_n(y)|^{2q} = Σ_{j=0}^{qn} c_j H_{2j}(√q · y).
///
/// Writing H_n(y) = 2^n m! binom(m+ν−1/2, m) y^ν ₁F₁(−m; ν+1/2; y²) with
/// n = 2m + ν, the 2q-th power is a polynomial in y² whose monomials are
/// re-expanded in even Hermite polynomials of argument √q·y. The coefficients
/// are accumulated in exact rational arithmetic and rounded once.
pub fn hermite_power_linearize(n: u64, q: u32) -> LinearizationExpansion {
    let exact = super::exact::hermite_power_coefficients(n, q);
    let mut coefficients = Vec::with_capacity(exact.len());
    let mut residues = Vec::with_capacity(exact.len());
    for (j, c) in exact.iter().enumerate() {
        let (hi, lo) = super::exact::split_f64(c);
        coefficients.push((2 * j, hi));
        residues.push(lo);
    }
    LinearizationExpansion {
        target: Family::Hermite,
        normalization: Normalization::Orthogonal,
        arg_scale_sq: q as f64,
        coefficients,
        residues,
    }
}

/// [L_n^{(α)}(x)]² = Γ(α+n+1)/(4^n n!) Σ_k binom(2n−2k, n−k) (2k)!/(k! Γ(α+k+1)) L_{2k}^{(2α)}(2x).
pub fn laguerre_square_linearize(n: u64, alpha: f64) -> Result<LinearizationExpansion> {
    let target = Family::Laguerre { alpha: 2.0 * alpha };
    Family::Laguerre { alpha }.validate()?;
    let nf = n as f64;
    let pre = ln_gamma(alpha + nf + 1.0)? - nf * 4f64.ln() - ln_factorial(n);
    let mut coefficients = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let kf = k as f64;
        let ln_c = pre + ln_factorial(2 * (n - k)) - 2.0 * ln_factorial(n - k) + ln_factorial(2 * k)
            - ln_factorial(k)
            - ln_gamma(alpha + kf + 1.0)?;
        coefficients.push((2 * k as usize, ln_c.exp()));
    }
    Ok(LinearizationExpansion {
        target,
        normalization: Normalization::Orthogonal,
        arg_scale_sq: 4.0,
        coefficients,
        residues: Vec::new(),
    })
}

/// ∫₀^∞ x^s e^{−x} L_n^{(α)}(x) L_m^{(β)}(x) dx
/// = Γ(s+1) (−1)^{n+m} Σ_{r=0}^{min(n,m)} binom(s−α, n−r) binom(s−β, m−r) binom(s+r, r).
pub fn laguerre_product_integral(s: f64, alpha: f64, beta: f64, n: u64, m: u64) -> Result<f64> {
    if s <= -1.0 {
        return crate::error::domain(format!("product integral needs s > −1, got {s}"));
    }
    let mut acc = CompensatedSum::new();
    for r in 0..=n.min(m) {
        acc.add(
            binomial(s - alpha, (n - r) as i64)
                * binomial(s - beta, (m - r) as i64)
                * binomial(s + r as f64, r as i64),
        );
    }
    let sign = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * gamma(s + 1.0)? * acc.total())
}

fn lg(x: f64) -> Result<(f64, f64)> {
    ln_gamma_signed(x)
}

/// Dougall coefficient b(λ, λ+μ, n; k) of [C̃_n^{(λ)}]² = Σ_k b C̃_{2k}^{(λ+μ)}.
pub fn dougall_coefficient(lambda: f64, mu: u64, n: u64, k: u64) -> Result<f64> {
    let (nf, kf, mf) = (n as f64, k as f64, mu as f64);
    let lm = lambda + mf;
    let mut ln = 0.0;
    let mut sign = (nf + lambda).signum();
    ln += (nf + lambda).abs().ln();
    for (x, up) in [
        (kf + 0.5, true),
        (kf + lambda, true),
        (kf + nf + 2.0 * lambda, true),
        (lm, true),
        (1.0 - kf + nf, false),
        (kf + lambda + 0.5, false),
        (kf + 2.0 * lambda, false),
        (2.0 * kf + lm, false),
    ] {
        let (l, s) = lg(x)?;
        ln += if up { l } else { -l };
        sign *= s;
    }
    ln -= 0.5 * PI.ln();
    let (g2, _) = lg(2.0 * kf + 2.0 * lm)?;
    let (glm, _) = lg(lm)?;
    ln += 0.5
        * ((1.0 - 2.0 * lm) * 2f64.ln() + g2
            - (2.0 * kf + lm).ln()
            - ln_factorial(2 * k)
            - 2.0 * glm);
    let f = Hypergeometric::new(
        &[kf - nf, kf + nf + 2.0 * lambda, kf + lambda, kf + lm + 0.5],
        &[2.0 * kf + lm + 1.0, kf + 2.0 * lambda, kf + lambda + 0.5],
    )
    .eval(1.0)?;
    Ok(sign * ln.exp() * f)
}

/// Dougall linearization of the squared orthonormal Gegenbauer polynomial.
pub fn gegenbauer_square_linearize(n: u64, lambda: f64, mu_next: u64) -> Result<LinearizationExpansion> {
    Family::Gegenbauer { lambda }.validate()?;
    let coefficients = (0..=n)
        .map(|k| Ok((2 * k as usize, dougall_coefficient(lambda, mu_next, n, k)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearizationExpansion {
        target: Family::Gegenbauer { lambda: lambda + mu_next as f64 },
        normalization: Normalization::Orthonormal,
        arg_scale_sq: 1.0,
        coefficients,
        residues: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::poly::PolySpec;

    fn sample_points(a: f64, b: f64) -> Vec<f64> {
        (0..20).map(|i| a + (b - a) * (i as f64 + 0.37) / 20.0).collect()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn hermite_power_reconstruction() {
        for n in 0..=8u64 {
            for q in 1..=3u32 {
                let e = hermite_power_linearize(n, q);
                assert_eq!(e.coefficients.len() as u64, q as u64 * n + 1);
                let h = PolySpec::hermite(n as usize);
                for x in sample_points(-3.0, 3.0) {
                    let want = h.eval(x).abs().powi(2 * q as i32);
                    let got = e.eval(x);
                    let y = e.arg_scale() * x;
                    let envelope: f64 =
                        e.coefficients.iter().map(|&(k, c)| (c * PolySpec::hermite(k).eval(y)).abs()).sum();
                    assert!((got - want).abs() <= 1e-14 * envelope, "n={n} q={q} x={x}");
                    if h.eval(x).abs() > 0.1 {
                        assert!((got - want).abs() <= 1e-9 * want, "n={n} q={q} x={x}: {got} vs {want}");
                    }
                }
            }
        }
        let e = hermite_power_linearize(0, 3);
        assert_eq!(e.coefficients.iter().filter(|c| c.1 != 0.0).count(), 1);
        let e = hermite_power_linearize(1, 1);
        // 4x² = H_2 + 2 H_0
        assert!(close(e.coefficients[0].1, 2.0, 1e-14) && close(e.coefficients[1].1, 1.0, 1e-14));
    }

    #[test]
    fn laguerre_square_reconstruction() {
        for n in 0..=8u64 {
            for &al in &[-0.5, 0.0, 0.5, 1.5, 4.0] {
                let e = laguerre_square_linearize(n, al).unwrap();
                let l = PolySpec::laguerre(n as usize, al).unwrap();
                let l0 = l.eval(0.0);
                assert!(close(e.eval(0.0), l0 * l0, 1e-12));
                for x in sample_points(0.0, 12.0) {
                    let want = l.eval(x).powi(2);
                    assert!((e.eval(x) - want).abs() <= 1e-10 * want.max(l0 * l0), "n={n} α={al} x={x}");
                }
            }
        }
    }

    #[test]
    fn product_integral_examples() {
        for &a in &[0.0, 0.5, 2.5] {
            let g = gamma(a + 1.0).unwrap();
            assert!(close(laguerre_product_integral(a, a, a, 0, 0).unwrap(), g, 1e-14));
        }
        // orthogonality
        assert!(laguerre_product_integral(1.5, 1.5, 1.5, 2, 3).unwrap().abs() < 1e-13);
        // mpmath quadrature values
        assert!(close(laguerre_product_integral(1.5, 0.5, 0.5, 1, 2).unwrap(), -3.323_350_970_447_842_6, 1e-13));
        assert!(close(laguerre_product_integral(2.0, 1.0, 3.0, 2, 2).unwrap(), 6.0, 1e-14));
    }

    #[test]
    fn dougall_reconstruction_and_trivial_case() {
        for &la in &[0.5, 1.0, 1.5, 3.0] {
            for mu in 0..3u64 {
                for n in 0..6u64 {
                    let e = gegenbauer_square_linearize(n, la, mu).unwrap();
                    let c = PolySpec::gegenbauer(n as usize, la).unwrap().orthonormal();
                    for x in sample_points(-1.0, 1.0).into_iter().chain([0.0, 0.7, -0.7]) {
                        let want = c.eval(x).powi(2);
                        let scale = c.eval(1.0).powi(2).max(1.0);
                        assert!((e.eval(x) - want).abs() <= 1e-10 * scale, "λ={la} μ={mu} n={n} x={x}");
                    }
                }
            }
        }
        let e = gegenbauer_square_linearize(0, 1.5, 2).unwrap();
        assert_eq!(e.coefficients.len(), 1);
    }
}
