//! Generalized hypergeometric series and the finite Lauricella sum used by the
//! Rényi entropies of Hermite states.

use super::dd::Dd;
use super::sum::CompensatedSum;
use crate::error::{domain, Error, Result};

const MAX_TERMS: usize = 200_000;

/// pFq(a; b; z) parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergeometric {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

fn nonpositive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x == x.floor()).then(|| (-x) as u64)
}

impl Hypergeometric {
    pub fn new(num: &[f64], den: &[f64]) -> Self {
        Self { num: num.to_vec(), den: den.to_vec() }
    }

    /// Index of the last nonzero term when some numerator is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<u64> {
        self.num.iter().filter_map(|&a| nonpositive_integer(a)).min()
    }

    fn check_poles(&self, last: Option<u64>) -> Result<()> {
        for &b in &self.den {
            if let Some(m) = nonpositive_integer(b) {
                if last.map_or(true, |n| n > m) {
                    return domain(format!("denominator parameter {b} hits a pole"));
                }
            }
        }
        Ok(())
    }

    fn ratio(&self, j: f64, z: f64) -> f64 {
        let mut r = z / (j + 1.0);
        for &a in &self.num {
            r *= a + j;
        }
        for &b in &self.den {
            r /= b + j;
        }
        r
    }

    /// Terminating sum at z together with Σ|terms|, whose ratio to |value|
    /// bounds the cancellation suffered.
    pub fn eval_terminating(&self, z: f64) -> Result<(f64, f64)> {
        let Some(n) = self.terminating_degree() else {
            return Err(Error::Unsupported("series does not terminate".into()));
        };
        self.check_poles(Some(n))?;
        let mut s = CompensatedSum::new();
        let mut mag = 0.0;
        let mut t = 1.0;
        for j in 0..=n {
            s.add(t);
            mag += t.abs();
            t *= self.ratio(j as f64, z);
        }
        Ok((s.total(), mag))
    }

    /// Sum the series at z. Terminating series are summed exactly; otherwise the
    /// series must converge (p ≤ q, or p = q + 1 with |z| < 1).
    pub fn eval(&self, z: f64) -> Result<f64> {
        let last = self.terminating_degree();
        self.check_poles(last)?;
        if z == 0.0 {
            return Ok(1.0);
        }
        if let Some(n) = last {
            let mut s = CompensatedSum::new();
            let mut t = 1.0;
            for j in 0..=n {
                s.add(t);
                t *= self.ratio(j as f64, z);
            }
            return Ok(s.total());
        }
        let (p, q) = (self.num.len(), self.den.len());
        if p == 1 && q == 1 && z < -30.0 {
            // Kummer: 1F1(a;b;z) = e^z 1F1(b−a;b;−z)
            let (a, b) = (self.num[0], self.den[0]);
            let k = Hypergeometric::new(&[b - a], &[b]);
            return Ok(z.exp() * k.eval(-z)?);
        }
        let converges = p <= q || (p == q + 1 && z.abs() < 1.0);
        if !converges {
            return Err(Error::Unsupported(format!(
                "{p}F{q} series does not converge at z = {z}"
            )));
        }
        let mut s = CompensatedSum::new();
        let mut t = 1.0;
        let mut small = 0;
        for j in 0..MAX_TERMS {
            s.add(t);
            let r = self.ratio(j as f64, z);
            t *= r;
            if t == 0.0 {
                return Ok(s.total());
            }
            if t.abs() <= 1e-17 * s.total().abs() && r.abs() < 1.0 {
                small += 1;
                if small >= 2 {
                    return Ok(s.total());
                }
            } else {
                small = 0;
            }
        }
        Err(Error::Convergence {
            message: format!("{p}F{q} series at z = {z}"),
            estimate: s.total(),
            abs_error: t.abs(),
        })
    }
}

/// Entire series (p ≤ q) summed in double-double at z = −x² with x exact;
/// returns the sum and Σ|terms|, so callers can bound the rounding left over.
pub(crate) fn hyp_entire_neg_sq_dd(num: &[f64], den: &[f64], x: f64) -> Result<(Dd, f64)> {
    if num.len() > den.len() {
        return Err(Error::Unsupported("double-double series needs p ≤ q".into()));
    }
    let z = -(Dd::new(x) * Dd::new(x));
    let zf = z.to_f64().abs();
    let mut s = Dd::ZERO;
    let mut t = Dd::ONE;
    let mut mag = 0.0;
    for j in 0..MAX_TERMS {
        s = s + t;
        mag += t.to_f64().abs();
        let jf = j as f64;
        for &a in num {
            t = t * (a + jf);
        }
        for &b in den {
            t = t.div_f64(b + jf);
        }
        t = (t * z).div_f64(jf + 1.0);
        if t.hi == 0.0 || (jf > zf && t.hi.abs() < 1e-34 * s.hi.abs().max(1e-300)) {
            return Ok((s, mag));
        }
    }
    Err(Error::Convergence {
        message: format!("double-double {}F{} series at z = {}", num.len(), den.len(), z.to_f64()),
        estimate: s.to_f64(),
        abs_error: t.to_f64().abs(),
    })
}

/// pFq(numerators; denominators; z).
pub fn hyp_pfq_series(num: &[f64], den: &[f64], z: f64) -> Result<f64> {
    Hypergeometric::new(num, den).eval(z)
}

/// Terminating 3F2(a1, a2, a3; b1, b2; 1).
pub fn hyp_3f2_unit(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    let h = Hypergeometric::new(&[a1, a2, a3], &[b1, b2]);
    if h.terminating_degree().is_none() {
        return Err(Error::Unsupported(
            "3F2 at unit argument requires a non-positive integer numerator".into(),
        ));
    }
    h.eval(1.0)
}

/// The finite 2q-fold sum 𝔉_q(n) appearing in the Rényi entropy of the
/// one-dimensional oscillator state n with parity ν:
///
/// Σ_{j_1..j_{2q} = 0}^{m} (qν + 1/2)_{Σj} Π_s (−m)_{j_s} / ((ν + 1/2)_{j_s} j_s!) · q^{−Σj},
/// with m = (n − ν)/2.
///
/// The terms alternate and cancel heavily (f64 accumulation loses ~8 digits at
/// q = 3, n = 8), so the sum is carried out in exact rational arithmetic and
/// rounded once; the result is bit-reproducible regardless of term order.
pub fn lauricella_fa_finite(q: u32, nu: u32, n: u64) -> Result<f64> {
    if q == 0 {
        return domain("Lauricella sum needs q ≥ 1");
    }
    if nu > 1 || n % 2 != nu as u64 {
        return domain(format!("parity mismatch: n = {n}, ν = {nu}"));
    }
    if n < 2 {
        return Ok(1.0);
    }
    Ok(super::exact::to_f64(&super::exact::lauricella_exact(q, nu, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spec_examples() {
        assert_eq!(hyp_pfq_series(&[3.0], &[0.5], 0.0).unwrap(), 1.0);
        assert_eq!(hyp_pfq_series(&[1.0, 1.0], &[1.5, 2.0], 0.0).unwrap(), 1.0);
        assert_eq!(hyp_pfq_series(&[0.0, 2.0, 1.0, 3.0], &[1.5, 2.0, 2.5], 1.0).unwrap(), 1.0);
        assert_eq!(hyp_3f2_unit(0.0, 2.5, 3.0, 1.5, 1.0).unwrap(), 1.0);
        assert_relative_eq!(hyp_3f2_unit(-1.0, -1.0, 2.0, 1.5, 1.0).unwrap(), 7.0 / 3.0, max_relative = 1e-15);
        for nr in 0..20 {
            assert_eq!(hyp_3f2_unit(-(nr as f64), 0.0, 1.0, 2.5, 1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp_3f2_unit(0.5, 0.5, 0.5, 1.0, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(hyp_pfq_series(&[-3.0], &[-1.0], 0.5), Err(Error::Domain(_))));
        assert!(matches!(hyp_pfq_series(&[1.0, 1.0], &[2.0], 1.5), Err(Error::Unsupported(_))));
        assert!(lauricella_fa_finite(2, 0, 3).is_err());
    }

    #[test]
    fn reference_values() {
        // mpmath hyp1f1 / hyp2f2 at 30 digits
        let cases: [(&[f64], &[f64], f64, f64); 5] = [
            (&[3.0], &[0.5], -2.25, 0.034_535_666_155_988_724),
            (&[1.0, 1.0], &[1.5, 2.0], -4.0, 0.398_093_602_422_583_3),
            (&[2.0], &[0.5], -40.0, 0.000_536_435_974_223_803_5),
            (&[1.0, 1.0], &[1.5, 2.0], -8.6, 0.235_493_601_625_398_53),
            (&[0.5, 1.0], &[2.0], 0.75, 1.333_333_333_333_333_3),
        ];
        for (a, b, z, want) in cases {
            let got = hyp_pfq_series(a, b, z).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-11);
        }
    }

    #[test]
    fn lauricella_trivial_cases() {
        for q in 1..6 {
            assert_eq!(lauricella_fa_finite(q, 0, 0).unwrap(), 1.0);
            assert_eq!(lauricella_fa_finite(q, 1, 1).unwrap(), 1.0);
        }
    }

}
