//! Exact rational evaluation of the Hermite power coefficients and the
//! Lauricella sum; both are finite alternating sums whose f64 evaluation
//! cancels badly once n and q grow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// p/2 as a rational.
fn half(p: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(2))
}

fn factorial(n: u64) -> BigRational {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    BigRational::from_integer(f)
}

fn pow(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// (−m)_j / ((ν+1/2)_j j!) · q^{−j}, j = 0..=m.
fn lauricella_factors(q: u32, nu: u32, m: u64) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut t = BigRational::one();
    let qr = int(q as i64);
    for j in 0..=m {
        out.push(t.clone());
        let jj = j as i64;
        t = t * int(jj - m as i64) / (half(2 * nu as i64 + 1 + 2 * jj) * int(jj + 1) * &qr);
    }
    out
}

fn power_series(t: &[BigRational], power: u32) -> Vec<BigRational> {
    let mut a = vec![BigRational::one()];
    for _ in 0..power {
        let mut next = vec![BigRational::zero(); a.len() + t.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, tj) in t.iter().enumerate() {
                next[i + j] += ai * tj;
            }
        }
        a = next;
    }
    a
}

/// 𝔉_q(n) as an exact rational, grouping terms by Σ j_s.
pub fn lauricella_exact(q: u32, nu: u32, n: u64) -> BigRational {
    let m = (n - nu as u64) / 2;
    let a = power_series(&lauricella_factors(q, nu, m), 2 * q);
    let top = 2 * (q * nu) as i64 + 1; // 2(qν + 1/2)
    let mut poch = BigRational::one();
    let mut s = BigRational::zero();
    for (k, c) in a.iter().enumerate() {
        s += &poch * c;
        poch *= half(top + 2 * k as i64);
    }
    s
}

/// Coefficients c_j, j = 0..=qn, of |H_n(y)|^{2q} = Σ_j c_j H_{2j}(√q · y).
pub fn hermite_power_coefficients(n: u64, q: u32) -> Vec<BigRational> {
    let nu = n % 2;
    let m = (n - nu) / 2;
    let qq = q as u64;
    // 2^n m! binom(m + ν − 1/2, m)
    let mut base = pow(&int(2), n) * factorial(m);
    for i in 0..m as i64 {
        base = base * half(2 * (m as i64 + nu as i64 - i) - 1) / int(i + 1);
    }
    let k = pow(&base, 2 * qq);
    // P(t) = Σ_j (−m)_j / ((ν+1/2)_j j!) t^j, i.e. the factors at q = 1
    let a = power_series(&lauricella_factors(1, nu as u32, m), 2 * q);
    let qr = int(q as i64);
    let four = int(4);
    (0..=qq * n)
        .map(|j| {
            let mut s = BigRational::zero();
            for (p, ap) in a.iter().enumerate() {
                let sdeg = qq * nu + p as u64;
                if sdeg < j || ap.is_zero() {
                    continue;
                }
                let w = factorial(2 * sdeg)
                    / (pow(&qr, sdeg) * pow(&four, sdeg) * factorial(sdeg - j) * factorial(2 * j));
                s += ap * w;
            }
            &k * s
        })
        .collect()
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// x ≈ hi + lo with hi = fl(x).
pub fn split_f64(x: &BigRational) -> (f64, f64) {
    let hi = to_f64(x);
    match BigRational::from_float(hi) {
        Some(h) => (hi, to_f64(&(x - h))),
        None => (hi, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_by_hand() {
        // 4y² = H_2(y) + 2 H_0(y)
        let c = hermite_power_coefficients(1, 1);
        assert_eq!(c, vec![int(2), int(1)]);
        assert_eq!(lauricella_exact(3, 0, 0), int(1));
        // independent 40-digit lexicographic sum
        assert!((to_f64(&lauricella_exact(2, 0, 6)) - 4.764_541_015_625).abs() < 1e-15);
    }

    // the literal 2q-fold sum in lexicographic order
    fn lauricella_lexicographic(q: u32, nu: u32, n: u64) -> BigRational {
        let m = (n - nu as u64) / 2;
        let t = lauricella_factors(q, nu, m);
        let vars = 2 * q as usize;
        let mut idx = vec![0usize; vars];
        let mut s = BigRational::zero();
        loop {
            let tot: usize = idx.iter().sum();
            let mut term = BigRational::one();
            for i in 0..tot {
                term *= half(2 * (q * nu) as i64 + 1 + 2 * i as i64);
            }
            for &j in &idx {
                term *= &t[j];
            }
            s += term;
            let mut k = vars;
            loop {
                if k == 0 {
                    return s;
                }
                k -= 1;
                if idx[k] < m as usize {
                    idx[k] += 1;
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    #[test]
    fn grouped_equals_lexicographic_exactly() {
        for q in 1..=3 {
            for n in 0..=6u64 {
                let nu = (n % 2) as u32;
                assert_eq!(lauricella_exact(q, nu, n), lauricella_lexicographic(q, nu, n), "q={q} n={n}");
            }
        }
    }
}
