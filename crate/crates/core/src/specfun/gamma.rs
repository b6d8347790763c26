//! Gamma, digamma, Pochhammer and binomial helpers.

use crate::error::{domain, Result};
use once_cell::sync::Lazy;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k) for k = 1..8
const DIGAMMA_ASYM: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const ASYM_THRESHOLD: f64 = 16.0;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn ln_gamma_large(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

// ζ(k) for k = 0..=40 (entries 0 and 1 unused), via Euler–Maclaurin with N = 20.
static ZETA: Lazy<[f64; 41]> = Lazy::new(|| {
    let mut z = [0.0; 41];
    let n = 20.0f64;
    for (k, zk) in z.iter_mut().enumerate().skip(2) {
        let kf = k as f64;
        let head: f64 = (1..20).map(|i| (i as f64).powf(-kf)).sum();
        let p = |e: f64| n.powf(-e);
        let tail = p(kf - 1.0) / (kf - 1.0) + 0.5 * p(kf) + kf / 12.0 * p(kf + 1.0)
            - kf * (kf + 1.0) * (kf + 2.0) / 720.0 * p(kf + 3.0)
            + kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) / 30240.0 * p(kf + 5.0)
            - kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) * (kf + 5.0) * (kf + 6.0) / 1_209_600.0
                * p(kf + 7.0);
        *zk = head + tail;
    }
    z
});

// ln Γ(1+ε) = −γε + Σ_{k≥2} ζ(k)(−ε)^k/k, used for |ε| ≤ 1/4.
fn ln_gamma_1p(eps: f64) -> f64 {
    let mut s = 0.0;
    let mut p = eps * eps;
    for k in 2..=40 {
        let t = ZETA[k] * p / k as f64;
        s += if k % 2 == 0 { t } else { -t };
        p *= eps;
        if p.abs() < 1e-18 * s.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA * eps + s
}

static LN_FACTORIAL: Lazy<Vec<f64>> = Lazy::new(|| {
    let mut f = 1.0f64;
    let mut out = Vec::with_capacity(171);
    out.push(0.0);
    for i in 1..=170 {
        f *= i as f64;
        out.push(f.ln());
    }
    out
});

fn ln_gamma_positive(x: f64) -> f64 {
    if (x - 1.0).abs() <= 0.25 {
        return ln_gamma_1p(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.25 {
        return ln_gamma_1p(x - 2.0) + (x - 1.0).ln();
    }
    if x == x.floor() && x <= 171.0 {
        return LN_FACTORIAL[x as usize - 1];
    }
    if x >= ASYM_THRESHOLD {
        return ln_gamma_large(x);
    }
    // shift up, dividing out the product x(x+1)...(x+k-1)
    let mut prod = 1.0;
    let mut y = x;
    while y < ASYM_THRESHOLD {
        prod *= y;
        y += 1.0;
    }
    ln_gamma_large(y) - prod.ln()
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return domain(format!("ln_gamma of non-finite argument {x}"));
    }
    if is_nonpositive_integer(x) {
        return domain(format!("Gamma pole at {x}"));
    }
    if x > 0.0 {
        return Ok((ln_gamma_positive(x), 1.0));
    }
    // reflection: Γ(x)Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Ok((lg, s.signum()))
}

/// ln Γ(x) for x > 0; negative non-integers are accepted when Γ(x) > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    let (lg, sign) = ln_gamma_signed(x)?;
    if sign < 0.0 {
        return domain(format!("Gamma({x}) is negative; use ln_gamma_signed"));
    }
    Ok(lg)
}

pub fn gamma(x: f64) -> Result<f64> {
    let (lg, sign) = ln_gamma_signed(x)?;
    Ok(sign * lg.exp())
}

/// sin(πx) with exact zeros at integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == r.floor() {
        return 0.0;
    }
    (PI * r).sin()
}

pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("digamma of non-finite argument {x}"));
    }
    if is_nonpositive_integer(x) {
        return domain(format!("digamma pole at {x}"));
    }
    if x < 0.0 {
        // ψ(1-x) - ψ(x) = π cot(πx)
        let cot = (PI * x).cos() / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < ASYM_THRESHOLD {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut p = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_ASYM {
        series += c * p;
        p *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

/// Rising factorial (a)_j as a direct product.
pub fn pochhammer(a: f64, j: u64) -> f64 {
    let mut p = 1.0;
    for i in 0..j {
        p *= a + i as f64;
    }
    p
}

/// ln|(a)_j| and its sign; a vanishing factor gives (-inf, 0).
pub fn ln_pochhammer_signed(a: f64, j: u64) -> (f64, f64) {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for i in 0..j {
        let f = a + i as f64;
        if f == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if f < 0.0 {
            sign = -sign;
        }
        ln += f.abs().ln();
    }
    (ln, sign)
}

/// Generalized binomial coefficient binom(a, k) for real a and integer k.
pub fn binomial(a: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mut b = 1.0;
    for i in 0..k {
        b *= (a - i as f64) / (i + 1) as f64;
    }
    b
}

pub fn ln_factorial(n: u64) -> f64 {
    if n <= 170 {
        return LN_FACTORIAL[n as usize];
    }
    ln_gamma_positive(n as f64 + 1.0)
}
