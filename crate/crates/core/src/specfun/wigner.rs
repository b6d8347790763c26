//! Wigner 3j symbols through the Racah sum.

use super::gamma::ln_factorial;
use super::sum::CompensatedSum;

fn twice(x: f64) -> Option<i64> {
    let t = 2.0 * x;
    (t == t.round()).then_some(t as i64)
}

/// (j1 j2 j3; m1 m2 m3). Arguments may be integers or half-integers; symbols
/// violating the selection rules are zero.
pub fn wigner_3j(j1: f64, j2: f64, j3: f64, m1: f64, m2: f64, m3: f64) -> f64 {
    let (Some(a), Some(b), Some(c), Some(x), Some(y), Some(z)) =
        (twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3))
    else {
        return 0.0;
    };
    if a < 0 || b < 0 || c < 0 || x + y + z != 0 {
        return 0.0;
    }
    if x.abs() > a || y.abs() > b || z.abs() > c {
        return 0.0;
    }
    if (a + x) % 2 != 0 || (b + y) % 2 != 0 || (c + z) % 2 != 0 {
        return 0.0;
    }
    if c > a + b || c < (a - b).abs() || (a + b + c) % 2 != 0 {
        return 0.0;
    }
    // everything below is in integer units
    let h = |v: i64| -> i64 { v / 2 };
    let (s1, s2, s3) = (h(a + b - c), h(a - b + c), h(-a + b + c));
    let total = h(a + b + c);
    let lf = |n: i64| ln_factorial(n as u64);
    let ln_delta = lf(s1) + lf(s2) + lf(s3) - lf(total + 1);
    let ln_m = lf(h(a + x)) + lf(h(a - x)) + lf(h(b + y)) + lf(h(b - y)) + lf(h(c + z)) + lf(h(c - z));
    let ln_pre = 0.5 * (ln_delta + ln_m);
    let t1 = h(c - b + x); // j3 − j2 + m1
    let t2 = h(c - a - y); // j3 − j1 − m2
    let t3 = s1; // j1 + j2 − j3
    let t4 = h(a - x); // j1 − m1
    let t5 = h(b + y); // j2 + m2
    let kmin = 0.max(-t1).max(-t2);
    let kmax = t3.min(t4).min(t5);
    let mut sum = CompensatedSum::new();
    for k in kmin..=kmax {
        let ln_den = lf(k) + lf(t1 + k) + lf(t2 + k) + lf(t3 - k) + lf(t4 - k) + lf(t5 - k);
        let term = (ln_pre - ln_den).exp();
        sum.add(if k % 2 == 0 { term } else { -term });
    }
    let phase_exp = h(a - b - z);
    let phase = if phase_exp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * sum.total()
}
