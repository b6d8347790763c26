//! Globally adaptive Gauss–Kronrod (21-point) integration.
//!
//! The domain is cut at every listed singular point, so each panel sees at
//! most one endpoint singularity. Semi-infinite pieces are mapped onto [0, 1)
//! with x = c ± s·t/(1 − t). The panel with the largest error estimate is
//! bisected until the total estimate meets the tolerance.

use crate::error::{domain, Error, Result};
use crate::specfun::sum::CompensatedSum;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Absolute error floor below which no further refinement is attempted.
pub const ABS_FLOOR: f64 = 1e-14;
const MAX_SUBDIVISIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * resabs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

/// One 21-point Kronrod panel: (value, error estimate).
fn qk21(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = fc * WGK[10];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (resk - resg) * half;
    (resk * half, rescale_error(err, resabs * half.abs(), resasc * half.abs()))
}

#[derive(Clone, Copy)]
enum Map {
    Identity,
    /// x = c + s·t/(1−t), t ∈ [0, 1)
    Upper { c: f64, s: f64 },
    /// x = c − s·t/(1−t)
    Lower { c: f64, s: f64 },
}

impl Map {
    fn apply(self, f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
        match self {
            Map::Identity => f(t),
            Map::Upper { c, s } | Map::Lower { c, s } => {
                let u = 1.0 - t;
                let x = if matches!(self, Map::Upper { .. }) { c + s * t / u } else { c - s * t / u };
                if !x.is_finite() {
                    return 0.0;
                }
                let v = f(x) * s / (u * u);
                // far tail: the integrand has decayed, Jacobian overflow is spurious
                if v.is_finite() { v } else { 0.0 }
            }
        }
    }
}

struct Panel {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Integrates f over [a, b] (either end may be infinite) to
/// max(tol·|value|, 1e−14), splitting first at `singular_points`.
///
/// `tail_scale` sets the length scale s of the semi-infinite maps; pass 1
/// unless the integrand decays over a markedly different scale.
pub fn integrate_adaptive_scaled(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    singular_points: &[f64],
    tol: f64,
    tail_scale: f64,
) -> Result<IntegralEstimate> {
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    if a.is_nan() || b.is_nan() || !(a < b) {
        return domain(format!("empty or invalid interval [{a}, {b}]"));
    }
    if !(tail_scale > 0.0 && tail_scale.is_finite()) {
        return domain(format!("tail scale must be positive, got {tail_scale}"));
    }
    let mut cuts: Vec<f64> = singular_points.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    if a.is_infinite() && b.is_infinite() && cuts.is_empty() {
        cuts.push(0.0);
    }
    let mut edges = vec![a];
    edges.extend(cuts);
    edges.push(b);

    let mut pieces = Vec::new();
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (map, tlo, thi) = if hi.is_infinite() {
            (Map::Upper { c: lo, s: tail_scale }, 0.0, 1.0)
        } else if lo.is_infinite() {
            (Map::Lower { c: hi, s: tail_scale }, 0.0, 1.0)
        } else {
            (Map::Identity, lo, hi)
        };
        pieces.push((map, tlo, thi));
    }

    let f = &f;
    let eval = |piece: usize, lo: f64, hi: f64| {
        let map = pieces[piece].0;
        let g = move |t: f64| map.apply(f, t);
        qk21(&g, lo, hi)
    };

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel> = Vec::new();
    for (i, &(_, lo, hi)) in pieces.iter().enumerate() {
        let (value, err) = eval(i, lo, hi);
        heap.push(Panel { piece: i, a: lo, b: hi, value, err });
    }
    let mut subdivisions = 0;
    // running error total; exact totals are recomputed before any decision
    let (mut running_value, mut running_err) = totals(heap.iter());
    loop {
        let (value, err) = (running_value, running_err);
        if !value.is_finite() {
            let (value, err) = totals(heap.iter().chain(done.iter()));
            return Err(Error::Convergence {
                message: "integrand produced a non-finite value".into(),
                estimate: value,
                abs_error: err,
            });
        }
        if err <= (tol * value.abs()).max(ABS_FLOOR) {
            let (value, err) = totals(heap.iter().chain(done.iter()));
            if err <= (tol * value.abs()).max(ABS_FLOOR) {
                return Ok(IntegralEstimate { value, abs_error_estimate: err, subdivisions });
            }
            running_value = value;
            running_err = err;
        }
        let Some(worst) = heap.pop() else {
            let (value, err) = totals(done.iter());
            return Err(Error::Convergence {
                message: "every remaining panel is at roundoff width".into(),
                estimate: value,
                abs_error: err,
            });
        };
        if subdivisions >= MAX_SUBDIVISIONS {
            heap.push(worst);
            let (value, err) = totals(heap.iter().chain(done.iter()));
            return Err(Error::Convergence {
                message: format!("adaptive budget of {MAX_SUBDIVISIONS} subdivisions exhausted"),
                estimate: value,
                abs_error: err,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) <= 8.0 * f64::EPSILON * mid.abs() {
            done.push(worst);
            continue;
        }
        subdivisions += 1;
        let (v1, e1) = eval(worst.piece, worst.a, mid);
        let (v2, e2) = eval(worst.piece, mid, worst.b);
        if !(v1 + v2).is_finite() {
            return Err(Error::Convergence {
                message: "integrand is not integrable near a subdivision point".into(),
                estimate: running_value,
                abs_error: running_err,
            });
        }
        running_value += v1 + v2 - worst.value;
        running_err += e1 + e2 - worst.err;
        heap.push(Panel { piece: worst.piece, a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { piece: worst.piece, a: mid, b: worst.b, value: v2, err: e2 });
    }
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64) {
    let mut v = CompensatedSum::new();
    let mut e = 0.0;
    for p in panels {
        v.add(p.value);
        e += p.err;
    }
    (v.total(), e)
}

/// [`integrate_adaptive_scaled`] with unit tail scale.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    singular_points: &[f64],
    tol: f64,
) -> Result<IntegralEstimate> {
    integrate_adaptive_scaled(f, a, b, singular_points, tol, 1.0)
}

/// t ln t with 0 ln 0 = 0.
pub fn xlogx(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.ln()
    }
}
