//! Randomized invariants across modules.

use oscspread::asymptotics::{
    highdim_renyi, highdim_renyi_sum, rydberg_heisenberg, rydberg_moment, rydberg_shannon, RydbergLimit,
};
use oscspread::infomeasures::{fisher, fisher_closed, renyi_hyperspherical, shannon_hyperspherical, RenyiOrder};
use oscspread::moments::radial_moment;
use oscspread::uncertainty::{check_all, CheckParams};
use oscspread::{HyperState, OscillatorSpec, Space, StateSpec};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = HyperState> {
    (2usize..=7, 0usize..=5, 0usize..=4, any::<bool>(), 0usize..=4, 0.3f64..3.0).prop_map(|(d, n_r, l, neg, mraw, omega)| {
        let am = if d == 2 { l } else { mraw.min(l) };
        let m = if neg { -(am as i64) } else { am as i64 };
        HyperState::with_lm(OscillatorSpec::new(omega, d).unwrap(), n_r, l, m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_relation_holds(h in state(), q in 0.55f64..4.0) {
        prop_assume!((q - 1.0).abs() > 1e-3);
        let params = CheckParams { q, ..Default::default() };
        for r in check_all(&StateSpec::Hyper(h.clone()), &params).unwrap() {
            prop_assert!(r.satisfied, "{:?} for {:?}", r, h);
            prop_assert!(!r.saturated || r.satisfied);
        }
    }

    #[test]
    fn fisher_routes_and_product(h in state()) {
        let fp = fisher(&h, Space::Position).unwrap().value;
        let fm = fisher(&h, Space::Momentum).unwrap().value;
        prop_assert!((fp - fisher_closed(&h, Space::Position)).abs() < 1e-12 * fp);
        let e = 2.0 * h.n_r as f64 + h.l() as f64 - h.abs_m() as f64 + h.dim() as f64 / 2.0;
        prop_assert!((fp * fm / (16.0 * e * e) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_sums_are_omega_free(h in state()) {
        let other = HyperState::new(OscillatorSpec::new(1.0, h.dim()).unwrap(), h.n_r, h.mu.clone()).unwrap();
        let sum = |s: &HyperState| shannon_hyperspherical(s, Space::Position).unwrap().value
            + shannon_hyperspherical(s, Space::Momentum).unwrap().value;
        prop_assert!((sum(&h) - sum(&other)).abs() < 1e-9);
        let q = RenyiOrder::new(2.0).unwrap();
        let rsum = |s: &HyperState| renyi_hyperspherical(s, q, Space::Position).unwrap().value
            + renyi_hyperspherical(s, q, Space::Momentum).unwrap().value;
        prop_assert!((rsum(&h) - rsum(&other)).abs() < 1e-9);
    }

    #[test]
    fn renyi_decreases_in_q(h in state(), a in 0.3f64..3.0, b in 0.3f64..3.0) {
        prop_assume!((a - b).abs() > 0.05 && (a - 1.0).abs() > 0.01 && (b - 1.0).abs() > 0.01);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let r = |q: f64| renyi_hyperspherical(&h, RenyiOrder::new(q).unwrap(), Space::Position).unwrap().value;
        prop_assert!(r(lo) >= r(hi) - 1e-9);
    }

    #[test]
    fn moments_are_positive_and_scale(h in state(), k in -1.5f64..6.0) {
        prop_assume!(k > -(2.0 * h.l() as f64 + h.dim() as f64));
        let w = h.omega();
        let r = radial_moment(&h, k, Space::Position).unwrap();
        let p = radial_moment(&h, k, Space::Momentum).unwrap();
        prop_assert!(r > 0.0 && p > 0.0);
        prop_assert!((p / (r * w.powf(k)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rydberg_heisenberg_is_product_of_moments(k in -0.9f64..6.0, n_r in 1usize..5000, w in 0.2f64..5.0) {
        let lim = RydbergLimit::new(0.0).unwrap();
        let a = rydberg_moment(k, n_r, lim, w, Space::Position).unwrap().value;
        let b = rydberg_moment(k, n_r, lim, w, Space::Momentum).unwrap().value;
        prop_assert!((a * b / rydberg_heisenberg(k, n_r).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rydberg_shannon_sum_omega_free(n_r in 5usize..500, d in 3usize..7, w in 0.2f64..5.0) {
        let at = |omega: f64| {
            let h = HyperState::with_lm(OscillatorSpec::new(omega, d).unwrap(), n_r, 0, 0).unwrap();
            rydberg_shannon(&h, Space::Position).unwrap().value + rydberg_shannon(&h, Space::Momentum).unwrap().value
        };
        prop_assert!((at(w) - at(1.0)).abs() < 1e-12 * at(1.0).abs().max(1.0));
    }

    #[test]
    fn highdim_conjugate_sum_leading_terms_match_bound(d in 3usize..400, p in 0.6f64..5.0, w in 0.2f64..5.0) {
        prop_assume!((p - 1.0).abs() > 1e-3);
        let h = HyperState::ground(OscillatorSpec::new(w, d).unwrap()).unwrap();
        let po = RenyiOrder::new(p).unwrap();
        let sum = highdim_renyi(&h, po, Space::Position).unwrap().leading.value
            + highdim_renyi(&h, po.conjugate().unwrap(), Space::Momentum).unwrap().leading.value;
        let bound = highdim_renyi_sum(d, po).unwrap().value;
        prop_assert!((sum - bound).abs() < 1e-10 * bound.abs().max(1.0));
    }
}
