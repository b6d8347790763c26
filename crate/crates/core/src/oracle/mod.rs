//! Quadrature oracle: Gauss rules, adaptive Gauss–Kronrod and the
//! norm/entropy functionals built on them. Independent of every closed form
//! in the crate, so it can adjudicate them.

pub mod adaptive;
pub mod norms;
pub mod rules;

pub use adaptive::{integrate_adaptive, integrate_adaptive_scaled, xlogx, IntegralEstimate};
pub use norms::{
    ln_weighted_lq_norm, polynomial_entropy, polynomial_entropy_estimate, weighted_lq_norm,
    weighted_lq_norm_adaptive, DEFAULT_TOL,
};
pub use rules::{gauss_rule, QuadratureRule, RuleFamily};
