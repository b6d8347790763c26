//! Special functions and linearization coefficients.

pub mod bessel;
pub(crate) mod dd;
pub mod exact;
pub(crate) mod sum;
pub mod gamma;
pub mod hyper;
pub mod linearize;
pub mod poly;
pub mod wigner;

pub use bessel::bessel_j;
pub use gamma::{binomial, digamma, gamma, ln_gamma, ln_gamma_signed, pochhammer, EULER_GAMMA};
pub use hyper::{hyp_3f2_unit, hyp_pfq_series, lauricella_fa_finite, Hypergeometric};
pub use linearize::{
    gegenbauer_square_linearize, hermite_power_linearize, laguerre_product_integral,
    laguerre_square_linearize, LinearizationExpansion,
};
pub use poly::{eval_poly, poly_roots, Family, Normalization, PolySpec};
pub use wigner::wigner_3j;
