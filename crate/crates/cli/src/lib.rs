//! Library side of the `oscspread` command: quantity registry, sweeps,
//! plots and the validation suite, shared by the binary and the acceptance
//! tests.

pub mod format;
pub mod plot;
pub mod quantity;
pub mod sweep;
pub mod validate;
