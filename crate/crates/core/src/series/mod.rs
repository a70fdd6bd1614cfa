//! Truncated power series over exact or p-adic coefficients.

pub mod coeff;
pub mod export;
pub mod newton;
pub mod trunc;
pub mod weierstrass;

pub use coeff::Coeff;
pub use newton::newton_power_sums;
pub use trunc::Series;
pub use weierstrass::{weierstrass_divide, weierstrass_prepare, weierstrass_prepare_padic};

#[cfg(test)]
mod tests;
