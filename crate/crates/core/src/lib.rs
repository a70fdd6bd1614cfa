//! Integral p-adic Fourier theory on Lubin–Tate groups.

pub mod arith;
pub mod bh;
pub mod error;
pub mod formal_group;
pub mod fourier;
pub mod gamma;
pub mod report;
pub mod series;
pub mod trace;

pub use error::{Error, Result};
