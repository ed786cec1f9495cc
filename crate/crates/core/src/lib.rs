//! Real and complex zeros of the parabolic cylinder function `U(a, z)`.

pub mod airy;
pub mod coeffs;
mod dd;
pub mod error;
pub mod genairy;
pub mod mapping;
pub mod pcf_eval;
pub mod refine;
pub mod zeros;

pub use error::{Error, Result};
