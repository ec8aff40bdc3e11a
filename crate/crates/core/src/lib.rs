//! Exact determinantal moments of random density matrices, moment-based
//! reconstruction of their distributions, and Monte Carlo checks.

pub mod bigreal;
pub mod densities;
pub mod error;
pub mod exact;
pub mod moments;
pub mod reconstruct;
pub mod sampler;

pub use error::{Error, Result};
