#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

//! Numerics for fractional powers of the discrete Laplacian on the half-line.

pub mod bilaplacian;
pub mod eigen;
pub mod error;
pub mod format;
pub mod green_hardy;
pub mod operator;
pub mod quadrature;
pub mod roots;
pub mod selftest;
pub mod special;
pub mod spectral_probe;

pub use error::{Error, Result};
