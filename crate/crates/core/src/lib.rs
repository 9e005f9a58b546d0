//! Kippenhahn curves and numerical ranges of reciprocal tridiagonal matrices.

pub mod algebraic;
pub mod cli;
pub mod ellipse;
pub mod error;
pub mod extended;
pub mod kippenhahn;
pub mod matrix;
pub mod poly;
pub mod range;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
