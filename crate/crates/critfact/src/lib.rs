//! Factorization of bivariate polynomials over finite fields and the
//! rationals, lifting truncated analytic factors along a possibly critical
//! fiber `x = 0` and recombining them with exact linear algebra.

pub mod absolute;
pub mod analytic;
pub mod cli;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod polyring;
pub mod polytope;
pub mod recombine;
pub mod unifactor;

pub use error::{Error, Result};
