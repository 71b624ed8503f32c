//! Exact rational arithmetic, dense matrices, sparse multivariate polynomials,
//! p-adic valuations and affine-in-s exponents. Everything downstream builds
//! on this module; all values are immutable after construction and all
//! operations are pure.

pub mod affine;
pub mod mat;
pub mod mpoly;
pub mod padic;
pub mod rat;

pub use affine::AffineExp;
pub use mat::{Mat, Scalar};
pub use mpoly::{jacobian_det, MPoly, Monomial};
pub use padic::{is_prime, padic_val, PadicVal};
pub use rat::{sign_pow, Rat};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("jacobian shape mismatch: {map_len} component(s) vs {nvars} variable(s)")]
    JacobianShape { map_len: usize, nvars: usize },
}
