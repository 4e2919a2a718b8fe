//! Self-contained dense linear algebra over `f64` and `Complex64`.
//!
//! Everything the laboratory needs lives here: column-major dense matrices,
//! the real stacking map [`tilde_vec`], Kronecker products, a rank-deflating
//! QR factorization with optional column pivoting, numerical rank, and a
//! seeded random source for reproducible channel draws.

mod matrix;
mod qr;
mod random;

pub use matrix::{kron, tilde_vec, ComplexMatrix, RealMatrix};
pub use qr::{
    complex_rank, numerical_rank, qr_decompose, real_nullity, QrFactorization, DEFAULT_RANK_TOL,
};
pub use random::{sample_channel, RandomSource};
