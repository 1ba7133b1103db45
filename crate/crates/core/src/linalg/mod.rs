//! Exact linear algebra over integers and rationals.
//!
//! [`Matrix`] is generic over its scalar. Integer-only operations (Hermite
//! form, determinants, unimodular inverses) require [`IntScalar`]; field
//! operations (echelon forms, cyclic subspaces, minimal polynomials)
//! require [`Field`].

pub mod integer;
pub mod lll;
pub mod matrix;
pub mod rational;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use integer::{determinant, hermite, left_nullspace, unimodular_inverse, Hermite, IntScalar};
pub use matrix::{dot, is_zero_vec, vec_add, vec_neg, vec_scale, vec_sub, Matrix, Scalar};
pub use rational::{krylov, minimal_polynomial, rref, solve_left, Field, Krylov};

/// Converts an integer matrix to its rational image.
pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

pub fn vec_to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// What [`smith_solve`] should compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Rank,
    Nullspace,
    Hnf,
    Det,
}

/// Result of [`smith_solve`], one variant per [`SolveMode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutput {
    Rank(usize),
    Nullspace(Matrix<BigInt>),
    Hnf(Matrix<BigInt>),
    Det(Option<BigInt>),
}

/// Single entry point for the exact integer solvers; `Det` is `None` for
/// non-square input.
pub fn smith_solve(m: &Matrix<BigInt>, mode: SolveMode) -> SolveOutput {
    match mode {
        SolveMode::Rank => SolveOutput::Rank(integer::rank(m)),
        SolveMode::Nullspace => SolveOutput::Nullspace(left_nullspace(m)),
        SolveMode::Hnf => SolveOutput::Hnf(hermite(m).h),
        SolveMode::Det => SolveOutput::Det(determinant(m).ok()),
    }
}
