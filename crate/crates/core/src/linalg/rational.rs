//! Linear algebra over exact fields (in practice `BigRational`).

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::matrix::{Matrix, Scalar};
use crate::error::{FabfError, Result};

/// Exact fields: every nonzero element is invertible under `/`.
pub trait Field: Scalar {}

impl<T> Field for Ratio<T> where T: Integer + Signed + Clone + std::fmt::Debug {}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = F::one() / a[(r, col)].clone();
        for j in 0..a.cols() {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows() {
            if i != r && !a[(i, col)].is_zero() {
                let f = a[(i, col)].clone();
                for j in 0..a.cols() {
                    let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Coefficients `c` with `c · basis = y`, if `y` lies in the row space.
pub fn solve_left<F: Field>(basis: &Matrix<F>, y: &[F]) -> Option<Vec<F>> {
    if y.len() != basis.cols() {
        return None;
    }
    let k = basis.rows();
    if k == 0 {
        return y.iter().all(Zero::is_zero).then(Vec::new);
    }
    // Solve basisᵀ · cᵀ = yᵀ through the augmented system.
    let aug = basis.transpose().hstack(&Matrix::from_rows(y.iter().map(|v| vec![v.clone()]).collect()).ok()?).ok()?;
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![F::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = red[(row, k)].clone();
    }
    Some(c)
}

/// Inverse over the field.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(FabfError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(n))?;
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(FabfError::NotUnimodular("matrix".into(), "0".into()));
    }
    let rows = (0..n).map(|i| red.row(i)[n..].to_vec()).collect();
    Matrix::from_rows(rows)
}

/// The cyclic subspace of `x` under `m`.
#[derive(Clone, Debug)]
pub struct Krylov<F> {
    /// Rows `x, x·M, …, x·M^{d-1}`; linearly independent.
    pub basis: Matrix<F>,
    /// Monic annihilating polynomial of `x`, lowest degree first (length `d + 1`).
    pub annihilator: Vec<F>,
}

/// Computes the cyclic subspace spanned by the orbit of `x` and the monic
/// polynomial `f` of least degree with `x·f(M) = 0`.
pub fn krylov<F: Field>(x: &[F], m: &Matrix<F>) -> Krylov<F> {
    assert!(m.is_square() && x.len() == m.rows());
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut cur = x.to_vec();
    loop {
        let basis = if rows.is_empty() {
            Matrix::zeros(0, x.len())
        } else {
            Matrix::from_rows(rows.clone()).expect("uniform rows")
        };
        if let Some(c) = solve_left(&basis, &cur) {
            let mut annihilator: Vec<F> = c.into_iter().map(|v| -v).collect();
            annihilator.push(F::one());
            return Krylov { basis, annihilator };
        }
        let next = m.left_apply(&cur);
        rows.push(cur);
        cur = next;
    }
}

/// Minimal polynomial of a square matrix, monic, lowest degree first.
pub fn minimal_polynomial<F: Field>(m: &Matrix<F>) -> Vec<F> {
    assert!(m.is_square());
    let n = m.rows();
    let mut powers: Vec<Vec<F>> = Vec::new();
    let mut cur = Matrix::identity(n);
    loop {
        let flat = cur.entries().to_vec();
        let basis = if powers.is_empty() {
            Matrix::zeros(0, n * n)
        } else {
            Matrix::from_rows(powers.clone()).expect("uniform rows")
        };
        if let Some(c) = solve_left(&basis, &flat) {
            let mut poly: Vec<F> = c.into_iter().map(|v| -v).collect();
            poly.push(F::one());
            return poly;
        }
        powers.push(flat);
        cur = &cur * m;
    }
}
