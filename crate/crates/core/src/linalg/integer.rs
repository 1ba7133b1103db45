//! Exact integer linear algebra: determinants, Hermite normal form,
//! integer kernels and unimodular inverses.

use num_integer::Integer;

use super::matrix::{Matrix, Scalar};
use crate::error::{FabfError, Result};

/// Integer scalars (`BigInt`, or machine integers when overflow is ruled out).
pub trait IntScalar: Scalar + Integer {}

impl<T> IntScalar for T where T: Scalar + Integer {}

/// Returns `(g, s, t)` with `g = s·a + t·b = gcd(a, b) ≥ 0`.
pub fn ext_gcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant<T: IntScalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(FabfError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}

/// Row-style Hermite normal form.
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    /// Echelon form `H = U · M` with positive pivots and reduced entries above them.
    pub h: Matrix<T>,
    /// Unimodular transform.
    pub u: Matrix<T>,
    /// Column index of the pivot of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl<T: IntScalar> Hermite<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn combine_rows<T: IntScalar>(m: &mut Matrix<T>, a: usize, b: usize, coeffs: [&T; 4]) {
    // row_a <- c0·row_a + c1·row_b ; row_b <- c2·row_a + c3·row_b
    let [c0, c1, c2, c3] = coeffs;
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        let y = m[(b, j)].clone();
        m[(a, j)] = c0.clone() * x.clone() + c1.clone() * y.clone();
        m[(b, j)] = c2.clone() * x + c3.clone() * y;
    }
}

fn add_row_multiple<T: IntScalar>(m: &mut Matrix<T>, target: usize, source: usize, factor: &T) {
    for j in 0..m.cols() {
        let v = m[(target, j)].clone() + factor.clone() * m[(source, j)].clone();
        m[(target, j)] = v;
    }
}

fn negate_row<T: IntScalar>(m: &mut Matrix<T>, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

/// Computes the Hermite normal form together with its unimodular transform.
pub fn hermite<T: IntScalar>(m: &Matrix<T>) -> Hermite<T> {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = Matrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let x = h[(r, col)].clone();
            let y = h[(i, col)].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let xg = x / g.clone();
            let yg = -(y / g);
            combine_rows(&mut h, r, i, [&s, &t, &yg, &xg]);
            combine_rows(&mut u, r, i, [&s, &t, &yg, &xg]);
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, col)].clone();
        for i in 0..r {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                add_row_multiple(&mut h, i, r, &f);
                add_row_multiple(&mut u, i, r, &f);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Rank over the rationals.
pub fn rank<T: IntScalar>(m: &Matrix<T>) -> usize {
    hermite(m).rank()
}

/// A basis (as rows) of the integer lattice `{v : v·M = 0}`.
pub fn left_nullspace<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    let hf = hermite(m);
    let k = hf.rank();
    let rows: Vec<Vec<T>> = (k..m.rows()).map(|i| hf.u.row(i).to_vec()).collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.rows())
    } else {
        Matrix::from_rows(rows).expect("rows share the transform width")
    }
}

/// Exact inverse of a unimodular matrix.
pub fn unimodular_inverse<T: IntScalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let det = determinant(m)?;
    if !det.abs().is_one() {
        return Err(FabfError::NotUnimodular("matrix".into(), format!("{det:?}")));
    }
    // The Hermite form of a unimodular matrix is the identity, so U = M⁻¹.
    let hf = hermite(m);
    debug_assert!(hf.h.is_identity());
    Ok(hf.u)
}

/// True when the rows of `m` generate the whole lattice `Z^cols`.
pub fn rows_span_lattice<T: IntScalar>(m: &Matrix<T>) -> bool {
    let hf = hermite(m);
    hf.rank() == m.cols() && (0..m.cols()).all(|i| hf.h[(i, i)].is_one())
}
