//! LLL reduction of integer lattice bases, used to keep coordinate searches
//! over solution lattices short.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{dot, Matrix};

fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    for i in 0..k {
        let bi = to_q(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = if norms[j] == BigRational::zero() {
                BigRational::zero()
            } else {
                dot(&bi, &star[j]) / norms[j].clone()
            };
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x = x.clone() - mu[i][j].clone() * s.clone();
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (star, mu, norms)
}

fn round(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * two))
}

/// LLL-reduces the rows of a full-row-rank integer matrix (δ = 3/4).
pub fn lll_reduce(basis: &Matrix<BigInt>) -> Matrix<BigInt> {
    let mut b = basis.row_vecs();
    let k = b.len();
    if k <= 1 {
        return basis.clone();
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut i = 1;
    // Recomputing Gram-Schmidt each step is quadratic overhead but the
    // lattices here have dimension at most m².
    while i < k {
        for j in (0..i).rev() {
            let (_, mu, _) = gram_schmidt(&b);
            let r = round(&mu[i][j]);
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (_, mu, norms) = gram_schmidt(&b);
        let lhs = norms[i].clone();
        let rhs = (delta.clone() - mu[i][i - 1].clone() * mu[i][i - 1].clone()) * norms[i - 1].clone();
        if lhs >= rhs {
            i += 1;
        } else {
            b.swap(i, i - 1);
            i = (i - 1).max(1);
        }
    }
    // Prefer rows with a positive leading entry for deterministic output.
    for row in &mut b {
        if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Matrix::from_rows(b).expect("uniform rows")
}
