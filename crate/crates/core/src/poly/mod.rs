//! Univariate polynomials in `t` over exact rings, lowest degree first.

pub mod cyclotomic;
pub mod factor;
pub mod logs;
mod modp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Field, Matrix, Scalar};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, is_cyclotomic, order_of_t_mod};
pub use factor::{factor, square_free_decomposition, Factorization};
pub use logs::isolate_real_log_candidates;

/// A polynomial with coefficients in `T`; the leading coefficient is
/// nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `f(M)` for a square matrix `M`.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let n = m.rows();
        self.coeffs.iter().rev().fold(Matrix::zeros(n, n), |acc, c| &(&acc * m) + &Matrix::identity(n).scale(c))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        let mut k = T::zero();
        for c in self.coeffs.iter().skip(1) {
            k = k + T::one();
            out.push(c.clone() * k.clone());
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Remainder modulo a monic divisor; exact over any ring.
    pub fn rem_monic(&self, m: &Self) -> Self {
        self.divrem_monic(m).1
    }

    pub fn divrem_monic(&self, m: &Self) -> (Self, Self) {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.degree().expect("monic divisor is nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dm];
        for i in (dm..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            q[i - dm] = c.clone();
            for (j, mc) in m.coeffs.iter().enumerate() {
                let v = r[i - dm + j].clone() - c.clone() * mc.clone();
                r[i - dm + j] = v;
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// `self^e mod m` for a monic modulus.
    pub fn pow_mod_monic(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem_monic(m);
        let mut acc = Self::one().rem_monic(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem_monic(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem_monic(m);
            }
        }
        acc
    }

    /// Substitutes `t + c` for `t`.
    pub fn shift(&self, c: &T) -> Self {
        let lin = Self::new(vec![c.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, k| &(&acc * &lin) + &Self::constant(k.clone()))
    }
}

impl<F: Field> Poly<F> {
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let inv = F::one() / d.lead();
        let monic = d.scale(&inv);
        let (q, r) = self.divrem_monic(&monic);
        (q.scale(&inv), r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(F::one() / self.lead()))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Exact quotient in `Z[t]` if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.to_rational().divrem(&d.to_rational());
        if !r.is_zero() {
            return None;
        }
        q.to_integer()
    }
}

impl RatPoly {
    /// The polynomial itself if all coefficients are integers.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    /// Scales by the least common denominator to a primitive integer polynomial.
    pub fn primitive_integer(&self) -> IntPoly {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        Poly::new(ints).primitive_part()
    }
}

impl<T: Scalar> std::ops::Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> std::ops::Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> std::ops::Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> std::ops::Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Minimal polynomial of an integer matrix, as a monic integer polynomial.
pub fn minpoly_of(m: &Matrix<BigInt>) -> IntPoly {
    let coeffs = crate::linalg::minimal_polynomial(&crate::linalg::to_rational(m));
    Poly::new(coeffs).to_integer().expect("minimal polynomial of an integer matrix is integral")
}

/// Characteristic polynomial `det(tI − M)` by Faddeev–LeVerrier.
pub fn charpoly_of(m: &Matrix<BigInt>) -> IntPoly {
    assert!(m.is_square());
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &Matrix::identity(n).scale(&c[n + 1 - k]);
        c[n - k] = -(m * &mk).trace() / BigInt::from(k);
    }
    Poly::new(c)
}

/// Result of [`poly_tools`], one variant per [`PolyMode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOutput {
    Poly(IntPoly),
    Factors(Factorization),
    SquareFree(Vec<(IntPoly, usize)>),
    Cyclotomic(Option<u64>),
    Order(Option<u64>),
}

/// What [`poly_tools`] should compute.
#[derive(Clone, Debug)]
pub enum PolyMode<'a> {
    MinpolyOf(&'a Matrix<BigInt>),
    Factor,
    SquareFree,
    IsCyclotomic,
    OrderOfTMod,
}

/// Single entry point bundling the polynomial utilities.
pub fn poly_tools(f: &IntPoly, mode: PolyMode<'_>) -> crate::Result<PolyOutput> {
    Ok(match mode {
        PolyMode::MinpolyOf(m) => {
            if !m.is_square() {
                return Err(crate::FabfError::NotSquare(m.rows(), m.cols()));
            }
            PolyOutput::Poly(minpoly_of(m))
        }
        PolyMode::Factor => PolyOutput::Factors(factor(f)?),
        PolyMode::SquareFree => PolyOutput::SquareFree(square_free_decomposition(f)?),
        PolyMode::IsCyclotomic => {
            if f.is_zero() {
                return Err(crate::FabfError::ZeroPolynomial);
            }
            PolyOutput::Cyclotomic(is_cyclotomic(f))
        }
        PolyMode::OrderOfTMod => PolyOutput::Order(order_of_t_mod(f)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arith() {
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(f.to_string(), "t^2 - 1");
        let g = IntPoly::from_i64(&[1, 1]);
        assert_eq!(f.exact_div(&g), Some(IntPoly::from_i64(&[-1, 1])));
        assert_eq!(IntPoly::from_i64(&[3, -2, 0, 1]).to_string(), "t^3 - 2t + 3");
    }

    #[test]
    fn monic_remainder_and_power() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(IntPoly::t().pow_mod_monic(3, &f), IntPoly::from_i64(&[0, -1]));
        assert_eq!(IntPoly::t().pow_mod_monic(4, &f), IntPoly::one());
    }

    #[test]
    fn minpoly_identity() {
        assert_eq!(minpoly_of(&Matrix::identity(2)), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn shift_matches_composition() {
        let f = IntPoly::from_i64(&[1, 1, 1]);
        // f(t+1) = t^2 + 3t + 3
        assert_eq!(f.shift(&BigInt::from(1)), IntPoly::from_i64(&[3, 3, 1]));
    }

    #[test]
    fn charpoly_small() {
        let m = Matrix::from_rows(vec![vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(1)]])
            .unwrap();
        assert_eq!(charpoly_of(&m), IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(charpoly_of(&Matrix::identity(3)), IntPoly::from_i64(&[-1, 3, -3, 1]));
    }
}
