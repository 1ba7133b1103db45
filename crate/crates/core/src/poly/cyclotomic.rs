//! Cyclotomic polynomials, recognition, and multiplicative order of `t`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{factor, IntPoly, RatPoly};
use crate::error::{FabfError, Result};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Φ_n` from `t^n - 1 = ∏_{d | n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut f = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.exact_div(&cyclotomic_polynomial(d)).expect("Φ_d divides t^n - 1");
        }
    }
    f
}

/// `Some(d)` when `±f` equals `Φ_d`.
pub fn is_cyclotomic(f: &IntPoly) -> Option<u64> {
    let deg = f.degree()? as u64;
    if deg == 0 {
        return None;
    }
    let g = if f.lead().is_negative() { -f } else { f.clone() };
    if !g.is_monic() {
        return None;
    }
    // φ(d) ≥ sqrt(d/2), so every candidate d satisfies d ≤ 2·deg².
    (1..=2 * deg * deg + 2).filter(|&d| euler_phi(d) == deg).find(|&d| cyclotomic_polynomial(d) == g)
}

/// Multiplicative order of `t` in `Q[t]/(f)`; `None` when infinite.
pub fn order_of_t_mod(f: &IntPoly) -> Result<Option<u64>> {
    if f.is_zero() {
        return Err(FabfError::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() {
        return Err(FabfError::Unsupported("f(0) = 0: t is not a unit".into()));
    }
    if f.degree() == Some(0) {
        return Ok(Some(1));
    }
    let fz = factor(f)?;
    let mut order = 1u64;
    for (g, e) in &fz.factors {
        if *e > 1 {
            return Ok(None);
        }
        match is_cyclotomic(g) {
            Some(d) => order = order.lcm(&d),
            None => return Ok(None),
        }
    }
    let fq: RatPoly = f.to_rational().make_monic();
    debug_assert!(RatPoly::t().pow_mod_monic(order, &fq) == RatPoly::one());
    Ok(Some(order))
}

/// Sum of absolute values of the coefficients.
pub(crate) fn norm1(f: &IntPoly) -> BigInt {
    f.coeffs().iter().map(|c| c.abs()).fold(BigInt::zero(), |a, b| a + b)
}
