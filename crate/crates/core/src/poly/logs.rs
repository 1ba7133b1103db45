//! Exponent candidates for `t^k ≡ p (mod g)` when `g` is irreducible and
//! not cyclotomic.
//!
//! Such a `g` has a root `λ` with `ρ = |λ| > 1`, and `λ^k = p(λ)` forces
//! `ρ^(k - deg p) ≤ ‖p‖₁`. A lower bound on `ρ` is certified from the exact
//! power sums `s_j = Σ λᵢ^j`: since `|s_j| ≤ deg(g)·ρ^j`, any `j` with
//! `|s_j| > deg(g)` gives `ρ^j ≥ |s_j| / deg(g) > 1`. The resulting bound on
//! `k` is an exact integer comparison; every `k` below it is then checked
//! exactly, so the returned set contains precisely the solutions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{is_cyclotomic, norm1};
use super::{factor, IntPoly};
use crate::error::{FabfError, Result};

/// Hard cap on the power-sum scan; reaching it would contradict Kronecker's
/// theorem and is reported as a defect.
const GROWTH_SCAN_LIMIT: usize = 200_000;

/// Power sums `s_1..=s_count` of the roots of a monic polynomial.
fn power_sums(g: &IntPoly, count: usize) -> Vec<BigInt> {
    let d = g.degree().unwrap_or(0);
    // g = t^d + c[d-1] t^{d-1} + … + c[0]
    let c: Vec<BigInt> = g.coeffs().to_vec();
    let mut s: Vec<BigInt> = vec![BigInt::from(d)];
    for k in 1..=count {
        let mut v = BigInt::zero();
        for i in 1..=(k - 1).min(d) {
            v -= &c[d - i] * &s[k - i];
        }
        if k <= d {
            v -= BigInt::from(k) * &c[d - k];
        }
        s.push(v);
    }
    s.remove(0);
    s
}

/// Smallest `j` with `base^j > target · d^j`, for `base > d ≥ 1`.
fn exponent_exceeding(base: &BigInt, d: &BigInt, target: &BigInt) -> u64 {
    let mut lhs = BigInt::one();
    let mut rhs = target.clone();
    let mut j = 0;
    while lhs <= rhs {
        lhs *= base;
        rhs *= d;
        j += 1;
    }
    j
}

/// Upper bound (exclusive) on solutions `k` of `t^k ≡ value (mod g)`.
pub(crate) fn exponent_bound(g: &IntPoly, value: &IntPoly) -> Result<u64> {
    let d = g.degree().unwrap_or(0);
    let db = BigInt::from(d);
    let e = value.degree().unwrap_or(0) as u64;
    let s_norm = norm1(value);
    let mut first = None;
    let mut best: Option<u64> = None;
    let mut scanned = 0;
    let mut chunk = 64;
    while scanned < GROWTH_SCAN_LIMIT {
        let sums = power_sums(g, scanned + chunk);
        for (idx, s) in sums.iter().enumerate().skip(scanned) {
            let k = idx + 1;
            if s.abs() > db {
                first.get_or_insert(k);
                let j = exponent_exceeding(&s.abs(), &db, &s_norm);
                let bound = e + k as u64 * j;
                best = Some(best.map_or(bound, |b: u64| b.min(bound)));
            }
            if first.is_some_and(|f| k >= 4 * f + 16) {
                return Ok(best.expect("set together with first"));
            }
        }
        scanned += chunk;
        chunk *= 2;
    }
    best.ok_or_else(|| FabfError::Defect("no growth certificate for a non-cyclotomic polynomial".into()))
}

/// Every `k ≥ 0` with `t^k ≡ value (mod lambda_poly)`.
///
/// `lambda_poly` must be monic, irreducible, not cyclotomic, with nonzero
/// constant term.
pub fn isolate_real_log_candidates(lambda_poly: &IntPoly, value_poly: &IntPoly) -> Result<Vec<u64>> {
    if lambda_poly.is_zero() {
        return Err(FabfError::ZeroPolynomial);
    }
    if !lambda_poly.is_monic() || lambda_poly.coeff(0).is_zero() {
        return Err(FabfError::Unsupported("expected a monic polynomial with nonzero constant term".into()));
    }
    if is_cyclotomic(lambda_poly).is_some() {
        return Err(FabfError::Unsupported("cyclotomic input".into()));
    }
    let fz = factor(lambda_poly)?;
    if fz.factors.len() != 1 || fz.factors[0].1 != 1 {
        return Err(FabfError::Unsupported("polynomial is reducible".into()));
    }
    let target = value_poly.rem_monic(lambda_poly);
    if target.is_zero() {
        return Ok(Vec::new());
    }
    let bound = exponent_bound(lambda_poly, &target)?;
    let mut out = Vec::new();
    let mut cur = IntPoly::one().rem_monic(lambda_poly);
    let t = IntPoly::t();
    for k in 0..bound {
        if cur == target {
            out.push(k);
        }
        cur = (&cur * &t).rem_monic(lambda_poly);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn power_of_two() {
        assert_eq!(isolate_real_log_candidates(&p(&[-2, 1]), &p(&[8])).unwrap(), vec![3]);
        assert_eq!(isolate_real_log_candidates(&p(&[-2, 1]), &p(&[3])).unwrap(), Vec::<u64>::new());
        assert_eq!(isolate_real_log_candidates(&p(&[-2, 1]), &p(&[1])).unwrap(), vec![0]);
    }

    #[test]
    fn zero_value_has_no_logs() {
        assert!(isolate_real_log_candidates(&p(&[-2, 1]), &IntPoly::zero()).unwrap().is_empty());
    }

    #[test]
    fn golden_ratio_unit() {
        // g = t^2 - t - 1, t^k = F_k t + F_{k-1}: t^5 ≡ 5t + 3
        assert_eq!(isolate_real_log_candidates(&p(&[-1, -1, 1]), &p(&[3, 5])).unwrap(), vec![5]);
        assert!(isolate_real_log_candidates(&p(&[-1, -1, 1]), &p(&[3, 4])).unwrap().is_empty());
    }

    #[test]
    fn negative_base() {
        // t + 2: λ = -2, λ^3 = -8
        assert_eq!(isolate_real_log_candidates(&p(&[2, 1]), &p(&[-8])).unwrap(), vec![3]);
    }

    #[test]
    fn rejects_cyclotomic_and_reducible() {
        assert!(isolate_real_log_candidates(&p(&[1, 0, 1]), &p(&[1])).is_err());
        assert!(isolate_real_log_candidates(&p(&[-4, 0, 1]), &p(&[1])).is_err());
    }

    #[test]
    fn power_sums_of_golden_polynomial() {
        // Lucas numbers: 1, 3, 4, 7, 11
        let s = power_sums(&p(&[-1, -1, 1]), 5);
        assert_eq!(s, [1, 3, 4, 7, 11].map(BigInt::from).to_vec());
    }
}
