//! Factorization in `Z[t]`: square-free decomposition followed by
//! Zassenhaus (modular factorization, Hensel lifting, recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{factor_squarefree_monic, ModPoly};
use super::{IntPoly, Poly, RatPoly};
use crate::error::{FabfError, Result};
use crate::linalg::integer::ext_gcd;

/// `f = unit · ∏ factorᵢ^multiplicityᵢ` with primitive irreducible factors
/// of positive leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors.iter().fold(IntPoly::constant(self.unit.clone()), |acc, (g, e)| &acc * &g.pow(*e as u32))
    }
}

/// Square-free decomposition (Yun): primitive pairwise coprime `aᵢ` with
/// `f = ±content · ∏ aᵢ^i`. Constant factors are dropped.
pub fn square_free_decomposition(f: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if f.is_zero() {
        return Err(FabfError::ZeroPolynomial);
    }
    let fq: RatPoly = f.primitive_part().to_rational();
    if fq.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let d = fq.derivative();
    let b = fq.gcd(&d);
    let mut c = fq.divrem(&b).0;
    let mut w = &d.divrem(&b).0 - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&w);
        c = c.divrem(&a).0;
        w = &w.divrem(&a).0 - &c.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_integer(), i));
        }
        i += 1;
    }
    Ok(out)
}

/// Complete factorization over the integers.
pub fn factor(f: &IntPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(FabfError::ZeroPolynomial);
    }
    let prim = f.primitive_part();
    let mut unit = f.content();
    if f.lead().is_negative() {
        unit = -unit;
    }
    let mut factors = Vec::new();
    for (a, e) in square_free_decomposition(&prim)? {
        for g in factor_squarefree(&a) {
            factors.push((g, e));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { unit, factors })
}

/// Irreducible factors of a primitive square-free polynomial of positive degree.
pub(crate) fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return if deg == 1 { vec![f] } else { Vec::new() };
    }
    // Pull out the zero root so the modular image keeps a nonzero constant.
    if f.coeff(0).is_zero() {
        let rest = f.exact_div(&IntPoly::t()).expect("t divides f");
        let mut out = vec![IntPoly::t()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let Some((p, modular)) = choose_prime(&f) else {
        return vec![f];
    };
    if modular.len() == 1 {
        return vec![f];
    }
    let bound = coefficient_bound(&f);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);
    recombine(f, lifted, &pk)
}

fn to_mod(f: &IntPoly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    ModPoly::new(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p")).collect())
}

fn from_mod(f: &ModPoly) -> IntPoly {
    Poly::new(f.c.iter().map(|&c| BigInt::from(c)).collect())
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Picks a good prime (f stays square-free with the same degree) that gives
/// the fewest modular factors among the first few candidates.
fn choose_prime(f: &IntPoly) -> Option<(u64, Vec<ModPoly>)> {
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for &p in &PRIMES {
        let fp = to_mod(f, p);
        if fp.degree() != f.degree()? || fp.is_zero() {
            continue;
        }
        if fp.gcd(&fp.derivative(p), p).degree() != 0 {
            continue;
        }
        let fs = factor_squarefree_monic(&fp.monic(p), p);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

/// Bound `2·|lc|·2^deg·‖f‖₁` on the coefficients of `lc · g` for any factor `g`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let norm1: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    let deg = f.degree().unwrap_or(0);
    BigInt::from(2) * f.lead().abs() * (BigInt::one() << deg) * norm1
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let (g, s, _) = ext_gcd(&a.mod_floor(m), m);
    debug_assert!(g.is_one());
    s.mod_floor(m)
}

/// Division with remainder by a monic divisor, reduced mod `m`.
fn divrem_mod(a: &IntPoly, d: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let (q, r) = a.divrem_monic(d);
    (reduce(&q, m), reduce(&r, m))
}

/// Lifts `f ≡ lc(f)·∏ gᵢ (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &IntPoly, factors: &[ModPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = inv_mod_big(&f.lead(), &pk);
        return vec![reduce(&f.scale(&inv), &pk)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = f.lead().mod_floor(&BigInt::from(p)).to_u64().expect("below p");
    let g0 = left.iter().fold(ModPoly::new(vec![lc_p]), |acc, g| acc.mul(g, p));
    let h0 = right.iter().fold(ModPoly::one(), |acc, g| acc.mul(g, p));
    let (one, s0, t0) = g0.ext_gcd(&h0, p);
    debug_assert_eq!(one, ModPoly::one());

    let mut g = from_mod(&g0);
    let mut h = from_mod(&h0);
    let mut s = from_mod(&s0);
    let mut t = from_mod(&t0);
    let mut m = BigInt::from(p);
    while m < pk {
        let m2 = &m * &m;
        let e = reduce(&(f - &(&g * &h)), &m2);
        let (q, r) = divrem_mod(&(&s * &e), &h, &m2);
        let g_new = reduce(&(&(&g + &(&t * &e)) + &(&q * &g)), &m2);
        let h_new = reduce(&(&h + &r), &m2);
        let b = reduce(&(&(&(&s * &g_new) + &(&t * &h_new)) - &IntPoly::one()), &m2);
        let (c, d) = divrem_mod(&(&s * &b), &h_new, &m2);
        s = reduce(&(&s - &d), &m2);
        t = reduce(&(&(&t - &(&t * &b)) - &(&c * &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    let g = reduce(&g, &pk);
    let h = reduce(&h, &pk);
    let mut out = hensel_lift(&g, left, p, k);
    out.extend(hensel_lift(&h, right, p, k));
    out
}

fn recombine(mut f: IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let lc = f.lead();
            let prod = subset.iter().fold(IntPoly::constant(lc.clone()), |acc, &i| reduce(&(&acc * &lifted[i]), pk));
            let cand = Poly::new(prod.coeffs().iter().map(|c| sym_mod(c, pk)).collect::<Vec<_>>()).primitive_part();
            if let Some(q) = f.exact_div(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q.primitive_part();
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        found.push(f);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
