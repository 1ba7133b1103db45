//! Exact decision of the matrix orbit problem `∃k ≥ 0: xQ^k = y`, its affine
//! variant, and fixed lattices of matrix tuples.
//!
//! The cyclic subspace of `x` reduces the question to `t^k ≡ p mod f` for the
//! annihilator `f` of `x`. Factors of `f` split into powers of `t`, cyclotomic
//! factors (periodic behaviour, solved through binomial expansion of
//! `(1 + (t^L − 1))^s`), and non-cyclotomic factors (at most one solution,
//! found by [`isolate_real_log_candidates`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{FabfError, Result};
use crate::linalg::{hermite, krylov, left_nullspace, solve_left, to_rational, vec_add, vec_to_rational, Matrix};
use crate::poly::{factor, is_cyclotomic, isolate_real_log_candidates, IntPoly};
use crate::{IntMat, IntVec};

/// `∅` or the progression `k0 + pN`; `p = 0` is the singleton `{k0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogSet {
    Empty,
    AP { k0: u64, p: u64 },
}

impl LogSet {
    pub fn contains(&self, k: u64) -> bool {
        match *self {
            LogSet::Empty => false,
            LogSet::AP { k0, p } => k >= k0 && if p == 0 { k == k0 } else { (k - k0).is_multiple_of(p) },
        }
    }

    pub fn min(&self) -> Option<u64> {
        match *self {
            LogSet::Empty => None,
            LogSet::AP { k0, .. } => Some(k0),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LogSet::Empty)
    }

    /// Builds the set from its two smallest members, if any.
    fn from_smallest(first: Option<u64>, second: Option<u64>) -> Self {
        match (first, second) {
            (None, _) => LogSet::Empty,
            (Some(k0), None) => LogSet::AP { k0, p: 0 },
            (Some(k0), Some(k1)) => LogSet::AP { k0, p: k1 - k0 },
        }
    }
}

impl fmt::Display for LogSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogSet::Empty => write!(f, "EMPTY"),
            LogSet::AP { k0, p } => write!(f, "AP k0={k0} p={p}"),
        }
    }
}

/// `x ↦ xM + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    m: IntMat,
    b: IntVec,
}

impl AffineMap {
    pub fn new(m: IntMat, b: IntVec) -> Result<Self> {
        if !m.is_square() {
            return Err(FabfError::NotSquare(m.rows(), m.cols()));
        }
        if b.len() != m.rows() {
            return Err(FabfError::Dimension(format!(
                "translation has length {}, matrix is {}x{}",
                b.len(),
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { m, b })
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.m
    }

    pub fn translation(&self) -> &IntVec {
        &self.b
    }

    pub fn apply(&self, x: &[BigInt]) -> IntVec {
        vec_add(&self.m.left_apply(x), &self.b)
    }

    /// `[[M, 0], [b, 1]]`, acting on `(x, 1)`.
    pub fn homogenize(&self) -> IntMat {
        let d = self.dim();
        let mut rows: Vec<IntVec> = (0..d)
            .map(|i| {
                let mut r = self.m.row(i).to_vec();
                r.push(BigInt::zero());
                r
            })
            .collect();
        let mut last = self.b.clone();
        last.push(BigInt::one());
        rows.push(last);
        Matrix::from_rows(rows).expect("uniform rows")
    }
}

fn check_dims(x: &[BigInt], q: &IntMat, y: &[BigInt]) -> Result<()> {
    if !q.is_square() {
        return Err(FabfError::NotSquare(q.rows(), q.cols()));
    }
    if x.len() != q.rows() || y.len() != q.rows() {
        return Err(FabfError::Dimension(format!(
            "vectors of length {} and {} against a {}x{} matrix",
            x.len(),
            y.len(),
            q.rows(),
            q.cols()
        )));
    }
    Ok(())
}

/// The complete set `{k ≥ 0 : xQ^k = y}`.
pub fn matrix_orbit(x: &[BigInt], q: &IntMat, y: &[BigInt]) -> Result<LogSet> {
    check_dims(x, q, y)?;
    if x.iter().all(Zero::is_zero) {
        return Ok(if y.iter().all(Zero::is_zero) { LogSet::AP { k0: 0, p: 1 } } else { LogSet::Empty });
    }
    let kr = krylov(&vec_to_rational(x), &to_rational(q));
    let Some(coords) = solve_left(&kr.basis, &vec_to_rational(y)) else {
        return Ok(LogSet::Empty);
    };
    // t^k mod f has integer coefficients, so non-integral coordinates rule y out
    if !coords.iter().all(BigRational::is_integer) {
        return Ok(LogSet::Empty);
    }
    let p = IntPoly::new(coords.iter().map(BigRational::to_integer).collect());
    let f = IntPoly::new(
        kr.annihilator
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(FabfError::Defect("non-integral annihilator".into()))
                }
            })
            .collect::<Result<_>>()?,
    );
    let result = poly_orbit(&f, &p)?;
    certify(x, q, y, result)?;
    Ok(result)
}

/// Re-checks membership of the reported members and minimality of `k0`.
fn certify(x: &[BigInt], q: &IntMat, y: &[BigInt], set: LogSet) -> Result<()> {
    const SCAN: u64 = 64;
    let hit = |k: u64| q.pow(k).left_apply(x) == y;
    let defect = || Err(FabfError::Defect(format!("orbit answer {set} failed re-verification")));
    match set {
        LogSet::Empty => {
            let mut cur = x.to_vec();
            for _ in 0..SCAN {
                if cur == y {
                    return defect();
                }
                cur = q.left_apply(&cur);
            }
        }
        LogSet::AP { k0, p } => {
            if !hit(k0) || (p > 0 && !hit(k0 + p)) {
                return defect();
            }
            let mut cur = x.to_vec();
            for _ in 0..k0.min(SCAN) {
                if cur == y {
                    return defect();
                }
                cur = q.left_apply(&cur);
            }
        }
    }
    Ok(())
}

/// `{k ≥ 0 : x·Θ^k = y}` via the homogenized matrix.
pub fn affine_orbit(x: &[BigInt], theta: &AffineMap, y: &[BigInt]) -> Result<LogSet> {
    if x.len() != theta.dim() || y.len() != theta.dim() {
        return Err(FabfError::Dimension(format!(
            "vectors of length {} and {} against an affine map on Z^{}",
            x.len(),
            y.len(),
            theta.dim()
        )));
    }
    let mut xh = x.to_vec();
    xh.push(BigInt::one());
    let mut yh = y.to_vec();
    yh.push(BigInt::one());
    matrix_orbit(&xh, &theta.homogenize(), &yh)
}

/// Solutions of `t^k ≡ p mod f` with `k ≥ 0`, for monic `f` and `deg p < deg f`.
pub fn poly_orbit(f: &IntPoly, p: &IntPoly) -> Result<LogSet> {
    let Some(deg) = f.degree() else {
        return Err(FabfError::ZeroPolynomial);
    };
    if !f.is_monic() {
        return Err(FabfError::Unsupported("modulus must be monic".into()));
    }
    if !p.is_zero() && p.degree().unwrap_or(0) >= deg {
        return Err(FabfError::Unsupported("residue must have degree below the modulus".into()));
    }
    if deg == 0 {
        return Ok(LogSet::AP { k0: 0, p: 1 });
    }
    let t = IntPoly::t();
    let holds = |k: u64| t.pow_mod_monic(k, f) == *p;

    // f = t^e0 · h with h(0) ≠ 0
    let e0 = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let h = IntPoly::new(f.coeffs()[e0..].to_vec());
    let mut found: Vec<u64> = (0..e0 as u64).filter(|&k| holds(k)).collect();
    // for k ≥ e0 the t^e0 component forces p ≡ 0 mod t^e0
    let tail_ok = p.coeffs().iter().take(e0).all(Zero::is_zero);
    let e0 = e0 as u64;
    if !tail_ok {
        return Ok(LogSet::from_smallest(found.first().copied(), found.get(1).copied()));
    }
    let ph = p.rem_monic(&h);

    if h.degree() == Some(0) {
        // every k ≥ e0 works
        found.extend([e0, e0 + 1]);
        found.sort_unstable();
        found.dedup();
        return Ok(LogSet::from_smallest(found.first().copied(), found.get(1).copied()));
    }

    let fz = factor(&h)?;
    if let Some((g, _)) = fz.factors.iter().find(|(g, _)| is_cyclotomic(g).is_none()) {
        // t has infinite order modulo g: at most one solution overall
        for k in isolate_real_log_candidates(g, &ph.rem_monic(g))? {
            if k >= e0 && holds(k) {
                found.push(k);
            }
        }
        found.sort_unstable();
        found.dedup();
        return match found.len() {
            0 => Ok(LogSet::Empty),
            1 => Ok(LogSet::AP { k0: found[0], p: 0 }),
            _ => Err(FabfError::Defect("several logarithms modulo a non-cyclotomic factor".into())),
        };
    }

    // all factors cyclotomic: t^L = 1 + u with u nilpotent of index ≤ E modulo h
    let mut l = 1u64;
    let mut e_max = 1usize;
    for (g, e) in &fz.factors {
        l = l.lcm(&is_cyclotomic(g).expect("checked cyclotomic"));
        e_max = e_max.max(*e);
    }
    let u = (&t.pow_mod_monic(l, &h) - &IntPoly::one()).rem_monic(&h);
    let mut u_pows = vec![IntPoly::one()];
    for j in 1..e_max {
        u_pows.push((&u_pows[j - 1] * &u).rem_monic(&h));
    }
    let dh = h.degree().expect("nonconstant");
    let mut members: Vec<u64> = found;
    let mut tr = IntPoly::one();
    for r in 0..l {
        // coordinates of Σ_j C(s, j) t^r u^j − p as polynomials in s
        let terms: Vec<IntPoly> = u_pows.iter().map(|uj| (&tr * uj).rem_monic(&h)).collect();
        let s_min = if r >= e0 { 0 } else { (e0 - r).div_ceil(l) };
        match solve_binomial_system(&terms, &ph, dh)? {
            SSolutions::All => {
                members.push(r + l * s_min);
                members.push(r + l * (s_min + 1));
            }
            SSolutions::Finite(ss) => {
                members.extend(ss.into_iter().filter(|&s| s >= s_min).map(|s| r + l * s).filter(|&k| holds(k)));
            }
        }
        tr = (&tr * &t).rem_monic(&h);
    }
    members.sort_unstable();
    members.dedup();
    let set = LogSet::from_smallest(members.first().copied(), members.get(1).copied());
    if let LogSet::AP { k0, p: per } = set {
        if !holds(k0) || (per > 0 && !holds(k0 + per)) {
            return Err(FabfError::Defect("cyclotomic branch produced a non-solution".into()));
        }
    }
    Ok(set)
}

enum SSolutions {
    All,
    Finite(Vec<u64>),
}

/// Nonnegative integers `s` with `Σ_j C(s, j) terms_j = target` coordinatewise.
fn solve_binomial_system(terms: &[IntPoly], target: &IntPoly, dim: usize) -> Result<SSolutions> {
    let e = terms.len();
    // (E−1)!·C(s, j) = ((E−1)!/j!) · s(s−1)…(s−j+1)
    let fact: Vec<BigInt> = (0..e)
        .scan(BigInt::one(), |acc, j| {
            if j > 0 {
                *acc *= BigInt::from(j);
            }
            Some(acc.clone())
        })
        .collect();
    let scale = fact[e - 1].clone();
    let mut falling = vec![IntPoly::one()];
    for j in 1..e {
        let lin = IntPoly::new(vec![-BigInt::from(j as u64 - 1), BigInt::one()]);
        falling.push(&falling[j - 1] * &lin);
    }
    let mut candidate_set: Option<Vec<u64>> = None;
    for c in 0..dim {
        let mut poly = IntPoly::constant(-(target.coeff(c) * &scale));
        for j in 0..e {
            let w = terms[j].coeff(c) * (&scale / &fact[j]);
            poly = &poly + &falling[j].scale(&w);
        }
        if poly.is_zero() {
            continue;
        }
        let roots = nonnegative_integer_roots(&poly)?;
        candidate_set = Some(match candidate_set {
            None => roots,
            Some(prev) => prev.into_iter().filter(|s| roots.contains(s)).collect(),
        });
    }
    Ok(match candidate_set {
        None => SSolutions::All,
        Some(v) => SSolutions::Finite(v),
    })
}

fn nonnegative_integer_roots(poly: &IntPoly) -> Result<Vec<u64>> {
    let mut roots = Vec::new();
    for (g, _) in factor(poly)?.factors {
        if g.degree() == Some(1) {
            let (b, a) = (g.coeff(0), g.coeff(1));
            if (&b % &a).is_zero() {
                let s = -(b / a);
                if !s.is_negative() {
                    if let Some(s) = s.to_u64() {
                        roots.push(s);
                    }
                }
            }
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

/// Basis of `{r : r A_i^T = r for all i}` in Hermite form.
pub fn fixed_space(tuple: &[IntMat]) -> Result<IntMat> {
    let Some(first) = tuple.first() else {
        return Err(FabfError::Dimension("empty matrix tuple".into()));
    };
    let m = first.rows();
    let mut stacked: Option<IntMat> = None;
    for a in tuple {
        if !a.is_square() || a.rows() != m {
            return Err(FabfError::Dimension(format!("expected {m}x{m} matrices, found {}x{}", a.rows(), a.cols())));
        }
        let block = &a.transpose() - &Matrix::identity(m);
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.hstack(&block)?,
        });
    }
    let ns = left_nullspace(&stacked.expect("nonempty tuple"));
    if ns.rows() == 0 {
        return Ok(ns);
    }
    let hf = hermite(&ns);
    let rows: Vec<IntVec> = (0..hf.rank()).map(|i| hf.h.row(i).to_vec()).collect();
    Matrix::from_rows(rows)
}
