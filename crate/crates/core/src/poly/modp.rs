//! Dense polynomials over a prime field `F_p` with `p < 2^31`, used by the
//! modular stage of integer factorization.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    pub c: Vec<u64>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl ModPoly {
    pub fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { c }
    }

    pub fn one() -> Self {
        Self { c: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p).collect())
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: u64, p: u64) -> Self {
        Self::new(self.c.iter().map(|a| a * s % p).collect())
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), p), p)
    }

    pub fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero());
        let dd = d.degree();
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i] * inv % p;
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, dc) in d.c.iter().enumerate() {
                r[i - dd + j] = (r[i - dd + j] + p - c * dc % p) % p;
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self, p: u64) -> Self {
        self.divrem(d, p).1
    }

    pub fn gcd(&self, o: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn ext_gcd(&self, o: &Self, p: u64) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::new(vec![]));
        let (mut t0, mut t1) = (Self::new(vec![]), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1, p), p);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1, p), p);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = inv_mod(r0.lead(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    pub fn derivative(&self, p: u64) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| (i as u64 % p) * a % p).collect())
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self, p: u64) -> Self {
        let mut base = self.rem(m, p);
        let mut acc = Self::one().rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(m, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p).rem(m, p);
            }
        }
        acc
    }
}

/// Small deterministic generator for the randomized splitting step.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factors a monic square-free polynomial over `F_p` (p odd) into monic
/// irreducibles: distinct-degree then equal-degree (Cantor–Zassenhaus).
pub(crate) fn factor_squarefree_monic(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let x = ModPoly::new(vec![0, 1]);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xp = x.clone();
    let mut d = 0usize;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        xp = xp.pow_mod(p as u128, &rest, p);
        let g = rest.gcd(&xp.sub(&x, p), p);
        if g.degree() > 0 {
            equal_degree(&g, d, p, &mut out);
            rest = rest.divrem(&g, p).0;
            xp = xp.rem(&rest, p);
        }
    }
    if rest.degree() > 0 {
        out.push(rest.monic(p));
    }
    out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    out
}

fn equal_degree(f: &ModPoly, d: usize, p: u64, out: &mut Vec<ModPoly>) {
    if f.degree() == d {
        out.push(f.monic(p));
        return;
    }
    let mut rng = XorShift(0x9E37_79B9_7F4A_7C15 ^ (f.c.len() as u64) ^ p);
    let exp = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let a = ModPoly::new((0..f.degree()).map(|_| rng.next() % p).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = a.pow_mod(exp, f, p).sub(&ModPoly::one(), p);
        let g = f.gcd(&b, p);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g, p).0;
            equal_degree(&g, d, p, out);
            equal_degree(&h, d, p, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_into_linear_factors() {
        // t^2 - 1 over F_7
        let f = ModPoly::new(vec![6, 0, 1]);
        let fs = factor_squarefree_monic(&f, 7);
        assert_eq!(fs, vec![ModPoly::new(vec![1, 1]), ModPoly::new(vec![6, 1])]);
    }

    #[test]
    fn keeps_irreducible_quadratic() {
        // t^2 + 1 is irreducible over F_3
        let f = ModPoly::new(vec![1, 0, 1]);
        assert_eq!(factor_squarefree_monic(&f, 3), vec![f]);
    }

    #[test]
    fn product_of_factors_recovers_input() {
        // (t^2+1)(t^3+t+1)(t-3) over F_11, square-free
        let a = ModPoly::new(vec![1, 0, 1]);
        let b = ModPoly::new(vec![1, 1, 0, 1]);
        let c = ModPoly::new(vec![8, 1]);
        let f = a.mul(&b, 11).mul(&c, 11);
        let fs = factor_squarefree_monic(&f, 11);
        let prod = fs.iter().fold(ModPoly::one(), |acc, g| acc.mul(g, 11));
        assert_eq!(prod, f);
    }
}
