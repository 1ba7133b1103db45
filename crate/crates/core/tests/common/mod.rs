#![allow(dead_code)]

use fabf::{Element, FreeEndo, Group, GroupData, IntMat, Matrix, TypeIHom, Word};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn bv(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn bm(rows: &[Vec<i64>]) -> IntMat {
    Matrix::from_rows(rows.iter().map(|r| bv(r)).collect()).unwrap()
}

pub fn word(l: &[i32]) -> Word {
    Word::from_letters(l.iter().copied())
}

// Small-integer matrix helpers kept separate from the library.

pub type M64 = Vec<Vec<i128>>;

pub fn det(m: &M64) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut s = 0;
    for j in 0..n {
        let minor: M64 =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        s += sign * m[0][j] * det(&minor);
    }
    s
}

pub fn mmul(a: &M64, b: &M64) -> M64 {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

pub fn ident(m: usize) -> M64 {
    (0..m).map(|i| (0..m).map(|j| i128::from(i == j)).collect()).collect()
}

/// Inverse of a determinant ±1 matrix through the adjugate.
pub fn adj_inverse(m: &M64) -> M64 {
    let n = m.len();
    let d = det(m);
    assert!(d == 1 || d == -1, "not unimodular");
    let mut inv = vec![vec![0i128; n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let minor: M64 =
                (0..n).filter(|&r| r != j).map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect()).collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            *slot = sign * det(&minor) * d;
        }
    }
    inv
}

pub fn vmul(v: &[i128], m: &M64) -> Vec<i128> {
    (0..m.first().map_or(v.len(), Vec::len)).map(|j| (0..v.len()).map(|i| v[i] * m[i][j]).sum()).collect()
}

pub fn to_big(m: &M64) -> IntMat {
    Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

pub fn from_big(m: &IntMat) -> M64 {
    m.row_vecs().iter().map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect()).collect()
}

pub fn random_unimodular(r: &mut Rng8, m: usize, bound: i64) -> M64 {
    loop {
        let cand: M64 = (0..m).map(|_| (0..m).map(|_| i128::from(r.gen_range(-bound..=bound))).collect()).collect();
        let d = det(&cand);
        if d == 1 || d == -1 {
            return cand;
        }
    }
}

pub fn signed_permutation(r: &mut Rng8, m: usize) -> M64 {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(r);
    let mut out = vec![vec![0i128; m]; m];
    for (i, &j) in perm.iter().enumerate() {
        out[i][j] = if r.gen_bool(0.5) { 1 } else { -1 };
    }
    out
}

pub fn group_from(action: &[M64]) -> Group {
    GroupData::new(action.iter().map(to_big).collect()).unwrap()
}

pub fn random_group(r: &mut Rng8, n: usize, m: usize) -> (Group, Vec<M64>) {
    let action: Vec<M64> =
        (0..n).map(|_| if r.gen_bool(0.25) { ident(m) } else { random_unimodular(r, m, 2) }).collect();
    (group_from(&action), action)
}

pub fn random_word(r: &mut Rng8, n: usize, max_len: usize) -> Word {
    let len = r.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = r.gen_range(1..=n as i32);
            if r.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::from_letters(letters)
}

pub fn random_vec(r: &mut Rng8, m: usize, bound: i64) -> Vec<i64> {
    (0..m).map(|_| r.gen_range(-bound..=bound)).collect()
}

pub fn random_element(r: &mut Rng8, g: &Group, max_len: usize, bound: i64) -> Element {
    let u = random_word(r, g.n(), max_len);
    Element::new(g, u, bv(&random_vec(r, g.m(), bound))).unwrap()
}

pub fn random_int_matrix(r: &mut Rng8, rows: usize, cols: usize, bound: i64) -> IntMat {
    bm(&(0..rows).map(|_| random_vec(r, cols, bound)).collect::<Vec<_>>())
}

/// Product of random elementary Nielsen moves.
pub fn random_nielsen(r: &mut Rng8, n: usize, depth: usize) -> FreeEndo {
    let mut images: Vec<Word> = (1..=n).map(Word::generator).collect();
    for _ in 0..depth {
        let i = r.gen_range(0..n);
        match r.gen_range(0..3) {
            0 if n > 1 => {
                let mut j = r.gen_range(0..n);
                while j == i {
                    j = r.gen_range(0..n);
                }
                let other = if r.gen_bool(0.5) { images[j].clone() } else { images[j].inverse() };
                images[i] = if r.gen_bool(0.5) { images[i].mul(&other) } else { other.mul(&images[i]) };
            }
            1 if n > 1 => {
                let j = (i + 1) % n;
                images.swap(i, j);
            }
            _ => images[i] = images[i].inverse(),
        }
    }
    FreeEndo::new(n, images).unwrap()
}

pub fn random_free_endo(r: &mut Rng8, n: usize, max_len: usize) -> FreeEndo {
    FreeEndo::new(n, (0..n).map(|_| random_word(r, n, max_len)).collect()).unwrap()
}

/// Verified type I endomorphism drawn from families that exist for every action.
pub fn random_type_i_endo(r: &mut Rng8, g: &Group) -> TypeIHom {
    let (n, m) = (g.n(), g.m());
    let p = random_int_matrix(r, n, m, 3);
    let trivial = g.action().iter().all(Matrix::is_identity);
    let choice = if trivial { r.gen_range(0..3) } else { r.gen_range(0..2) };
    let (phi, q) = match choice {
        0 => {
            // inner automorphism of F_n twisted by A_w
            let w = random_word(r, n, 3);
            let images = (1..=n).map(|i| w.inverse().mul(&Word::generator(i)).mul(&w)).collect();
            let scale = *[1i64, 1, -1, 2, 0].choose(r).unwrap();
            (FreeEndo::new(n, images).unwrap(), g.matrix_of_word(&w).unwrap().scale(&big(scale)))
        }
        1 => (random_free_endo(r, n, 3), Matrix::zeros(m, m)),
        _ => (random_free_endo(r, n, 3), random_int_matrix(r, m, m, 2)),
    };
    TypeIHom::new(g, g, phi, q, p).unwrap().verified().expect("generator family must verify")
}

/// Naive rewriting system for `F_n ⋉ Z^m`: `t^a x → x t^{aA_x}`, merge
/// adjacent `t`s, cancel `x x⁻¹`, drop `t^0`, until nothing changes.
pub struct Rewriter {
    pub fwd: Vec<M64>,
    pub inv: Vec<M64>,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    X(i32),
    T(Vec<i128>),
}

impl Rewriter {
    pub fn new(action: &[M64], m: usize) -> Self {
        Self { fwd: action.to_vec(), inv: action.iter().map(adj_inverse).collect(), m }
    }

    fn letter(&self, l: i32) -> &M64 {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.fwd[i]
        } else {
            &self.inv[i]
        }
    }

    pub fn tokens(e: &Element) -> Vec<Tok> {
        let mut t: Vec<Tok> = e.free_part().letters().iter().map(|&l| Tok::X(l)).collect();
        t.push(Tok::T(e.abelian_part().iter().map(|x| i128::try_from(x).unwrap()).collect()));
        t
    }

    pub fn inverse_tokens(toks: &[Tok]) -> Vec<Tok> {
        toks.iter()
            .rev()
            .map(|t| match t {
                Tok::X(l) => Tok::X(-l),
                Tok::T(a) => Tok::T(a.iter().map(|x| -x).collect()),
            })
            .collect()
    }

    pub fn normalize(&self, mut toks: Vec<Tok>) -> Vec<Tok> {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < toks.len() {
                if let Tok::T(a) = &toks[i] {
                    if a.iter().all(|&x| x == 0) {
                        toks.remove(i);
                        changed = true;
                        continue;
                    }
                }
                if i + 1 < toks.len() {
                    match (&toks[i], &toks[i + 1]) {
                        (Tok::T(a), Tok::X(l)) => {
                            let b = vmul(a, self.letter(*l));
                            toks[i] = Tok::X(*l);
                            toks[i + 1] = Tok::T(b);
                            changed = true;
                        }
                        (Tok::T(a), Tok::T(b)) => {
                            let s = a.iter().zip(b).map(|(x, y)| x + y).collect();
                            toks[i] = Tok::T(s);
                            toks.remove(i + 1);
                            changed = true;
                            continue;
                        }
                        (Tok::X(a), Tok::X(b)) if *a == -*b => {
                            toks.drain(i..i + 2);
                            i = i.saturating_sub(1);
                            changed = true;
                            continue;
                        }
                        _ => {}
                    }
                }
                i += 1;
            }
            if !changed {
                return toks;
            }
        }
    }

    pub fn render(&self, toks: &[Tok]) -> String {
        let mut syllables: Vec<(i32, i64)> = Vec::new();
        let mut t = vec![0i128; self.m];
        for tok in toks {
            match tok {
                Tok::X(l) => match syllables.last_mut() {
                    Some((g, e)) if *g == l.abs() && (*e > 0) == (*l > 0) => *e += i64::from(l.signum()),
                    _ => syllables.push((l.abs(), i64::from(l.signum()))),
                },
                Tok::T(a) => t = a.clone(),
            }
        }
        let letters: Vec<String> =
            syllables.iter().map(|&(g, e)| if e == 1 { format!("x{g}") } else { format!("x{g}^{e}") }).collect();
        let tv: Vec<String> = t.iter().map(ToString::to_string).collect();
        if letters.is_empty() {
            format!("t[{}]", tv.join(","))
        } else {
            format!("{} t[{}]", letters.join(" "), tv.join(","))
        }
    }
}

/// Exponents `k ≤ kmax` with `x Q^k = y`.
pub fn brute_orbit(x: &[BigInt], q: &IntMat, y: &[BigInt], kmax: u64) -> Vec<u64> {
    let mut cur = x.to_vec();
    let mut hits = Vec::new();
    for k in 0..=kmax {
        if cur == y {
            hits.push(k);
        }
        cur = q.left_apply(&cur);
    }
    hits
}
