//! Reduced words in a free group and endomorphisms given by generator images.
//!
//! A letter is a nonzero `i32`: `i` stands for `x_i` and `-i` for `x_i⁻¹`.
//! Words are freely reduced on construction, so equality of values is
//! equality of group elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{FabfError, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The generator `x_i` (1-based).
    pub fn generator(i: usize) -> Self {
        Self { letters: vec![i as i32] }
    }

    /// Freely reduces an arbitrary letter sequence.
    ///
    /// Panics on a zero letter.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `w⁻¹ · self · w`
    pub fn conj(&self, w: &Word) -> Word {
        w.inverse().mul(self).mul(w)
    }

    /// `[self, w] = self⁻¹ w⁻¹ self w`
    pub fn commutator(&self, w: &Word) -> Word {
        self.inverse().mul(&w.inverse()).mul(self).mul(w)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (core, conj) = base.cyclic_reduce();
        // u = c · core · c⁻¹, so u^k = c · core^k · c⁻¹ without cancellation inside core^k
        let mut letters = conj.letters.clone();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conj.inverse().letters);
        Word::from_letters(letters)
    }

    /// Splits `self = c · core · c⁻¹` with `core` cyclically reduced; returns
    /// `(core, c)`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut i = 0;
        while i < l.len() / 2 && l[i] == -l[l.len() - 1 - i] {
            i += 1;
        }
        (Word { letters: l[i..l.len() - i].to_vec() }, Word { letters: l[..i].to_vec() })
    }

    /// Letters `i..=j`, 1-based.
    pub fn subword(&self, i: usize, j: usize) -> Result<Word> {
        if i == 0 || i > j || j > self.len() {
            return Err(FabfError::OutOfRange(format!("subword({i},{j}) of a word of length {}", self.len())));
        }
        Ok(Word { letters: self.letters[i - 1..j].to_vec() })
    }

    /// Exponent-sum vector in `Z^n`.
    pub fn abelianize(&self, n: usize) -> Result<Vec<BigInt>> {
        if self.max_generator() > n {
            return Err(FabfError::OutOfRange(format!("letter x{} in rank {n}", self.max_generator())));
        }
        let mut v = vec![BigInt::zero(); n];
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            v[k] += l.signum();
        }
        Ok(v)
    }

    /// `(v, r)` with `self = v^r`, `v` not a proper power and `r > 0`;
    /// `(1, 0)` for the identity.
    pub fn primitive_root(&self) -> (Word, u64) {
        if self.is_identity() {
            return (Word::identity(), 0);
        }
        let (core, c) = self.cyclic_reduce();
        let n = core.len();
        let period = (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (d..n).all(|i| core.letters[i] == core.letters[i - d]))
            .expect("n divides n");
        let root = Word { letters: core.letters[..period].to_vec() };
        (root.conj(&c.inverse()), (n / period) as u64)
    }

    /// Substitutes `images[i-1]` for each `x_i`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut letters = Vec::new();
        for &l in &self.letters {
            let img = images
                .get(l.unsigned_abs() as usize - 1)
                .ok_or_else(|| FabfError::OutOfRange(format!("letter x{} has no image", l.abs())))?;
            if l > 0 {
                letters.extend_from_slice(&img.letters);
            } else {
                letters.extend(img.letters.iter().rev().map(|x| -x));
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Formats the word with letter prefix `x` or `y`.
    pub fn display_with(&self, prefix: char) -> String {
        if self.is_identity() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.signum() as i64;
            if e == 1 {
                parts.push(format!("{prefix}{}", l.abs()));
            } else {
                parts.push(format!("{prefix}{}^{e}", l.abs()));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// `(v, r)` with every `u_j = v^{r_j}` and `v` not a proper power, or
/// `None` when some pair fails to commute. All-trivial input gives `v = 1`.
pub fn common_root(words: &[Word]) -> Option<(Word, Vec<i64>)> {
    let Some(first) = words.iter().find(|w| !w.is_identity()) else {
        return Some((Word::identity(), vec![0; words.len()]));
    };
    let (v, _) = first.primitive_root();
    let vinv = v.inverse();
    let mut r = Vec::with_capacity(words.len());
    for w in words {
        let (root, k) = w.primitive_root();
        let k = k as i64;
        if k == 0 {
            r.push(0);
        } else if root == v {
            r.push(k);
        } else if root == vinv {
            r.push(-k);
        } else {
            return None;
        }
    }
    Some((v, r))
}

/// Converts an arbitrary-precision exponent for use with [`Word::pow`].
pub fn small_exponent(e: &BigInt) -> Result<i64> {
    e.to_i64().ok_or_else(|| FabfError::Unsupported(format!("exponent {e} too large")))
}

/// Operations bundled by [`word_arith`].
#[derive(Clone, Debug)]
pub enum WordOp<'a> {
    Mul(&'a Word),
    Inv,
    Conj(&'a Word),
    CycReduce,
    Subword(usize, usize),
    Abelianize(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordOutput {
    Word(Word),
    Vector(Vec<BigInt>),
}

/// Single entry point for the word operations.
pub fn word_arith(u: &Word, op: WordOp<'_>) -> Result<WordOutput> {
    Ok(match op {
        WordOp::Mul(w) => WordOutput::Word(u.mul(w)),
        WordOp::Inv => WordOutput::Word(u.inverse()),
        WordOp::Conj(w) => WordOutput::Word(u.conj(w)),
        WordOp::CycReduce => WordOutput::Word(u.cyclic_reduce().0),
        WordOp::Subword(i, j) => WordOutput::Word(u.subword(i, j)?),
        WordOp::Abelianize(n) => WordOutput::Vector(u.abelianize(n)?),
    })
}

/// A homomorphism `F_n → F_{n′}` given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeEndo {
    target_rank: usize,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(target_rank: usize, images: Vec<Word>) -> Result<Self> {
        if let Some(w) = images.iter().find(|w| w.max_generator() > target_rank) {
            return Err(FabfError::RankMismatch(format!("image {w} exceeds rank {target_rank}")));
        }
        Ok(Self { target_rank, images })
    }

    pub fn identity(n: usize) -> Self {
        Self { target_rank: n, images: (1..=n).map(Word::generator).collect() }
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// `x_i φ`, 1-based.
    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn is_endo(&self) -> bool {
        self.source_rank() == self.target_rank
    }

    pub fn apply(&self, u: &Word) -> Result<Word> {
        if u.max_generator() > self.source_rank() {
            return Err(FabfError::RankMismatch(format!("{u} is not in F_{}", self.source_rank())));
        }
        u.substitute(&self.images)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo> {
        if self.target_rank != other.source_rank() {
            return Err(FabfError::RankMismatch(format!(
                "cannot compose F_{} -> F_{} with F_{} -> F_{}",
                self.source_rank(),
                self.target_rank,
                other.source_rank(),
                other.target_rank
            )));
        }
        let images = self.images.iter().map(|w| other.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(FreeEndo { target_rank: other.target_rank, images })
    }

    /// `u φ^k`.
    pub fn apply_iter(&self, u: &Word, k: u64) -> Result<Word> {
        let mut w = u.clone();
        for _ in 0..k {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// Abelianization matrix: row `i` is the exponent-sum vector of `x_i φ`.
    pub fn abelian_matrix(&self) -> crate::IntMat {
        let rows = self
            .images
            .iter()
            .map(|w| w.abelianize(self.target_rank).expect("images checked at construction"))
            .collect();
        crate::Matrix::from_rows(rows).unwrap_or_else(|_| crate::Matrix::zeros(0, self.target_rank))
    }
}

impl fmt::Display for FreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {w}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    #[test]
    fn reduction_on_construction() {
        assert!(w(&[1, -1]).is_identity());
        assert_eq!(w(&[1, 2, -2, 1]), w(&[1, 1]));
        assert_eq!(w(&[1]).mul(&w(&[-1])), Word::identity());
    }

    #[test]
    fn subword_and_abelianize() {
        let u = w(&[1, -2, 1]);
        assert_eq!(u.subword(2, 3).unwrap(), w(&[-2, 1]));
        assert!(u.subword(2, 4).is_err());
        assert!(u.subword(0, 1).is_err());
        assert_eq!(u.abelianize(2).unwrap(), vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w(&[1, 2, 1, 2]).primitive_root(), (w(&[1, 2]), 2));
        assert_eq!(w(&[1]).primitive_root(), (w(&[1]), 1));
        assert_eq!(Word::identity().primitive_root(), (Word::identity(), 0));
        // conjugated power: x2 x1^3 x2⁻¹
        assert_eq!(w(&[2, 1, 1, 1, -2]).primitive_root(), (w(&[2, 1, -2]), 3));
    }

    #[test]
    fn common_roots() {
        let (v, r) = common_root(&[w(&[1, 1]), w(&[-1])]).unwrap();
        assert_eq!(v, w(&[1]));
        assert_eq!(r, vec![2, -1]);
        assert!(common_root(&[w(&[1]), w(&[2])]).is_none());
        assert_eq!(common_root(&[Word::identity(), Word::identity()]), Some((Word::identity(), vec![0, 0])));
    }

    #[test]
    fn endo_apply_and_compose() {
        let phi = FreeEndo::new(2, vec![w(&[1, 2]), w(&[2])]).unwrap();
        assert_eq!(phi.apply(&w(&[1, -2])).unwrap(), w(&[1]));
        assert_eq!(FreeEndo::identity(2).apply(&w(&[2, 1])).unwrap(), w(&[2, 1]));
        assert_eq!(phi.compose(&phi).unwrap().apply(&w(&[1])).unwrap(), w(&[1, 2, 2]));
    }

    #[test]
    fn powers_and_display() {
        let u = w(&[2, 1, -2]);
        assert_eq!(u.pow(3), w(&[2, 1, 1, 1, -2]));
        assert_eq!(u.pow(-2), w(&[2, -1, -1, -2]));
        assert_eq!(u.pow(0), Word::identity());
        assert_eq!(w(&[1, 1, -2]).to_string(), "x1^2 x2^-1");
        assert_eq!(Word::identity().to_string(), "1");
    }
}
