//! The group `F_n ⋉ Z^m` and arithmetic on its normal forms `u t^a`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{FabfError, Result};
use crate::linalg::{determinant, vec_add, vec_neg, Matrix};
use crate::words::Word;
use crate::{IntMat, IntVec};

/// Ranks and action of a free-abelian-by-free group.
///
/// Generator `x_i` acts on row vectors by `A_i`: `t^a x_i = x_i t^{a A_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupData {
    n: usize,
    m: usize,
    action: Vec<IntMat>,
    inverses: Vec<IntMat>,
}

/// Shared handle to a group.
pub type Group = Arc<GroupData>;

impl GroupData {
    /// Validates `n ≥ 2`, `m ≥ 1` and that every `A_i` is `m × m` unimodular.
    pub fn new(action: Vec<IntMat>) -> Result<Group> {
        let n = action.len();
        if n < 2 {
            return Err(FabfError::InvalidGroup(format!("need n >= 2, got {n}")));
        }
        let m = action[0].rows();
        if m < 1 {
            return Err(FabfError::InvalidGroup("need m >= 1".into()));
        }
        let mut inverses = Vec::with_capacity(n);
        for (i, a) in action.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(FabfError::Dimension(format!("A{} is {}x{}, expected {m}x{m}", i + 1, a.rows(), a.cols())));
            }
            let det = determinant(a)?;
            if det != BigInt::one() && det != -BigInt::one() {
                return Err(FabfError::NotUnimodular(format!("A{}", i + 1), det.to_string()));
            }
            inverses.push(crate::linalg::unimodular_inverse(a)?);
        }
        Ok(Arc::new(Self { n, m, action, inverses }))
    }

    /// The group with trivial action.
    pub fn trivial(n: usize, m: usize) -> Result<Group> {
        Self::new(vec![Matrix::identity(m); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn action(&self) -> &[IntMat] {
        &self.action
    }

    /// `A_i` (1-based).
    pub fn a(&self, i: usize) -> &IntMat {
        &self.action[i - 1]
    }

    /// Matrix of a single letter.
    pub fn letter_matrix(&self, l: i32) -> &IntMat {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.action[i]
        } else {
            &self.inverses[i]
        }
    }

    /// `A_u`, the product of `A_i^{±1}` along `u`.
    pub fn matrix_of_word(&self, u: &Word) -> Result<IntMat> {
        self.check_word(u)?;
        Ok(u.letters().iter().fold(Matrix::identity(self.m), |acc, &l| &acc * self.letter_matrix(l)))
    }

    pub fn check_word(&self, u: &Word) -> Result<()> {
        if u.max_generator() > self.n {
            return Err(FabfError::OutOfRange(format!("{u} uses a generator beyond x{}", self.n)));
        }
        Ok(())
    }

    /// Row vector `a · A_u`, applied letter by letter.
    pub fn act(&self, a: &[BigInt], u: &Word) -> IntVec {
        u.letters().iter().fold(a.to_vec(), |v, &l| self.letter_matrix(l).left_apply(&v))
    }
}

/// An element `u t^a` in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: Group,
    u: Word,
    a: IntVec,
}

/// How [`eval_word`] evaluates a formal word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMethod {
    /// Left fold of multiplications.
    Iterated,
    /// Closed form with the per-syllable vectors and stacked block matrix.
    BlockFormula,
}

/// Which projection [`Element::project`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Free,
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projected {
    Free(Word),
    Abelian(IntVec),
}

impl Element {
    pub fn new(group: &Group, u: Word, a: IntVec) -> Result<Self> {
        group.check_word(&u)?;
        if a.len() != group.m {
            return Err(FabfError::Dimension(format!("vector of length {} in Z^{}", a.len(), group.m)));
        }
        Ok(Self { group: group.clone(), u, a })
    }

    pub fn identity(group: &Group) -> Self {
        Self { group: group.clone(), u: Word::identity(), a: vec![BigInt::zero(); group.m] }
    }

    /// `x_i` (1-based).
    pub fn generator(group: &Group, i: usize) -> Result<Self> {
        Self::new(group, Word::generator(i), vec![BigInt::zero(); group.m])
    }

    /// `t^a`.
    pub fn abelian(group: &Group, a: IntVec) -> Result<Self> {
        Self::new(group, Word::identity(), a)
    }

    /// The free word `u` as an element.
    pub fn from_word(group: &Group, u: Word) -> Result<Self> {
        Self::new(group, u, vec![BigInt::zero(); group.m])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn free_part(&self) -> &Word {
        &self.u
    }

    pub fn abelian_part(&self) -> &IntVec {
        &self.a
    }

    pub fn project(&self, mode: Projection) -> Projected {
        match mode {
            Projection::Free => Projected::Free(self.u.clone()),
            Projection::Abelian => Projected::Abelian(self.a.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_identity() && self.a.iter().all(Zero::is_zero)
    }

    fn same_group(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(FabfError::GroupMismatch("operands live in different groups".into()))
        }
    }

    /// `(u t^a)(w t^c) = uw t^{a A_w + c}`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_group(other)?;
        Ok(Element {
            group: self.group.clone(),
            u: self.u.mul(&other.u),
            a: vec_add(&self.group.act(&self.a, &other.u), &other.a),
        })
    }

    /// `(u t^a)⁻¹ = u⁻¹ t^{-a A_u⁻¹}`.
    pub fn inv(&self) -> Element {
        let ui = self.u.inverse();
        Element { group: self.group.clone(), a: vec_neg(&self.group.act(&self.a, &ui)), u: ui }
    }

    /// `w⁻¹ g w` for `g = self`, via `c(I − A_{w⁻¹uw}) + a A_w` with `w = w t^c`.
    pub fn conj(&self, w: &Element) -> Result<Element> {
        self.same_group(w)?;
        let g = &self.group;
        let conj_u = self.u.conj(&w.u);
        let c_part = crate::linalg::vec_sub(&w.a, &g.act(&w.a, &conj_u));
        Ok(Element { group: g.clone(), a: vec_add(&c_part, &g.act(&self.a, &w.u)), u: conj_u })
    }

    /// `(u t^p)^l = u^l t^{p Σ_{j<l} A_u^j}` for `l > 0`; negative `l` inverts first.
    pub fn pow(&self, l: i64) -> Element {
        if l < 0 {
            return self.inv().pow(-l);
        }
        let g = &self.group;
        let au = g.matrix_of_word(&self.u).expect("element words are in range");
        let mut sum = vec![BigInt::zero(); g.m];
        let mut term = self.a.clone();
        for _ in 0..l {
            sum = vec_add(&sum, &term);
            term = au.left_apply(&term);
        }
        Element { group: g.clone(), u: self.u.pow(l), a: sum }
    }
}

/// Evaluates a formal word `w` in letters `y_1..y_k` at `gs`.
pub fn eval_word(w: &Word, gs: &[Element], method: EvalMethod) -> Result<Element> {
    let group =
        gs.first().map(|g| g.group.clone()).ok_or_else(|| FabfError::Dimension("no elements to evaluate at".into()))?;
    for g in gs {
        g.same_group(&gs[0])?;
    }
    if w.max_generator() > gs.len() {
        return Err(FabfError::OutOfRange(format!("word uses y{} but {} elements given", w.max_generator(), gs.len())));
    }
    match method {
        EvalMethod::Iterated => {
            let mut acc = Element::identity(&group);
            for &l in w.letters() {
                let g = &gs[l.unsigned_abs() as usize - 1];
                acc = if l > 0 { acc.mul(g)? } else { acc.mul(&g.inv())? };
            }
            Ok(acc)
        }
        EvalMethod::BlockFormula => eval_block(&group, w, gs),
    }
}

/// `w(u_i) · t^{p̃ Ã}` where `p̃` concatenates per-syllable vectors and `Ã`
/// stacks `A_{w[j+1,l]}` for `j = 1..l` (the last block being `I`).
fn eval_block(group: &Group, w: &Word, gs: &[Element]) -> Result<Element> {
    let m = group.m;
    let letters = w.letters();
    let l = letters.len();
    let syllable_words: Vec<Word> = letters
        .iter()
        .map(|&x| {
            let u = &gs[x.unsigned_abs() as usize - 1].u;
            if x > 0 {
                u.clone()
            } else {
                u.inverse()
            }
        })
        .collect();
    let mut p_tilde: Vec<BigInt> = Vec::with_capacity(m * l);
    for &x in letters {
        let g = &gs[x.unsigned_abs() as usize - 1];
        if x > 0 {
            p_tilde.extend(g.a.iter().cloned());
        } else {
            p_tilde.extend(vec_neg(&group.act(&g.a, &g.u.inverse())));
        }
    }
    let mut blocks: Vec<IntMat> = vec![Matrix::identity(m); l];
    for j in (0..l.saturating_sub(1)).rev() {
        blocks[j] = &group.matrix_of_word(&syllable_words[j + 1])? * &blocks[j + 1];
    }
    let a = if l == 0 {
        vec![BigInt::zero(); m]
    } else {
        let stacked = blocks.iter().skip(1).try_fold(blocks[0].clone(), |acc, b| acc.vstack(b))?;
        stacked.left_apply(&p_tilde)
    };
    let u = syllable_words.iter().fold(Word::identity(), |acc, s| acc.mul(s));
    Ok(Element { group: group.clone(), u, a })
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        if self.u.is_identity() {
            write!(f, "t[{}]", t.join(","))
        } else {
            write!(f, "{} t[{}]", self.u, t.join(","))
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
