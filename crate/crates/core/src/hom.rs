//! Homomorphisms between free-abelian-by-free groups.
//!
//! Every homomorphism `Γ_A → Γ_B` is of type I, `Φ_{φ,Q,P}`, sending
//! `t_j ↦ z^{q_j}` and `x_i ↦ x_iφ z^{p_i}`, or of type II,
//! `Φ_{v,r,s,Q,P}`, sending `t_j ↦ v^{r_j} z^{q_j}` and `x_i ↦ v^{s_i} z^{p_i}`.
//! Records carry a verified flag; only verified records can be applied.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{FabfError, Result};
use crate::group::{eval_word, Element, EvalMethod, Group};
use crate::linalg::integer::{rank, rows_span_lattice};
use crate::linalg::{hermite, vec_add, vec_neg, vec_sub, Matrix};
use crate::stallings::{generator_preimages, is_injective, is_surjective};
use crate::words::{common_root, small_exponent, FreeEndo, Word};
use crate::{IntMat, IntVec};

/// Images of the generators `t_1..t_m, x_1..x_n` of the source group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    source: Group,
    target: Group,
    t_images: Vec<Element>,
    x_images: Vec<Element>,
}

/// A defining relator of the source group that the assignment fails to respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relator {
    /// `[t_i, t_j]`
    Comm { i: usize, j: usize },
    /// `x_i⁻¹ t_j x_i = t^{a_ij}` with `a_ij` the `j`-th row of `A_i`.
    Conj { i: usize, j: usize },
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relator::Comm { i, j } => write!(f, "[t{i}, t{j}]"),
            Relator::Conj { i, j } => write!(f, "x{i}^-1 t{j} x{i} = t^(row {j} of A{i})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelatorCheck {
    Holds,
    Violated(Relator),
}

impl Assignment {
    pub fn new(source: &Group, target: &Group, t_images: Vec<Element>, x_images: Vec<Element>) -> Result<Self> {
        if t_images.len() != source.m() || x_images.len() != source.n() {
            return Err(FabfError::Dimension(format!(
                "expected {} t-images and {} x-images, got {} and {}",
                source.m(),
                source.n(),
                t_images.len(),
                x_images.len()
            )));
        }
        if t_images.iter().chain(&x_images).any(|e| e.group() != target) {
            return Err(FabfError::GroupMismatch("image outside the target group".into()));
        }
        Ok(Self { source: source.clone(), target: target.clone(), t_images, x_images })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn t_images(&self) -> &[Element] {
        &self.t_images
    }

    pub fn x_images(&self) -> &[Element] {
        &self.x_images
    }

    /// `(t^a)Φ = Π_j (t_jΦ)^{a_j}`.
    pub fn abelian_image(&self, a: &[BigInt]) -> Result<Element> {
        let mut acc = Element::identity(&self.target);
        for (img, e) in self.t_images.iter().zip(a) {
            acc = acc.mul(&img.pow(small_exponent(e)?))?;
        }
        Ok(acc)
    }

    /// Image of `u t^a` obtained by substituting the generator images.
    pub fn image(&self, g: &Element) -> Result<Element> {
        if g.group() != &self.source {
            return Err(FabfError::GroupMismatch("argument is not in the source group".into()));
        }
        let free = if g.free_part().is_identity() {
            Element::identity(&self.target)
        } else {
            eval_word(g.free_part(), &self.x_images, EvalMethod::Iterated)?
        };
        free.mul(&self.abelian_image(g.abelian_part())?)
    }

    /// Checks the `m²` commutation and `n·m` conjugation relators in order.
    pub fn check_by_relators(&self) -> Result<RelatorCheck> {
        let m = self.source.m();
        for i in 1..=m {
            for j in 1..=m {
                let (ti, tj) = (&self.t_images[i - 1], &self.t_images[j - 1]);
                if tj.conj(ti)? != *tj {
                    return Ok(RelatorCheck::Violated(Relator::Comm { i, j }));
                }
            }
        }
        for i in 1..=self.source.n() {
            let xi = &self.x_images[i - 1];
            for j in 1..=m {
                let lhs = self.t_images[j - 1].conj(xi)?;
                let rhs = self.abelian_image(self.source.a(i).row(j - 1))?;
                if lhs != rhs {
                    return Ok(RelatorCheck::Violated(Relator::Conj { i, j }));
                }
            }
        }
        Ok(RelatorCheck::Holds)
    }
}

fn check_shape(q: &IntMat, p: &IntMat, source: &Group, target: &Group) -> Result<()> {
    if q.rows() != source.m() || q.cols() != target.m() {
        return Err(FabfError::Dimension(format!(
            "Q is {}x{}, expected {}x{}",
            q.rows(),
            q.cols(),
            source.m(),
            target.m()
        )));
    }
    if p.rows() != source.n() || p.cols() != target.m() {
        return Err(FabfError::Dimension(format!(
            "P is {}x{}, expected {}x{}",
            p.rows(),
            p.cols(),
            source.n(),
            target.m()
        )));
    }
    Ok(())
}

/// `Φ_{φ,Q,P}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIHom {
    source: Group,
    target: Group,
    phi: FreeEndo,
    q: IntMat,
    p: IntMat,
    /// `B_{x_iφ}` and its inverse, per source generator.
    b: Vec<(IntMat, IntMat)>,
    verified: bool,
}

impl TypeIHom {
    /// Builds an unverified record after shape checks.
    pub fn new(source: &Group, target: &Group, phi: FreeEndo, q: IntMat, p: IntMat) -> Result<Self> {
        if phi.source_rank() != source.n() || phi.target_rank() != target.n() {
            return Err(FabfError::RankMismatch(format!(
                "φ maps F_{} -> F_{}, groups need F_{} -> F_{}",
                phi.source_rank(),
                phi.target_rank(),
                source.n(),
                target.n()
            )));
        }
        check_shape(&q, &p, source, target)?;
        let b = phi
            .images()
            .iter()
            .map(|w| Ok((target.matrix_of_word(w)?, target.matrix_of_word(&w.inverse())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { source: source.clone(), target: target.clone(), phi, q, p, b, verified: false })
    }

    /// The identity endomorphism `Φ_{id,I,0}`.
    pub fn identity(g: &Group) -> Self {
        Self::new(g, g, FreeEndo::identity(g.n()), Matrix::identity(g.m()), Matrix::zeros(g.n(), g.m()))
            .expect("shapes agree")
            .verified()
            .expect("identity is a homomorphism")
    }

    /// `Q B_{x_iφ} = A_i Q` for every `i`.
    pub fn verify(&self) -> bool {
        (0..self.source.n())
            .all(|i| &self.q * &self.b[i].0 == self.source.action()[i].matmul(&self.q).expect("shapes checked"))
    }

    /// Marks the record verified, or reports why it cannot be.
    pub fn verified(mut self) -> Result<Self> {
        if !self.verify() {
            return Err(FabfError::Unverified);
        }
        self.verified = true;
        Ok(self)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn phi(&self) -> &FreeEndo {
        &self.phi
    }

    pub fn q(&self) -> &IntMat {
        &self.q
    }

    pub fn p(&self) -> &IntMat {
        &self.p
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(FabfError::Unverified)
        }
    }

    /// `β_Φ(u)` by the cocycle rule `β(uw) = β(u) B_{wφ} + β(w)`.
    pub fn beta(&self, u: &Word) -> Result<IntVec> {
        self.source.check_word(u)?;
        let mut v = vec![BigInt::zero(); self.target.m()];
        for &l in u.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let (b, binv) = &self.b[i];
            v = if l > 0 {
                vec_add(&b.left_apply(&v), self.p.row(i))
            } else {
                binv.left_apply(&vec_sub(&v, self.p.row(i)))
            };
        }
        Ok(v)
    }

    /// `β_Φ(u) = p̃_u B̃_{uφ}` with the stacked blocks `B_{(u[j+1,l])φ}`.
    pub fn beta_block(&self, u: &Word) -> Result<IntVec> {
        self.source.check_word(u)?;
        let l = u.len();
        let mp = self.target.m();
        if l == 0 {
            return Ok(vec![BigInt::zero(); mp]);
        }
        let mut p_tilde = Vec::with_capacity(l * mp);
        for &x in u.letters() {
            let i = x.unsigned_abs() as usize - 1;
            if x > 0 {
                p_tilde.extend(self.p.row(i).iter().cloned());
            } else {
                p_tilde.extend(vec_neg(&self.b[i].1.left_apply(self.p.row(i))));
            }
        }
        let mut stacked: Option<IntMat> = None;
        for j in 1..=l {
            let block = if j == l {
                Matrix::identity(mp)
            } else {
                let tail = self.phi.apply(&u.subword(j + 1, l)?)?;
                self.target.matrix_of_word(&tail)?
            };
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.vstack(&block)?,
            });
        }
        Ok(stacked.expect("l >= 1").left_apply(&p_tilde))
    }

    /// `(u t^a)Φ = uφ · z^{aQ + β(u)}`.
    pub fn apply(&self, g: &Element) -> Result<Element> {
        self.require_verified()?;
        if g.group() != &self.source {
            return Err(FabfError::GroupMismatch("argument is not in the source group".into()));
        }
        let u = g.free_part();
        let a = vec_add(&self.q.left_apply(g.abelian_part()), &self.beta(u)?);
        Element::new(&self.target, self.phi.apply(u)?, a)
    }

    /// `self` followed by `next`: `Φ_{φφ′, QQ′, P″}` with `p″_i = p_i Q′ + β′(x_iφ)`.
    pub fn compose(&self, next: &TypeIHom) -> Result<TypeIHom> {
        self.require_verified()?;
        next.require_verified()?;
        if self.target != next.source {
            return Err(FabfError::GroupMismatch("target of the first map is not the source of the second".into()));
        }
        let phi = self.phi.compose(&next.phi)?;
        let q = &self.q * &next.q;
        let rows = (0..self.source.n())
            .map(|i| Ok(vec_add(&next.q.left_apply(self.p.row(i)), &next.beta(self.phi.image(i + 1))?)))
            .collect::<Result<Vec<_>>>()?;
        let p = Matrix::from_rows(rows)?;
        TypeIHom::new(&self.source, &next.target, phi, q, p)?
            .verified()
            .map_err(|_| FabfError::Defect("composition failed verification".into()))
    }

    /// `Φ^k` for `k ≥ 1`.
    pub fn power(&self, k: u64) -> Result<TypeIHom> {
        if !self.is_endo() {
            return Err(FabfError::GroupMismatch("powers need an endomorphism".into()));
        }
        if k < 1 {
            return Err(FabfError::OutOfRange("power exponent must be at least 1".into()));
        }
        self.require_verified()?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `β_{Φ^p}(w) = Σ_{i<p} β(wφ^i) Q^{p-1-i}`.
    pub fn beta_power(&self, w: &Word, p: u64) -> Result<IntVec> {
        if !self.is_endo() {
            return Err(FabfError::GroupMismatch("powers need an endomorphism".into()));
        }
        let mut acc = vec![BigInt::zero(); self.target.m()];
        let mut cur = w.clone();
        for _ in 0..p {
            acc = vec_add(&self.q.left_apply(&acc), &self.beta(&cur)?);
            cur = self.phi.apply(&cur)?;
        }
        Ok(acc)
    }

    /// `(u t^a)Φ^k = uφ^k t^{aQ^k + β_{Φ^k}(u)}`, for `k ≥ 0`.
    pub fn apply_power(&self, g: &Element, k: u64) -> Result<Element> {
        self.require_verified()?;
        if !self.is_endo() {
            return Err(FabfError::GroupMismatch("powers need an endomorphism".into()));
        }
        if g.group() != &self.source {
            return Err(FabfError::GroupMismatch("argument is not in the source group".into()));
        }
        let u = g.free_part();
        let a = vec_add(&self.q.pow(k).left_apply(g.abelian_part()), &self.beta_power(u, k)?);
        Element::new(&self.target, self.phi.apply_iter(u, k)?, a)
    }

    pub fn to_assignment(&self) -> Result<Assignment> {
        let t = (0..self.source.m())
            .map(|j| Element::abelian(&self.target, self.q.row(j).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let x = (0..self.source.n())
            .map(|i| Element::new(&self.target, self.phi.image(i + 1).clone(), self.p.row(i).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Assignment::new(&self.source, &self.target, t, x)
    }

    /// Lattice `im Q + β(ker φ)`: the abelian part of the image.
    fn abelian_image_lattice(&self, preimages: &[Word]) -> Result<IntMat> {
        let mp = self.target.m();
        // ker φ is normally generated by x_i · (x_iφ with y_k ↦ preimage_k)⁻¹
        let mut rows: Vec<IntVec> = Vec::new();
        for i in 1..=self.source.n() {
            let back = self.phi.image(i).substitute(preimages)?;
            let k = Word::generator(i).mul(&back.inverse());
            rows.push(self.beta(&k)?);
        }
        // close under the target action: β(g⁻¹kg) = β(k) B_{gφ}
        let mut module = lattice_basis(&rows);
        loop {
            let mut grown = module.clone();
            for (b, binv) in self.target.action().iter().zip(inverses(&self.target)) {
                for r in &module {
                    grown.push(b.left_apply(r));
                    grown.push(binv.left_apply(r));
                }
            }
            let next = lattice_basis(&grown);
            if next == module {
                break;
            }
            module = next;
        }
        module.extend(self.q.row_vecs());
        Ok(Matrix::from_rows(lattice_basis(&module)).unwrap_or_else(|_| Matrix::zeros(0, mp)))
    }
}

fn inverses(g: &Group) -> Vec<IntMat> {
    (1..=g.n()).map(|i| g.letter_matrix(-(i as i32)).clone()).collect()
}

/// Hermite basis of the lattice spanned by `rows` in `Z^dim`.
fn lattice_basis(rows: &[IntVec]) -> Vec<IntVec> {
    if rows.is_empty() {
        return Vec::new();
    }
    let hf = hermite(&Matrix::from_rows(rows.to_vec()).expect("uniform rows"));
    (0..hf.rank()).map(|i| hf.h.row(i).to_vec()).collect()
}

/// `Φ_{v,r,s,Q,P}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIIHom {
    source: Group,
    target: Group,
    v: Word,
    r: IntVec,
    s: IntVec,
    q: IntMat,
    p: IntMat,
    verified: bool,
}

impl TypeIIHom {
    #[allow(clippy::too_many_arguments)]
    pub fn new(source: &Group, target: &Group, v: Word, r: IntVec, s: IntVec, q: IntMat, p: IntMat) -> Result<Self> {
        target.check_word(&v)?;
        if r.len() != source.m() || s.len() != source.n() {
            return Err(FabfError::Dimension(format!(
                "r has length {}, s has length {}; expected {} and {}",
                r.len(),
                s.len(),
                source.m(),
                source.n()
            )));
        }
        check_shape(&q, &p, source, target)?;
        Ok(Self { source: source.clone(), target: target.clone(), v, r, s, q, p, verified: false })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn r(&self) -> &IntVec {
        &self.r
    }

    pub fn s(&self) -> &IntVec {
        &self.s
    }

    pub fn q(&self) -> &IntMat {
        &self.q
    }

    pub fn p(&self) -> &IntMat {
        &self.p
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// The candidate assignment `t_j ↦ v^{r_j} z^{q_j}`, `x_i ↦ v^{s_i} z^{p_i}`.
    pub fn to_assignment(&self) -> Result<Assignment> {
        let t = (0..self.source.m())
            .map(|j| Element::new(&self.target, self.v.pow(small_exponent(&self.r[j])?), self.q.row(j).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let x = (0..self.source.n())
            .map(|i| Element::new(&self.target, self.v.pow(small_exponent(&self.s[i])?), self.p.row(i).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Assignment::new(&self.source, &self.target, t, x)
    }

    fn bv_pow(&self, e: &BigInt) -> Result<IntMat> {
        self.target.matrix_of_word(&self.v.pow(small_exponent(e)?))
    }

    /// Checks `v ≠ 1` primitive, `r ≠ 0`, `r A_i^T = r`, the `comm.ab` identities
    /// and the `conj.ab.II` identities, the latter with `(t^{a_ij})Φτ`
    /// evaluated through the candidate assignment.
    pub fn verify(&self) -> Result<bool> {
        if self.v.is_identity() || self.v.primitive_root().1 != 1 || self.r.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        for a in self.source.action() {
            if a.transpose().left_apply(&self.r) != self.r {
                return Ok(false);
            }
        }
        let m = self.source.m();
        let id = Matrix::identity(self.target.m());
        let pows: Vec<IntMat> = self.r.iter().map(|e| self.bv_pow(e)).collect::<Result<_>>()?;
        for i in 0..m {
            for j in 0..m {
                let lhs = (&pows[j] - &id).left_apply(self.q.row(i));
                let rhs = (&pows[i] - &id).left_apply(self.q.row(j));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        let asg = self.to_assignment()?;
        for i in 0..self.source.n() {
            let bs = self.bv_pow(&self.s[i])?;
            for (j, pw) in pows.iter().enumerate().take(m) {
                let lhs = (pw - &id).left_apply(self.p.row(i));
                let tau = asg.abelian_image(self.source.action()[i].row(j))?;
                let rhs = vec_sub(&bs.left_apply(self.q.row(j)), tau.abelian_part());
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn verified(mut self) -> Result<Self> {
        if !self.verify()? {
            return Err(FabfError::Unverified);
        }
        self.verified = true;
        Ok(self)
    }

    pub fn apply(&self, g: &Element) -> Result<Element> {
        if !self.verified {
            return Err(FabfError::Unverified);
        }
        self.to_assignment()?.image(g)
    }
}

/// A verified homomorphism of either shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hom {
    TypeI(TypeIHom),
    TypeII(TypeIIHom),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomClassification {
    NotHom(Relator),
    TypeI(TypeIHom),
    TypeII(TypeIIHom),
}

/// Checks the relators and, on success, reads off the type I or type II record.
pub fn classify(asg: &Assignment) -> Result<HomClassification> {
    if let RelatorCheck::Violated(r) = asg.check_by_relators()? {
        return Ok(HomClassification::NotHom(r));
    }
    let (source, target) = (asg.source(), asg.target());
    let t_free: Vec<Word> = asg.t_images().iter().map(|e| e.free_part().clone()).collect();
    let q = Matrix::from_rows(asg.t_images().iter().map(|e| e.abelian_part().clone()).collect())?;
    let p = Matrix::from_rows(asg.x_images().iter().map(|e| e.abelian_part().clone()).collect())?;
    if t_free.iter().all(Word::is_identity) {
        let phi = FreeEndo::new(target.n(), asg.x_images().iter().map(|e| e.free_part().clone()).collect())?;
        let h = TypeIHom::new(source, target, phi, q, p)?
            .verified()
            .map_err(|_| FabfError::Defect("relators hold but the type I condition fails".into()))?;
        return Ok(HomClassification::TypeI(h));
    }
    let (v, r) =
        common_root(&t_free).ok_or_else(|| FabfError::Defect("commuting images without a common root".into()))?;
    let mut s = Vec::with_capacity(source.n());
    for e in asg.x_images() {
        let (root, k) = e.free_part().primitive_root();
        let k = k as i64;
        s.push(BigInt::from(if k == 0 {
            0
        } else if root == v {
            k
        } else if root == v.inverse() {
            -k
        } else {
            return Err(FabfError::Defect("x-image is not a power of the common root".into()));
        }));
    }
    let r = r.into_iter().map(BigInt::from).collect();
    let h = TypeIIHom::new(source, target, v, r, s, q, p)?
        .verified()
        .map_err(|_| FabfError::Defect("relators hold but the type II conditions fail".into()))?;
    Ok(HomClassification::TypeII(h))
}

/// Injectivity, surjectivity and bijectivity of a verified homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub auto: bool,
}

impl Hom {
    pub fn source(&self) -> &Group {
        match self {
            Hom::TypeI(h) => h.source(),
            Hom::TypeII(h) => h.source(),
        }
    }

    pub fn target(&self) -> &Group {
        match self {
            Hom::TypeI(h) => h.target(),
            Hom::TypeII(h) => h.target(),
        }
    }

    pub fn apply(&self, g: &Element) -> Result<Element> {
        match self {
            Hom::TypeI(h) => h.apply(g),
            Hom::TypeII(h) => h.apply(g),
        }
    }

    pub fn verify(&self) -> Result<bool> {
        match self {
            Hom::TypeI(h) => Ok(h.verify()),
            Hom::TypeII(h) => h.verify(),
        }
    }

    pub fn to_assignment(&self) -> Result<Assignment> {
        match self {
            Hom::TypeI(h) => h.to_assignment(),
            Hom::TypeII(h) => h.to_assignment(),
        }
    }

    /// Type II maps are never injective or surjective. A type I map is
    /// injective iff `φ` is injective and `rank Q = m`; it is surjective iff
    /// `φ` is surjective and `im Q + β(ker φ) = Z^{m′}`.
    pub fn morphism_class(&self) -> Result<MorphismClass> {
        let h = match self {
            Hom::TypeII(h) => {
                if !h.verified {
                    return Err(FabfError::Unverified);
                }
                return Ok(MorphismClass { mono: false, epi: false, auto: false });
            }
            Hom::TypeI(h) => h,
        };
        h.require_verified()?;
        let mono = is_injective(&h.phi) && rank(&h.q) == h.source.m();
        let epi = is_surjective(&h.phi)
            && match generator_preimages(&h.phi) {
                Some(pre) => rows_span_lattice(&h.abelian_image_lattice(&pre)?),
                None => return Err(FabfError::Defect("surjective map without generator preimages".into())),
            };
        Ok(MorphismClass { mono, epi, auto: mono && epi })
    }
}

/// Convenience wrapper for [`Hom::morphism_class`].
pub fn decide_morphism_class(h: &Hom) -> Result<MorphismClass> {
    h.morphism_class()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    fn v(x: &[i64]) -> IntVec {
        x.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMat {
        Matrix::from_rows(rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    fn g1() -> Group {
        GroupData::new(vec![mat(&[&[1, 1], &[0, 1]]), Matrix::identity(2)]).unwrap()
    }

    fn el(g: &Group, letters: &[i32], a: &[i64]) -> Element {
        Element::new(g, Word::from_letters(letters.iter().copied()), v(a)).unwrap()
    }

    fn id_with_p(g: &Group, p: IntMat) -> TypeIHom {
        TypeIHom::new(g, g, FreeEndo::identity(2), Matrix::identity(2), p).unwrap().verified().unwrap()
    }

    #[test]
    fn identity_assignment_is_type_i_identity() {
        let g = g1();
        let asg = TypeIHom::identity(&g).to_assignment().unwrap();
        assert_eq!(asg.check_by_relators().unwrap(), RelatorCheck::Holds);
        assert_eq!(classify(&asg).unwrap(), HomClassification::TypeI(TypeIHom::identity(&g)));
    }

    #[test]
    fn trivial_action_accepts_type_i_shapes() {
        let g = GroupData::trivial(2, 2).unwrap();
        let phi = FreeEndo::new(2, vec![Word::from_letters([1, 2, 1]), Word::from_letters([-2])]).unwrap();
        let h = TypeIHom::new(&g, &g, phi, mat(&[&[2, 1], &[0, 3]]), mat(&[&[1, -1], &[4, 0]])).unwrap();
        assert!(h.verify());
        assert_eq!(h.to_assignment().unwrap().check_by_relators().unwrap(), RelatorCheck::Holds);
    }

    #[test]
    fn non_commuting_t_images() {
        let g = g1();
        let asg = Assignment::new(
            &g,
            &g,
            vec![el(&g, &[1], &[0, 0]), el(&g, &[2], &[0, 0])],
            vec![el(&g, &[1], &[0, 0]), el(&g, &[2], &[0, 0])],
        )
        .unwrap();
        assert_eq!(asg.check_by_relators().unwrap(), RelatorCheck::Violated(Relator::Comm { i: 1, j: 2 }));
        assert_eq!(classify(&asg).unwrap(), HomClassification::NotHom(Relator::Comm { i: 1, j: 2 }));
    }

    #[test]
    fn classify_type_ii() {
        let g = g1();
        // t1 ↦ x2 t[1,0], t2 ↦ 1, x1 ↦ x2^2 t[p1], x2 ↦ x2^-1 t[p2]; B_{x2} = I so
        // the abelian conditions reduce to q_j = (t^{a_ij})Φτ.
        let asg = Assignment::new(
            &g,
            &g,
            vec![el(&g, &[2], &[1, 0]), el(&g, &[], &[0, 0])],
            vec![el(&g, &[2, 2], &[3, 1]), el(&g, &[-2], &[0, 5])],
        )
        .unwrap();
        match classify(&asg).unwrap() {
            HomClassification::TypeII(h) => {
                assert_eq!(h.v(), &Word::generator(2));
                assert_eq!(h.r(), &v(&[1, 0]));
                assert_eq!(h.s(), &v(&[2, -1]));
                assert_eq!(h.apply(&el(&g, &[], &[1, 0])).unwrap(), el(&g, &[2], &[1, 0]));
                let class = Hom::TypeII(h).morphism_class().unwrap();
                assert_eq!(class, MorphismClass { mono: false, epi: false, auto: false });
            }
            other => panic!("expected type II, got {other:?}"),
        }
    }

    #[test]
    fn type_ii_needs_fixed_r() {
        let g = g1();
        let h = TypeIIHom::new(
            &g,
            &g,
            Word::generator(2),
            v(&[0, 1]),
            v(&[0, 0]),
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        assert!(!h.verify().unwrap());
    }

    #[test]
    fn verify_type_i_examples() {
        let g = g1();
        assert!(id_with_p(&g, mat(&[&[5, -2], &[1, 1]])).verify());
        let h = TypeIHom::new(&g, &g, FreeEndo::identity(2), g.a(1).clone(), Matrix::zeros(2, 2)).unwrap();
        assert!(h.verify());
        let bad = TypeIHom::new(&g, &g, FreeEndo::identity(2), mat(&[&[0, 1], &[1, 0]]), Matrix::zeros(2, 2)).unwrap();
        assert!(!bad.verify());
        assert_eq!(bad.clone().verified().unwrap_err(), FabfError::Unverified);
        assert!(bad.apply(&Element::identity(&g)).is_err());
    }

    #[test]
    fn apply_and_beta() {
        let g = g1();
        let h = id_with_p(&g, mat(&[&[1, 0], &[0, 0]]));
        assert_eq!(h.apply(&el(&g, &[1], &[1, 0])).unwrap(), el(&g, &[1], &[2, 0]));
        assert!(h.apply(&Element::identity(&g)).unwrap().is_identity());
        assert_eq!(h.beta(&Word::identity()).unwrap(), v(&[0, 0]));
        assert_eq!(h.beta(&Word::generator(1)).unwrap(), v(&[1, 0]));
        let x11 = Word::from_letters([1, 1]);
        assert_eq!(h.beta(&x11).unwrap(), v(&[2, 1]));
        assert_eq!(h.beta_block(&x11).unwrap(), v(&[2, 1]));
        let w = Word::from_letters([1, -2, -1, -1, 2]);
        assert_eq!(h.beta(&w).unwrap(), h.beta_block(&w).unwrap());
    }

    #[test]
    fn compose_and_power() {
        let g = g1();
        let h = id_with_p(&g, mat(&[&[1, 0], &[0, 0]]));
        assert_eq!(h.compose(&TypeIHom::identity(&g)).unwrap(), h);
        assert_eq!(h.power(1).unwrap(), h);
        let x = el(&g, &[1], &[1, 0]);
        let twice = h.apply(&h.apply(&x).unwrap()).unwrap();
        assert_eq!(h.power(2).unwrap().apply(&x).unwrap(), twice);
        assert_eq!(h.apply_power(&x, 2).unwrap(), twice);
        assert_eq!(h.power(3).unwrap().beta(&x.free_part().clone()).unwrap(), h.beta_power(x.free_part(), 3).unwrap());
        assert!(h.power(0).is_err());
    }

    #[test]
    fn morphism_classes() {
        let g = g1();
        let c = Hom::TypeI(id_with_p(&g, mat(&[&[1, 0], &[0, 0]]))).morphism_class().unwrap();
        assert_eq!(c, MorphismClass { mono: true, epi: true, auto: true });
        let t = GroupData::trivial(2, 2).unwrap();
        let dbl = TypeIHom::new(
            &t,
            &t,
            FreeEndo::identity(2),
            Matrix::identity(2).scale(&BigInt::from(2)),
            Matrix::zeros(2, 2),
        )
        .unwrap()
        .verified()
        .unwrap();
        let c = Hom::TypeI(dbl).morphism_class().unwrap();
        assert_eq!(c, MorphismClass { mono: true, epi: false, auto: false });
    }

    #[test]
    fn surjection_from_larger_rank_uses_kernel() {
        // F_3 ⋉ Z → F_2 ⋉ Z, trivial actions, x3 ↦ 1 with p3 = 1 and Q = 0:
        // the abelian image comes entirely from β on ker φ.
        let s = GroupData::trivial(3, 1).unwrap();
        let t = GroupData::trivial(2, 1).unwrap();
        let phi = FreeEndo::new(2, vec![Word::generator(1), Word::generator(2), Word::identity()]).unwrap();
        let h = TypeIHom::new(&s, &t, phi, mat(&[&[0]]), mat(&[&[0], &[0], &[1]])).unwrap().verified().unwrap();
        let c = Hom::TypeI(h).morphism_class().unwrap();
        assert_eq!(c, MorphismClass { mono: false, epi: true, auto: false });
    }
}
