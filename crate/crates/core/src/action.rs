//! Groups with finite action image: the image itself, the kernel of the
//! action as a subgroup of `F_n`, and a search for isomorphisms.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{FabfError, Result};
use crate::group::Group;
use crate::hom::{Hom, TypeIHom};
use crate::linalg::lll::lll_reduce;
use crate::linalg::{determinant, left_nullspace, Matrix};
use crate::poly::charpoly_of;
use crate::stallings::SubgroupGraph;
use crate::words::{FreeEndo, Word};
use crate::{IntMat, IntPoly};

/// The finite group generated by the action matrices.
#[derive(Clone, Debug)]
pub struct FiniteImage {
    elements: Vec<IntMat>,
    reps: Vec<Word>,
    /// `right[e][i]` is the index of `elements[e] · A_{i+1}`.
    right: Vec<Vec<usize>>,
}

impl FiniteImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMat] {
        &self.elements
    }

    /// `reps()[e]` is a word `u` with `A_u = elements()[e]`.
    pub fn reps(&self) -> &[Word] {
        &self.reps
    }

    pub fn right_mult(&self, e: usize, i: usize) -> usize {
        self.right[e][i - 1]
    }
}

#[derive(Clone, Debug)]
pub enum ImageResult {
    Finite(FiniteImage),
    NotFiniteWithinCap { cap: usize },
}

/// Breadth-first closure of `{I}` under right multiplication by the `A_i`.
pub fn image_bfs(g: &Group, cap: usize) -> ImageResult {
    let n = g.n();
    let mut index: HashMap<IntMat, usize> = HashMap::new();
    let mut elements = vec![Matrix::identity(g.m())];
    let mut reps = vec![Word::identity()];
    let mut right: Vec<Vec<usize>> = Vec::new();
    index.insert(elements[0].clone(), 0);
    let mut e = 0;
    while e < elements.len() {
        let mut row = Vec::with_capacity(n);
        for i in 1..=n {
            let next = &elements[e] * g.a(i);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return ImageResult::NotFiniteWithinCap { cap };
                    }
                    let id = elements.len();
                    index.insert(next.clone(), id);
                    elements.push(next);
                    reps.push(reps[e].mul(&Word::generator(i)));
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        e += 1;
    }
    ImageResult::Finite(FiniteImage { elements, reps, right })
}

pub const DEFAULT_IMAGE_CAP: usize = 1_000_000;

fn finite_image(g: &Group, cap: usize) -> Result<FiniteImage> {
    match image_bfs(g, cap) {
        ImageResult::Finite(img) => Ok(img),
        ImageResult::NotFiniteWithinCap { cap } => {
            Err(FabfError::Unsupported(format!("action image exceeds {cap} elements")))
        }
    }
}

/// The Cayley graph of the image, read as the Stallings graph of `ker α`.
pub fn kernel_graph(g: &Group, img: &FiniteImage) -> SubgroupGraph {
    let mut edges = Vec::with_capacity(img.order() * g.n());
    for e in 0..img.order() {
        for i in 1..=g.n() {
            edges.push((e, i, img.right_mult(e, i)));
        }
    }
    SubgroupGraph::from_edges(g.n(), img.order(), &edges)
}

/// A free basis of `ker α`, of size `|image|·(n − 1) + 1`.
pub fn kernel_basis(g: &Group, cap: usize) -> Result<Vec<Word>> {
    let img = finite_image(g, cap)?;
    Ok(kernel_graph(g, &img).basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantCheck {
    /// The named invariant differs, so the groups are not isomorphic.
    Mismatch(&'static str),
    Inconclusive,
}

fn image_charpolys(img: &FiniteImage) -> Vec<IntPoly> {
    let mut polys: Vec<IntPoly> = img.elements().iter().map(charpoly_of).collect();
    polys.sort_by_key(|p| p.coeffs().to_vec());
    polys
}

/// Necessary conditions for `Γ_A ≅ Γ_B`: equal ranks, and conjugate images
/// (compared through order, kernel rank and the multiset of characteristic
/// polynomials).
pub fn iso_invariants(g: &Group, h: &Group, cap: usize) -> Result<InvariantCheck> {
    if g.n() != h.n() {
        return Ok(InvariantCheck::Mismatch("rank"));
    }
    if g.m() != h.m() {
        return Ok(InvariantCheck::Mismatch("dimension"));
    }
    let (ig, ih) = (finite_image(g, cap)?, finite_image(h, cap)?);
    if ig.order() != ih.order() {
        return Ok(InvariantCheck::Mismatch("image-order"));
    }
    if kernel_graph(g, &ig).rank() != kernel_graph(h, &ih).rank() {
        return Ok(InvariantCheck::Mismatch("kernel-rank"));
    }
    if image_charpolys(&ig) != image_charpolys(&ih) {
        return Ok(InvariantCheck::Mismatch("charpoly-multiset"));
    }
    Ok(InvariantCheck::Inconclusive)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intertwiner {
    /// Unimodular `Q` with `A_i Q = Q B_i` for all `i`.
    Found(IntMat),
    /// No unimodular solution exists.
    None,
    Undecided {
        box_bound: u64,
    },
}

const GRID_CAP: u64 = 400_000;
const SEARCH_CAP: u64 = 2_000_000;

/// Basis of the integer lattice `{Q : A_i Q = Q B_i}`, as flattened rows.
fn intertwiner_lattice(a: &[IntMat], b: &[IntMat], m: usize) -> IntMat {
    let mut coeff = Matrix::zeros(m * m, a.len() * m * m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        for r in 0..m {
            for c in 0..m {
                let eq = i * m * m + r * m + c;
                for s in 0..m {
                    coeff[(s * m + c, eq)] += &ai[(r, s)];
                    coeff[(r * m + s, eq)] -= &bi[(s, c)];
                }
            }
        }
    }
    left_nullspace(&coeff)
}

fn combine(basis: &IntMat, lambda: &[i64], m: usize) -> IntMat {
    let mut flat = vec![BigInt::zero(); m * m];
    for (j, l) in lambda.iter().enumerate() {
        if *l != 0 {
            let l = BigInt::from(*l);
            for (f, x) in flat.iter_mut().zip(basis.row(j)) {
                *f += &l * x;
            }
        }
    }
    Matrix::new(m, m, flat).expect("m·m entries")
}

/// Calls `visit` on each vector in `[lo, hi]^d` until it returns `true`.
fn for_each_in_box(d: usize, lo: i64, hi: i64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    let mut v = vec![lo; d];
    loop {
        if visit(&v) {
            return true;
        }
        let mut j = 0;
        loop {
            if j == d {
                return false;
            }
            if v[j] < hi {
                v[j] += 1;
                break;
            }
            v[j] = lo;
            j += 1;
        }
    }
}

/// Looks for a unimodular `Q` with `A_i Q = Q B_i` for all `i`.
///
/// The solution lattice is computed exactly and LLL-reduced. `None` is
/// certified when the gcd of `det Q` over the lattice differs from 1; the
/// determinant has degree `m`, so that gcd is attained on the grid
/// `{0..m}^d`. Otherwise coefficient vectors are searched shell by shell up
/// to `box_bound`.
pub fn intertwiner_search(a: &[IntMat], b: &[IntMat], box_bound: u64) -> Result<Intertwiner> {
    if a.len() != b.len() || a.is_empty() {
        return Err(FabfError::Dimension(format!("tuples of lengths {} and {}", a.len(), b.len())));
    }
    let m = a[0].rows();
    if a.iter().chain(b).any(|x| x.rows() != m || x.cols() != m) {
        return Err(FabfError::Dimension("matrices of different sizes".into()));
    }
    let lattice = intertwiner_lattice(a, b, m);
    let d = lattice.rows();
    if d == 0 {
        return Ok(Intertwiner::None);
    }
    let basis = lll_reduce(&lattice);

    if (m as u64 + 1).checked_pow(d as u32).is_some_and(|size| size <= GRID_CAP) {
        let mut g = BigInt::zero();
        for_each_in_box(d, 0, m as i64, |lambda| {
            let det = determinant(&combine(&basis, lambda, m)).expect("square");
            g = g.gcd(&det);
            g.is_one()
        });
        if !g.is_one() {
            return Ok(Intertwiner::None);
        }
    }

    let mut budget = SEARCH_CAP;
    let mut found = None;
    for r in 0..=box_bound as i64 {
        let hit = for_each_in_box(d, -r, r, |lambda| {
            if lambda.iter().map(|x| x.abs()).max() != Some(r) {
                return false;
            }
            if budget == 0 {
                return true;
            }
            budget -= 1;
            let q = combine(&basis, lambda, m);
            if determinant(&q).expect("square").abs().is_one() {
                found = Some(q);
                return true;
            }
            false
        });
        if let Some(q) = found.take() {
            return Ok(Intertwiner::Found(q));
        }
        if hit {
            break;
        }
    }
    Ok(Intertwiner::Undecided { box_bound })
}

#[derive(Clone, Copy, Debug)]
pub struct IsoConfig {
    pub depth: usize,
    pub box_bound: u64,
    pub image_cap: usize,
    /// Cap on the number of generator tuples explored.
    pub tuple_cap: usize,
}

impl Default for IsoConfig {
    fn default() -> Self {
        Self { depth: 6, box_bound: 5, image_cap: DEFAULT_IMAGE_CAP, tuple_cap: 200_000 }
    }
}

#[derive(Clone, Debug)]
pub enum IsoReport {
    /// A verified automorphism `Γ_A → Γ_B` given by `Φ_{φ,Q,0}`.
    Yes {
        hom: TypeIHom,
    },
    No {
        reason: &'static str,
    },
    Undecided {
        depth: usize,
        box_bound: u64,
    },
}

impl IsoReport {
    pub fn exit_code(&self) -> i32 {
        match self {
            IsoReport::Yes { .. } => 0,
            IsoReport::No { .. } => 1,
            IsoReport::Undecided { .. } => 2,
        }
    }
}

impl fmt::Display for IsoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoReport::Yes { hom } => write!(f, "YES phi: {} Q: {}", hom.phi(), hom.q()),
            IsoReport::No { reason } if *reason == "orbit-exhausted" => write!(f, "NO {reason}"),
            IsoReport::No { reason } => write!(f, "NO invariant={reason}"),
            IsoReport::Undecided { depth, box_bound } => write!(f, "UNDECIDED depth={depth} box={box_bound}"),
        }
    }
}

/// Elementary Nielsen automorphisms of `F_n` as image lists.
fn nielsen_moves(n: usize) -> Vec<Vec<Word>> {
    let gens: Vec<Word> = (1..=n).map(Word::generator).collect();
    let mut moves = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut im = gens.clone();
                im[i] = gens[i].mul(&gens[j]);
                moves.push(im);
            }
        }
    }
    for i in 0..n {
        let mut im = gens.clone();
        im[i] = gens[i].inverse();
        moves.push(im);
        for j in i + 1..n {
            let mut im = gens.clone();
            im.swap(i, j);
            moves.push(im);
        }
    }
    moves
}

fn tuple_product(tuple: &[IntMat], w: &Word, m: usize) -> Result<IntMat> {
    let mut acc = Matrix::identity(m);
    for &l in w.letters() {
        let x = &tuple[l.unsigned_abs() as usize - 1];
        acc = if l > 0 { &acc * x } else { &acc * &crate::linalg::unimodular_inverse(x)? };
    }
    Ok(acc)
}

/// Searches for an isomorphism `Γ_A → Γ_B` when both actions are finite.
///
/// Tuples `(B_{x_1φ}, …, B_{x_nφ})` for `φ ∈ Aut(F_n)` form a finite orbit
/// under elementary Nielsen moves, explored breadth first. Each tuple whose
/// generators have the characteristic polynomials of the `A_i` is passed to
/// [`intertwiner_search`]. A closed orbit in which every tuple is certified
/// impossible gives `No`.
pub fn ip_finite(ga: &Group, gb: &Group, cfg: &IsoConfig) -> Result<IsoReport> {
    if let InvariantCheck::Mismatch(reason) = iso_invariants(ga, gb, cfg.image_cap)? {
        return Ok(IsoReport::No { reason });
    }
    let (n, m) = (ga.n(), ga.m());
    let a: Vec<IntMat> = ga.action().to_vec();
    let a_polys: Vec<IntPoly> = a.iter().map(charpoly_of).collect();
    let moves = nielsen_moves(n);

    let start: Vec<IntMat> = gb.action().to_vec();
    let mut seen: HashSet<Vec<IntMat>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue: VecDeque<(Vec<IntMat>, FreeEndo, usize)> = VecDeque::new();
    queue.push_back((start, FreeEndo::identity(n), 0));
    let mut complete = true;
    while let Some((tuple, phi, depth)) = queue.pop_front() {
        if tuple.iter().zip(&a_polys).all(|(t, p)| charpoly_of(t) == *p) {
            match intertwiner_search(&a, &tuple, cfg.box_bound)? {
                Intertwiner::Found(q) => {
                    let hom = TypeIHom::new(ga, gb, phi, q, Matrix::zeros(n, m))?
                        .verified()
                        .map_err(|_| FabfError::Defect("intertwiner failed verification".into()))?;
                    let class = Hom::TypeI(hom.clone()).morphism_class()?;
                    if !class.auto {
                        return Err(FabfError::Defect("isomorphism witness is not bijective".into()));
                    }
                    return Ok(IsoReport::Yes { hom });
                }
                Intertwiner::None => {}
                Intertwiner::Undecided { .. } => complete = false,
            }
        }
        if depth >= cfg.depth {
            complete = false;
            continue;
        }
        for mv in &moves {
            let next = mv.iter().map(|w| tuple_product(&tuple, w, m)).collect::<Result<Vec<_>>>()?;
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cfg.tuple_cap {
                complete = false;
                break;
            }
            seen.insert(next.clone());
            // x_i(νφ) = (x_iν)φ
            let images = mv.iter().map(|w| w.substitute(phi.images())).collect::<Result<Vec<_>>>()?;
            queue.push_back((next, FreeEndo::new(n, images)?, depth + 1));
        }
    }
    Ok(if complete {
        IsoReport::No { reason: "orbit-exhausted" }
    } else {
        IsoReport::Undecided { depth: cfg.depth, box_bound: cfg.box_bound }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    fn mat(rows: &[&[i64]]) -> IntMat {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()).unwrap()
    }

    fn sign() -> Group {
        GroupData::new(vec![mat(&[&[-1]]), mat(&[&[1]])]).unwrap()
    }

    #[test]
    fn images() {
        let t = GroupData::trivial(2, 2).unwrap();
        assert!(matches!(image_bfs(&t, 10), ImageResult::Finite(ref i) if i.order() == 1));
        let ImageResult::Finite(img) = image_bfs(&sign(), 10) else { panic!() };
        assert_eq!(img.order(), 2);
        let u = GroupData::new(vec![mat(&[&[1, 1], &[0, 1]]), Matrix::identity(2)]).unwrap();
        assert!(matches!(image_bfs(&u, 100), ImageResult::NotFiniteWithinCap { cap: 100 }));
    }

    #[test]
    fn kernels() {
        let t = GroupData::trivial(2, 1).unwrap();
        assert_eq!(kernel_basis(&t, 10).unwrap().len(), 2);
        let g = sign();
        let basis = kernel_basis(&g, 10).unwrap();
        assert_eq!(basis.len(), 3);
        for w in &basis {
            assert!(g.matrix_of_word(w).unwrap().is_identity());
        }
    }

    #[test]
    fn invariants() {
        let g = sign();
        assert_eq!(iso_invariants(&g, &g, 100).unwrap(), InvariantCheck::Inconclusive);
        let t = GroupData::trivial(2, 1).unwrap();
        assert_eq!(iso_invariants(&g, &t, 100).unwrap(), InvariantCheck::Mismatch("image-order"));
        let t3 = GroupData::trivial(3, 1).unwrap();
        assert_eq!(iso_invariants(&t, &t3, 100).unwrap(), InvariantCheck::Mismatch("rank"));
    }

    #[test]
    fn intertwiners() {
        let a = [mat(&[&[-1]]), mat(&[&[1]])];
        let b = [mat(&[&[1]]), mat(&[&[-1]])];
        assert_eq!(intertwiner_search(&a, &b, 3).unwrap(), Intertwiner::None);
        assert!(matches!(intertwiner_search(&a, &a, 3).unwrap(), Intertwiner::Found(q) if q.row(0)[0].abs().is_one()));
        let r = [mat(&[&[0, -1], &[1, 0]]), Matrix::identity(2)];
        assert!(matches!(intertwiner_search(&r, &r, 2).unwrap(), Intertwiner::Found(_)));
        // diag(1,-1) against a matrix with the same charpoly but different Z-class
        let d = [mat(&[&[1, 0], &[0, -1]])];
        let s = [mat(&[&[0, 1], &[1, 0]])];
        assert_eq!(intertwiner_search(&d, &s, 3).unwrap(), Intertwiner::None);
    }

    #[test]
    fn ip_finite_basic() {
        let g = sign();
        assert!(matches!(ip_finite(&g, &g, &IsoConfig::default()).unwrap(), IsoReport::Yes { .. }));
        let t = GroupData::trivial(2, 1).unwrap();
        let r = ip_finite(&g, &t, &IsoConfig::default()).unwrap();
        assert_eq!(r.to_string(), "NO invariant=image-order");
        // generators swapped: isomorphic through x1 ↔ x2
        let swapped = GroupData::new(vec![mat(&[&[1]]), mat(&[&[-1]])]).unwrap();
        match ip_finite(&g, &swapped, &IsoConfig::default()).unwrap() {
            IsoReport::Yes { hom } => assert!(hom.verify()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ip_finite_not_conjugate() {
        // same image order and charpolys, but diag(1,-1) and the swap are not GL_2(Z)-conjugate
        let d = GroupData::new(vec![mat(&[&[1, 0], &[0, -1]]), Matrix::identity(2)]).unwrap();
        let s = GroupData::new(vec![mat(&[&[0, 1], &[1, 0]]), Matrix::identity(2)]).unwrap();
        let r = ip_finite(&d, &s, &IsoConfig::default()).unwrap();
        assert_eq!(r.to_string(), "NO orbit-exhausted");
    }
}
