//! Stallings automata of finitely generated subgroups of `F_n`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::words::{FreeEndo, Word};

/// A folded core graph with basepoint `0`.
///
/// `adj[v]` maps a signed label to the unique neighbour reached by it;
/// every edge is stored in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupGraph {
    rank: usize,
    adj: Vec<BTreeMap<i32, usize>>,
}

struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<i32, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Self {
        Self { parent: vec![0], adj: vec![BTreeMap::new()], pending: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = v;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn half_edge(&mut self, u: usize, l: i32, v: usize) {
        match self.adj[u].get(&l) {
            Some(&t) => self.pending.push((t, v)),
            None => {
                self.adj[u].insert(l, v);
            }
        }
    }

    fn add_edge(&mut self, u: usize, l: i32, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        self.half_edge(u, l, v);
        self.half_edge(v, -l, u);
        self.fold();
    }

    fn fold(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            // keep the basepoint as a representative
            let (keep, gone) = if b == 0 { (b, a) } else { (a, b) };
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.adj[gone]);
            for (l, t) in moved {
                self.half_edge(keep, l, t);
            }
        }
    }

    fn read_loop(&mut self, w: &Word) {
        let letters = w.letters();
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { 0 } else { self.add_vertex() };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    fn finish(mut self, rank: usize) -> SubgroupGraph {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut adj: Vec<BTreeMap<i32, usize>> = vec![BTreeMap::new(); n];
        for v in 0..n {
            if roots[v] != v {
                continue;
            }
            for (&l, &t) in &self.adj[v] {
                adj[v].insert(l, roots[t]);
            }
        }
        let alive: Vec<bool> = (0..n).map(|v| roots[v] == v).collect();
        SubgroupGraph::from_parts(rank, adj, alive)
    }
}

impl SubgroupGraph {
    /// Prunes hanging trees and relabels canonically (BFS from the basepoint,
    /// labels visited in the order `1, -1, 2, -2, …`).
    fn from_parts(rank: usize, mut adj: Vec<BTreeMap<i32, usize>>, mut alive: Vec<bool>) -> Self {
        let mut stack: Vec<usize> = (1..adj.len()).filter(|&v| alive[v] && adj[v].len() <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || adj[v].len() > 1 || v == 0 {
                continue;
            }
            alive[v] = false;
            let edges = std::mem::take(&mut adj[v]);
            for (l, t) in edges {
                adj[t].remove(&-l);
                if t != 0 && adj[t].len() <= 1 {
                    stack.push(t);
                }
            }
        }
        let order = |l: &i32| (l.unsigned_abs(), *l < 0);
        let mut index: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut queue = VecDeque::from([0usize]);
        let mut seq = vec![0usize];
        while let Some(v) = queue.pop_front() {
            let mut labels: Vec<i32> = adj[v].keys().copied().collect();
            labels.sort_by_key(order);
            for l in labels {
                let t = adj[v][&l];
                if let Entry::Vacant(e) = index.entry(t) {
                    e.insert(seq.len());
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let new_adj = seq.iter().map(|&v| adj[v].iter().map(|(&l, t)| (l, index[t])).collect()).collect();
        SubgroupGraph { rank, adj: new_adj }
    }

    /// Folded core automaton of the subgroup generated by `gens` in `F_rank`.
    pub fn build_and_fold(rank: usize, gens: &[Word]) -> Self {
        let mut f = Folder::new();
        for g in gens {
            f.read_loop(g);
        }
        f.finish(rank)
    }

    /// Builds from an explicit edge list `(source, generator index, target)`
    /// with basepoint `0`, then folds.
    pub fn from_edges(rank: usize, vertices: usize, edges: &[(usize, usize, usize)]) -> Self {
        let mut f = Folder::new();
        for _ in 1..vertices.max(1) {
            f.add_vertex();
        }
        for &(u, i, v) in edges {
            f.add_edge(u, i as i32, v);
        }
        f.finish(rank)
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of (positively oriented) edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.keys().filter(|&&l| l > 0).count()).sum()
    }

    pub fn member(&self, w: &Word) -> bool {
        let mut v = 0;
        for l in w.letters() {
            match self.adj[v].get(l) {
                Some(&t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Free basis read off a BFS spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.vertex_count();
        let mut path: Vec<Option<Word>> = vec![None; n];
        let mut tree_edge: Vec<Option<(usize, i32)>> = vec![None; n];
        path[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let pv = path[v].clone().expect("visited");
            for (&l, &t) in &self.adj[v] {
                if path[t].is_none() {
                    path[t] = Some(pv.mul(&Word::from_letters([l])));
                    tree_edge[t] = Some((v, l));
                    queue.push_back(t);
                }
            }
        }
        let mut out = Vec::new();
        for v in 0..n {
            for (&l, &t) in &self.adj[v] {
                if l < 0 || tree_edge[t] == Some((v, l)) || tree_edge[v] == Some((t, -l)) {
                    continue;
                }
                let pv = path[v].as_ref().expect("connected");
                let pt = path[t].as_ref().expect("connected");
                out.push(pv.mul(&Word::from_letters([l])).mul(&pt.inverse()));
            }
        }
        out
    }

    /// Index in `F_rank` when every vertex carries all `2·rank` labels.
    pub fn index(&self) -> Option<usize> {
        let full = self.adj.iter().all(|m| (1..=self.rank as i32).all(|i| m.contains_key(&i) && m.contains_key(&-i)));
        full.then_some(self.vertex_count())
    }

    /// True for the one-vertex graph carrying every generator: the subgroup is `F_rank`.
    pub fn is_rose(&self) -> bool {
        self.vertex_count() == 1 && self.index() == Some(1)
    }

    /// Edges as `(source, signed label, target)` in canonical order.
    pub fn edges(&self) -> Vec<(usize, i32, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(v, m)| m.iter().filter(|(l, _)| **l > 0).map(move |(&l, &t)| (v, l, t)))
            .collect()
    }
}

/// What [`subgroup_query`] should compute.
#[derive(Clone, Debug)]
pub enum SubgroupQuery<'a> {
    Member(&'a Word),
    Rank,
    Basis,
    Index,
    Equals(&'a SubgroupGraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupAnswer {
    Bool(bool),
    Count(usize),
    /// `None` when the index is infinite.
    Index(Option<usize>),
    Basis(Vec<Word>),
}

pub fn subgroup_query(g: &SubgroupGraph, q: SubgroupQuery<'_>) -> SubgroupAnswer {
    match q {
        SubgroupQuery::Member(w) => SubgroupAnswer::Bool(g.member(w)),
        SubgroupQuery::Rank => SubgroupAnswer::Count(g.rank()),
        SubgroupQuery::Basis => SubgroupAnswer::Basis(g.basis()),
        SubgroupQuery::Index => SubgroupAnswer::Index(g.index()),
        SubgroupQuery::Equals(h) => SubgroupAnswer::Bool(g == h),
    }
}

/// Injectivity: the images generate a subgroup of rank `n`.
pub fn is_injective(phi: &FreeEndo) -> bool {
    let g = SubgroupGraph::build_and_fold(phi.target_rank(), phi.images());
    g.rank() == phi.source_rank() && phi.images().iter().all(|w| !w.is_identity())
}

/// Surjectivity: the images fold to the rose.
pub fn is_surjective(phi: &FreeEndo) -> bool {
    SubgroupGraph::build_and_fold(phi.target_rank(), phi.images()).is_rose()
}

/// For each `w` in the image of `phi`, attempts to find a preimage word.
///
/// Folds the images while recording on every edge a source word whose
/// image equals the label read along it; for a surjective `phi` this yields
/// a preimage of every target generator.
pub fn generator_preimages(phi: &FreeEndo) -> Option<Vec<Word>> {
    // edges: (u, label > 0, v, source word)
    let mut edges: Vec<(usize, i32, usize, Word)> = Vec::new();
    let mut next_vertex = 1usize;
    for (i, img) in phi.images().iter().enumerate() {
        let letters = img.letters();
        let mut cur = 0;
        for (j, &l) in letters.iter().enumerate() {
            let nxt = if j + 1 == letters.len() {
                0
            } else {
                next_vertex += 1;
                next_vertex - 1
            };
            let src = if j == 0 { Word::generator(i + 1) } else { Word::identity() };
            if l > 0 {
                edges.push((cur, l, nxt, src));
            } else {
                edges.push((nxt, -l, cur, src.inverse()));
            }
            cur = nxt;
        }
    }
    // oriented view of edge e at vertex x: (label, other end, source word read leaving x)
    let view = |e: &(usize, i32, usize, Word), x: usize| -> Vec<(i32, usize, Word)> {
        let mut out = Vec::new();
        if e.0 == x {
            out.push((e.1, e.2, e.3.clone()));
        }
        if e.2 == x {
            out.push((-e.1, e.0, e.3.inverse()));
        }
        out
    };
    'outer: loop {
        for x in 0..next_vertex {
            let incident: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].0 == x || edges[k].2 == x).collect();
            for a in 0..incident.len() {
                for b in a + 1..incident.len() {
                    let (ea, eb) = (incident[a], incident[b]);
                    for (la, ta, sa) in view(&edges[ea], x) {
                        for (lb, tb, sb) in view(&edges[eb], x) {
                            if la != lb {
                                continue;
                            }
                            if ta != tb {
                                // re-base one endpoint so both edges carry the same word
                                let (keep, gone, c) = if tb == 0 {
                                    (tb, ta, sb.inverse().mul(&sa))
                                } else {
                                    (ta, tb, sa.inverse().mul(&sb))
                                };
                                for e in edges.iter_mut() {
                                    if e.0 == gone && e.2 == gone {
                                        e.3 = e.3.conj(&c.inverse());
                                    } else if e.0 == gone {
                                        e.3 = c.mul(&e.3);
                                    } else if e.2 == gone {
                                        e.3 = e.3.mul(&c.inverse());
                                    }
                                }
                                for e in edges.iter_mut() {
                                    if e.0 == gone {
                                        e.0 = keep;
                                    }
                                    if e.2 == gone {
                                        e.2 = keep;
                                    }
                                }
                            }
                            edges.remove(eb);
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    loop {
        let mut degree = vec![0usize; next_vertex];
        for e in &edges {
            degree[e.0] += 1;
            degree[e.2] += 1;
        }
        let before = edges.len();
        edges.retain(|e| !((e.0 != 0 && degree[e.0] == 1) || (e.2 != 0 && degree[e.2] == 1)));
        if edges.len() == before {
            break;
        }
    }
    // the rose has one vertex with a single loop per generator
    let mut out = vec![None; phi.target_rank()];
    for e in &edges {
        if e.0 == 0 && e.2 == 0 {
            out[e.1 as usize - 1] = Some(e.3.clone());
        } else {
            return None;
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    #[test]
    fn single_loop_and_empty() {
        let g = SubgroupGraph::build_and_fold(2, &[w(&[1])]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), vec![(0, 1, 0)]);
        let e = SubgroupGraph::build_and_fold(2, &[]);
        assert_eq!(e.vertex_count(), 1);
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.rank(), 0);
    }

    #[test]
    fn square_and_loop() {
        let g = SubgroupGraph::build_and_fold(2, &[w(&[1, 1]), w(&[2])]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1, 1), (0, 2, 0), (1, 1, 0)]);
        assert!(g.member(&w(&[1, 1])));
        assert!(!g.member(&w(&[1])));
        assert_eq!(g.rank(), 2);
        assert_eq!(g.index(), None);
    }

    #[test]
    fn folding_identifies_common_prefixes() {
        // <x1 x2, x1 x2^-1> = <x1 x2, x2^2> has rank 2 and the graph has 2 vertices
        let g = SubgroupGraph::build_and_fold(2, &[w(&[1, 2]), w(&[1, -2])]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.rank(), 2);
        assert!(g.member(&w(&[1, 2, 2, -1])));
        assert_eq!(g, SubgroupGraph::build_and_fold(2, &g.basis()));
    }

    #[test]
    fn sign_kernel_has_rank_three() {
        // Cayley graph of x1 -> -1, x2 -> 1 on {1, -1}
        let edges = [(0, 1, 1), (1, 1, 0), (0, 2, 0), (1, 2, 1)];
        let g = SubgroupGraph::from_edges(2, 2, &edges);
        assert_eq!(g.index(), Some(2));
        assert_eq!(g.rank(), 3);
        for b in g.basis() {
            assert!(g.member(&b));
        }
        assert_eq!(subgroup_query(&g, SubgroupQuery::Equals(&g)), SubgroupAnswer::Bool(true));
    }

    #[test]
    fn injective_and_surjective_endos() {
        let phi = FreeEndo::new(2, vec![w(&[1, 2]), w(&[2])]).unwrap();
        assert!(is_injective(&phi) && is_surjective(&phi));
        let psi = FreeEndo::new(2, vec![w(&[1, 1]), w(&[2])]).unwrap();
        assert!(is_injective(&psi) && !is_surjective(&psi));
        let chi = FreeEndo::new(2, vec![w(&[1]), w(&[1])]).unwrap();
        assert!(!is_injective(&chi));
    }

    #[test]
    fn preimages_of_generators() {
        let phi = FreeEndo::new(2, vec![w(&[1, 2]), w(&[2])]).unwrap();
        let pre = generator_preimages(&phi).unwrap();
        for (k, p) in pre.iter().enumerate() {
            assert_eq!(phi.apply(p).unwrap(), Word::generator(k + 1));
        }
        // surjection F_3 -> F_2
        let rho = FreeEndo::new(2, vec![w(&[1, 2, 1]), w(&[1, 2]), w(&[2, 2])]).unwrap();
        let pre = generator_preimages(&rho).unwrap();
        for (k, p) in pre.iter().enumerate() {
            assert_eq!(rho.apply(p).unwrap(), Word::generator(k + 1));
        }
        let psi = FreeEndo::new(2, vec![w(&[1, 1]), w(&[2])]).unwrap();
        assert!(generator_preimages(&psi).is_none());
    }
}
