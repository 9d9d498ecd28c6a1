//! Finite flag complexes given by their 1-skeleton.
//!
//! Every clique of the adjacency graph is a simplex, so the complex is fully
//! determined by a symmetric boolean matrix. Rows are stored as [`VertexSet`]s
//! so that induced subcomplexes and neighbourhood intersections are word
//! operations.

mod chromatic;
mod cliques;
mod text;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub use text::{complex_hash, parse_complex, write_complex};

/// Vertex cap for complexes that are only ever inspected, never subset-enumerated.
pub const STATIC_VERTEX_CAP: usize = 4096;

/// Sorted list of pairwise adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Vec<Option<String>>,
}

impl FlagComplex {
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_graph_with_cap(n, edges, STATIC_VERTEX_CAP)
    }

    pub fn from_graph_with_cap(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::TooLarge {
                what: "vertex count",
                count: n as u128,
                cap: cap as u128,
            });
        }
        let mut adj = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, len: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(FlagComplex {
            n,
            adj,
            labels: vec![None; n],
        })
    }

    /// The complex with no vertices.
    pub fn empty() -> Self {
        FlagComplex {
            n: 0,
            adj: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        if v >= self.n {
            return Err(Error::IndexOutOfRange { index: v, len: self.n });
        }
        self.labels[v] = Some(label.into());
        Ok(())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_width(&self, s: &VertexSet) -> Result<()> {
        if s.width() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                found: s.width(),
            });
        }
        Ok(())
    }

    /// Induced subcomplex on `s`; vertices are renumbered in increasing order.
    pub fn induced(&self, s: &VertexSet) -> Result<FlagComplex> {
        self.check_width(s)?;
        let keep: Vec<usize> = s.iter().collect();
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            position[v] = i;
        }
        let m = keep.len();
        let mut adj = vec![VertexSet::empty(m); m];
        for (i, &v) in keep.iter().enumerate() {
            for w in self.adj[v].iter() {
                if s.contains(w) {
                    adj[i].insert(position[w]);
                }
            }
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(FlagComplex { n: m, adj, labels })
    }

    pub fn is_simplex(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| v < self.n)
            && vertices.iter().enumerate().all(|(i, &u)| {
                vertices[i + 1..]
                    .iter()
                    .all(|&w| u != w && self.adjacent(u, w))
            })
    }

    /// Dimension of the complex; -1 when empty.
    pub fn dimension(&self) -> isize {
        self.clique_number() as isize - 1
    }

    /// `l_k` = number of k-simplices for k = 0..=dim; empty for the empty complex.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = Vec::new();
        self.for_each_clique(|c| {
            let k = c.len() - 1;
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        });
        f
    }

    /// Charney-Davis curvature `sum_{k=-1}^{n-1} (-1/2)^{k+1} l_k` with `l_{-1} = 1`,
    /// so that `kappa_2 = 1 - l_0/2 + l_1/4`.
    pub fn charney_davis(&self, n: usize) -> BigRational {
        let f = self.f_vector();
        let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let mut total = BigRational::one();
        let mut power = BigRational::one();
        for k in 0..n {
            power *= &minus_half;
            let count = f.get(k).copied().unwrap_or(0);
            if count != 0 {
                total += &power * BigRational::from_integer(BigInt::from(count));
            }
        }
        total
    }

    /// Connected components of the 1-skeleton, each sorted; components ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subcomplex induced by `s` is nonempty and connected, without building it.
    pub fn induces_connected(&self, s: &VertexSet) -> Result<bool> {
        self.check_width(s)?;
        let Some(start) = s.first() else {
            return Ok(false);
        };
        let mut reached = VertexSet::empty(self.n);
        reached.insert(start);
        let mut frontier = reached.clone();
        loop {
            let mut next = VertexSet::empty(self.n);
            for v in frontier.iter() {
                next.or_assign(&self.adj[v]);
            }
            next.and_assign(s);
            let mut new = next;
            new.difference_assign(&reached);
            if new.is_empty() {
                break;
            }
            reached.or_assign(&new);
            frontier = new;
        }
        Ok(reached.len() == s.len())
    }

    /// Girth of the 1-skeleton (`None` = acyclic) and whether no induced 4-cycle exists.
    pub fn girth_and_square_free(&self) -> (Option<usize>, bool) {
        (self.girth(), self.square_free())
    }

    fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let cycle = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    fn square_free(&self) -> bool {
        for u in 0..self.n {
            for w in (u + 1)..self.n {
                if self.adjacent(u, w) {
                    continue;
                }
                let common: Vec<usize> = match self.adj[u].intersection(&self.adj[w]) {
                    Ok(c) => c.iter().collect(),
                    Err(_) => unreachable!(),
                };
                for (i, &x) in common.iter().enumerate() {
                    if common[i + 1..].iter().any(|&y| !self.adjacent(x, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Link and star of a simplex. Both are induced subcomplexes because the complex is flag.
    pub fn link_star(&self, sigma: &Simplex) -> Result<(FlagComplex, FlagComplex)> {
        if sigma.is_empty() || !self.is_simplex(sigma.vertices()) {
            return Err(Error::NotASimplex(sigma.vertices().to_vec()));
        }
        let mut common = self.full_set();
        for &v in sigma.vertices() {
            common.and_assign(&self.adj[v]);
        }
        let link = self.induced(&common)?;
        let mut star_set = common;
        for &v in sigma.vertices() {
            star_set.insert(v);
        }
        let star = self.induced(&star_set)?;
        Ok((link, star))
    }

    /// Vertex set of the link of `sigma` (common neighbours of its vertices).
    pub fn link_vertices(&self, sigma: &[usize]) -> VertexSet {
        let mut common = self.full_set();
        for &v in sigma {
            common.and_assign(&self.adj[v]);
        }
        common
    }

    /// Nonempty, pure of dimension `d`, and gallery connected through codimension-1 faces.
    pub fn is_chamber_complex(&self, d: usize) -> bool {
        if self.n == 0 {
            return false;
        }
        let maximal = self.maximal_cliques();
        if maximal.iter().any(|c| c.len() != d + 1) {
            return false;
        }
        // chambers sharing a d-1 face; bucket by face
        let mut faces: std::collections::HashMap<Vec<usize>, Vec<usize>> =
            std::collections::HashMap::new();
        for (i, c) in maximal.iter().enumerate() {
            for skip in 0..c.len() {
                let face: Vec<usize> = c
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                faces.entry(face).or_default().push(i);
            }
        }
        let mut uf = UnionFind::new(maximal.len());
        for members in faces.values() {
            for w in members.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let root = uf.find(0);
        (1..maximal.len()).all(|i| uf.find(i) == root)
    }

    /// Join with a single new vertex adjacent to everything (the cone).
    pub fn cone(&self) -> FlagComplex {
        let mut edges = self.edges();
        edges.extend((0..self.n).map(|v| (v, self.n)));
        let mut out = FlagComplex::from_graph(self.n + 1, &edges).expect("cone of a valid complex");
        for (v, l) in self.labels.iter().enumerate() {
            out.labels[v] = l.clone();
        }
        out
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &FlagComplex) -> FlagComplex {
        let shift = self.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        let mut out = FlagComplex::from_graph(self.n + other.n, &edges).expect("disjoint union");
        for (v, l) in self.labels.iter().chain(other.labels.iter()).enumerate() {
            out.labels[v] = l.clone();
        }
        out
    }

    /// Adjacency rows as bit masks; `None` when the complex has more than 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.adj.iter().map(|r| r.to_mask()).collect())
    }
}

/// Union-find with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Connectivity of the subgraph induced by `mask` on a graph with at most 64 vertices.
#[inline]
pub fn mask_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        next &= mask & !reached;
        reached |= next;
        frontier = next;
    }
    reached == mask
}

#[cfg(test)]
mod tests;
