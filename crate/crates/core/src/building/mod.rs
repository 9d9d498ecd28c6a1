//! The spherical building of type `A_k` over `F_p`: proper nonzero subspaces
//! of `F_p^{k+1}` ordered by inclusion, with chambers, panels and an all-pairs
//! gallery distance table.

mod subspace;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::flag_complex::FlagComplex;
use crate::vertex_set::VertexSet;

pub use subspace::{gaussian_binomial, is_prime, Subspace};

/// Default caps; the distance table is `chambers^2` bytes.
pub const VERTEX_CAP: usize = 4096;
pub const CHAMBER_CAP: usize = 8192;

/// A codimension-1 flag: a chamber with the subspace of dimension `cotype` removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Panel {
    pub vertices: Vec<usize>,
    pub cotype: usize,
}

#[derive(Clone, Debug)]
pub struct Building {
    k: usize,
    p: u32,
    vertices: Vec<Subspace>,
    vertex_index: HashMap<Subspace, usize>,
    complex: FlagComplex,
    /// Complete flags as vertex tuples of dimensions `1..=k`.
    chambers: Vec<Vec<usize>>,
    chamber_index: HashMap<Vec<usize>, usize>,
    panels: Vec<Panel>,
    /// `panel_star[i]`: chambers containing panel `i`, ascending.
    panel_star: Vec<Vec<usize>>,
    /// `chamber_panels[c][j]`: panel obtained by dropping the dimension `j+1` subspace.
    chamber_panels: Vec<Vec<usize>>,
    vertex_chambers: Vec<Vec<usize>>,
    distance: Vec<u8>,
    diameter: usize,
}

/// Outcome of the apartment-covering search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Success,
    Failure,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    /// `(chamber, opposite witness)` for every chamber examined.
    pub per_chamber: Vec<(usize, Option<usize>)>,
    /// Vertices of `X` lying in no chamber contained in `X`.
    pub uncovered_vertices: Vec<usize>,
    pub verdict: CoverVerdict,
}

impl Building {
    /// `Δ_{k,p}`: the building of proper nonzero subspaces of `F_p^{k+1}`.
    pub fn type_a(k: usize, p: u32) -> Result<Building> {
        Self::type_a_with_caps(k, p, VERTEX_CAP, CHAMBER_CAP)
    }

    pub fn type_a_with_caps(k: usize, p: u32, vertex_cap: usize, chamber_cap: usize) -> Result<Building> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
        }
        let n = (k + 1) as u32;
        let vertex_count: u128 = (1..n).fold(0u128, |acc, d| acc.saturating_add(gaussian_binomial(n, d, p as u64)));
        if vertex_count > vertex_cap as u128 {
            return Err(Error::TooLarge {
                what: "building vertices",
                count: vertex_count,
                cap: vertex_cap as u128,
            });
        }
        let chamber_count: u128 = (1..=n).fold(1u128, |acc, i| acc.saturating_mul(gaussian_binomial(i, 1, p as u64)));
        if chamber_count > chamber_cap as u128 {
            return Err(Error::TooLarge {
                what: "building chambers",
                count: chamber_count,
                cap: chamber_cap as u128,
            });
        }

        let mut vertices = Vec::new();
        let mut first_of_dim = vec![0usize; k + 2];
        for d in 1..=k {
            first_of_dim[d] = vertices.len();
            vertices.extend(Subspace::all_of_dim(p, k + 1, d)?);
        }
        first_of_dim[k + 1] = vertices.len();
        let vertex_index: HashMap<Subspace, usize> =
            vertices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        // proper containment between every pair of dimensions
        let nv = vertices.len();
        let mut edges = Vec::new();
        // up[v]: vertices of dimension dim(v)+1 containing v
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for u in 0..nv {
            for w in first_of_dim[vertices[u].dim() + 1]..nv {
                if vertices[u].is_subspace_of(&vertices[w]) {
                    edges.push((u, w));
                    if vertices[w].dim() == vertices[u].dim() + 1 {
                        up[u].push(w);
                    }
                }
            }
        }
        let mut complex = FlagComplex::from_graph(nv, &edges)?;
        for (i, s) in vertices.iter().enumerate() {
            complex.set_label(i, s.label())?;
        }

        // complete flags by extension along `up`, already in lexicographic order
        let mut chambers = Vec::with_capacity(chamber_count as usize);
        let mut stack: Vec<usize> = Vec::with_capacity(k);
        fn extend(up: &[Vec<usize>], k: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if stack.len() == k {
                out.push(stack.clone());
                return;
            }
            let last = *stack.last().unwrap();
            for &w in &up[last] {
                stack.push(w);
                extend(up, k, stack, out);
                stack.pop();
            }
        }
        for v in first_of_dim[1]..first_of_dim[2] {
            stack.push(v);
            extend(&up, k, &mut stack, &mut chambers);
            stack.pop();
        }
        debug_assert_eq!(chambers.len() as u128, chamber_count);
        let chamber_index: HashMap<Vec<usize>, usize> =
            chambers.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

        let mut panel_ids: HashMap<Panel, usize> = HashMap::new();
        let mut panels = Vec::new();
        let mut panel_star: Vec<Vec<usize>> = Vec::new();
        let mut chamber_panels = Vec::with_capacity(chambers.len());
        let mut vertex_chambers = vec![Vec::new(); nv];
        for (c, flag) in chambers.iter().enumerate() {
            for &v in flag {
                vertex_chambers[v].push(c);
            }
            let mut mine = Vec::with_capacity(k);
            for drop in 0..k {
                let panel = Panel {
                    vertices: flag
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect(),
                    cotype: drop + 1,
                };
                let id = *panel_ids.entry(panel.clone()).or_insert_with(|| {
                    panels.push(panel);
                    panel_star.push(Vec::new());
                    panels.len() - 1
                });
                panel_star[id].push(c);
                mine.push(id);
            }
            chamber_panels.push(mine);
        }
        // renumber panels into sorted order
        let mut order: Vec<usize> = (0..panels.len()).collect();
        order.sort_by(|&a, &b| panels[a].cmp(&panels[b]));
        let mut rank = vec![0; panels.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let panels: Vec<Panel> = order.iter().map(|&i| panels[i].clone()).collect();
        let panel_star: Vec<Vec<usize>> = order.iter().map(|&i| panel_star[i].clone()).collect();
        for mine in chamber_panels.iter_mut() {
            for id in mine.iter_mut() {
                *id = rank[*id];
            }
        }

        let (distance, diameter) = distance_table(chambers.len(), &chamber_panels, &panel_star);

        Ok(Building {
            k,
            p,
            vertices,
            vertex_index,
            complex,
            chambers,
            chamber_index,
            panels,
            panel_star,
            chamber_panels,
            vertex_chambers,
            distance,
            diameter,
        })
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn thickness(&self) -> usize {
        self.p as usize + 1
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn vertex_of(&self, s: &Subspace) -> Option<usize> {
        self.vertex_index.get(s).copied()
    }

    pub fn complex(&self) -> &FlagComplex {
        &self.complex
    }

    /// Type function `dim - 1`, a proper coloring with `k` colors.
    pub fn type_coloring(&self) -> Vec<usize> {
        self.vertices.iter().map(|s| s.dim() - 1).collect()
    }

    pub fn chambers(&self) -> &[Vec<usize>] {
        &self.chambers
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    pub fn chamber_of(&self, flag: &[usize]) -> Option<usize> {
        self.chamber_index.get(flag).copied()
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    pub fn panel_star(&self, panel: usize) -> &[usize] {
        &self.panel_star[panel]
    }

    /// Panels of chamber `c`, indexed by the dimension dropped minus one.
    pub fn chamber_panels(&self, c: usize) -> &[usize] {
        &self.chamber_panels[c]
    }

    pub fn chambers_containing_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_chambers[v]
    }

    /// Maximal gallery distance, `k(k+1)/2` in type `A_k`.
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    fn check_chamber(&self, c: usize) -> Result<()> {
        if c < self.chambers.len() {
            Ok(())
        } else {
            Err(Error::UnknownChamber(c))
        }
    }

    #[inline]
    fn dist(&self, c: usize, d: usize) -> usize {
        self.distance[c * self.chambers.len() + d] as usize
    }

    pub fn gallery_distance(&self, c: usize, d: usize) -> Result<usize> {
        self.check_chamber(c)?;
        self.check_chamber(d)?;
        Ok(self.dist(c, d))
    }

    /// Chambers sharing a panel with `c`.
    pub fn adjacent_chambers(&self, c: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.chamber_panels[c]
            .iter()
            .flat_map(|&p| self.panel_star[p].iter().copied())
            .filter(|&d| d != c)
            .collect();
        out.sort_unstable();
        out
    }

    /// Chambers whose vertex set contains `simplex`, ascending.
    pub fn chambers_containing(&self, simplex: &[usize]) -> Result<Vec<usize>> {
        if !self.complex.is_simplex(simplex) {
            return Err(Error::NotASimplex(simplex.to_vec()));
        }
        let Some(&first) = simplex.first() else {
            return Ok((0..self.chambers.len()).collect());
        };
        Ok(self.vertex_chambers[first]
            .iter()
            .copied()
            .filter(|&c| simplex.iter().all(|v| self.chambers[c].contains(v)))
            .collect())
    }

    /// `pr_A(C)`: the unique chamber containing `simplex` closest to `c`.
    pub fn projection(&self, simplex: &[usize], c: usize) -> Result<usize> {
        self.check_chamber(c)?;
        let candidates = self.chambers_containing(simplex)?;
        self.unique_minimizer(&candidates, c)
    }

    /// Projection onto panel `panel` (an index into [`Building::panels`]).
    pub fn project_to_panel(&self, panel: usize, c: usize) -> Result<usize> {
        self.check_chamber(c)?;
        self.unique_minimizer(&self.panel_star[panel], c)
    }

    fn unique_minimizer(&self, candidates: &[usize], c: usize) -> Result<usize> {
        let best = candidates
            .iter()
            .map(|&e| self.dist(e, c))
            .min()
            .ok_or(Error::NotASimplex(Vec::new()))?;
        let mut winners = candidates.iter().copied().filter(|&e| self.dist(e, c) == best);
        let first = winners.next().expect("minimum attained");
        let extra = winners.count();
        if extra > 0 {
            return Err(Error::NonUniqueMinimizer {
                count: extra + 1,
                distance: best,
            });
        }
        Ok(first)
    }

    /// Whether the flags are transversal: `V_i + W_{k+1-i}` is the whole space for all `i`.
    pub fn transversal(&self, c: usize, d: usize) -> Result<bool> {
        self.check_chamber(c)?;
        self.check_chamber(d)?;
        let (fc, fd) = (&self.chambers[c], &self.chambers[d]);
        Ok((0..self.k).all(|i| {
            let v = &self.vertices[fc[i]];
            let w = &self.vertices[fd[self.k - 1 - i]];
            v.sum(w).dim() == self.k + 1
        }))
    }

    pub fn is_opposite(&self, c: usize, d: usize) -> Result<bool> {
        let opp = self.gallery_distance(c, d)? == self.diameter;
        debug_assert_eq!(opp, self.transversal(c, d)?);
        Ok(opp)
    }

    /// Chambers opposite `c`, ascending.
    pub fn opposites(&self, c: usize) -> Result<Vec<usize>> {
        self.check_chamber(c)?;
        Ok((0..self.chambers.len())
            .filter(|&d| self.dist(c, d) == self.diameter)
            .collect())
    }

    /// Vertices spanned by the proper nonempty subsets of a frame of `k+1` lines.
    pub fn apartment_from_frame(&self, lines: &[usize]) -> Result<VertexSet> {
        let n = self.k + 1;
        if lines.len() != n
            || lines
                .iter()
                .any(|&v| v >= self.vertices.len() || self.vertices[v].dim() != 1)
        {
            return Err(Error::NotAFrame);
        }
        let mut total = Subspace::zero(self.p, n);
        for &l in lines {
            total = total.sum(&self.vertices[l]);
        }
        if total.dim() != n {
            return Err(Error::NotAFrame);
        }
        let mut out = VertexSet::empty(self.vertices.len());
        for mask in 1u32..((1 << n) - 1) {
            let mut span = Subspace::zero(self.p, n);
            for (i, &l) in lines.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    span = span.sum(&self.vertices[l]);
                }
            }
            out.insert(self.vertex_index[&span]);
        }
        Ok(out)
    }

    /// The frame of coordinate axes.
    pub fn standard_frame(&self) -> Vec<usize> {
        let n = self.k + 1;
        (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                let s = Subspace::span(self.p, n, &[e]).expect("prime already checked");
                self.vertex_index[&s]
            })
            .collect()
    }

    /// Chambers lying on some minimal gallery from `c` to `d`.
    pub fn convex_hull(&self, c: usize, d: usize) -> Result<Vec<usize>> {
        let cd = self.gallery_distance(c, d)?;
        Ok((0..self.chambers.len())
            .filter(|&e| self.dist(c, e) + self.dist(e, d) == cd)
            .collect())
    }

    /// Vertex support of a set of chambers.
    pub fn support(&self, chambers: &[usize]) -> VertexSet {
        let mut out = VertexSet::empty(self.vertices.len());
        for &c in chambers {
            for &v in &self.chambers[c] {
                out.insert(v);
            }
        }
        out
    }

    /// Chambers whose vertices all lie in `x`.
    pub fn chambers_within(&self, x: &VertexSet) -> Vec<usize> {
        (0..self.chambers.len())
            .filter(|&c| self.chambers[c].iter().all(|&v| x.contains(v)))
            .collect()
    }

    /// For each chamber `E` inside `x` (at most `budget` of them, ascending),
    /// look for an opposite `D` inside `x` with `conv(E, D)` inside `x`.
    pub fn covers_by_apartments(&self, x: &VertexSet, budget: usize) -> Result<CoverReport> {
        if x.width() != self.vertices.len() {
            return Err(Error::WidthMismatch {
                expected: self.vertices.len(),
                found: x.width(),
            });
        }
        let inside = self.chambers_within(x);
        let covered = self.support(&inside);
        let uncovered_vertices: Vec<usize> = x.iter().filter(|&v| !covered.contains(v)).collect();
        let mut per_chamber = Vec::new();
        for &e in inside.iter().take(budget) {
            let witness = inside.iter().copied().find(|&d| {
                self.dist(e, d) == self.diameter
                    && self
                        .convex_hull(e, d)
                        .expect("valid chambers")
                        .iter()
                        .all(|&h| self.chambers[h].iter().all(|&v| x.contains(v)))
            });
            per_chamber.push((e, witness));
        }
        let failed = per_chamber.iter().any(|(_, w)| w.is_none());
        let verdict = if x.is_empty() || inside.is_empty() || failed || !uncovered_vertices.is_empty() {
            CoverVerdict::Failure
        } else if inside.len() > budget {
            CoverVerdict::Inconclusive
        } else {
            CoverVerdict::Success
        };
        Ok(CoverReport {
            per_chamber,
            uncovered_vertices,
            verdict,
        })
    }
}

/// All-pairs gallery distance by BFS from every chamber.
fn distance_table(n: usize, chamber_panels: &[Vec<usize>], panel_star: &[Vec<usize>]) -> (Vec<u8>, usize) {
    let mut table = vec![u8::MAX; n * n];
    let mut diameter = 0;
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut table[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(c) = queue.pop_front() {
            let dc = row[c];
            for &p in &chamber_panels[c] {
                for &d in &panel_star[p] {
                    if row[d] == u8::MAX {
                        row[d] = dc + 1;
                        diameter = diameter.max(dc as usize + 1);
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    (table, diameter)
}
