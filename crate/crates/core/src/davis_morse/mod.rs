//! Finite balls in the Davis complex of a right-angled Coxeter group and the
//! height function induced by a legal coset.
//!
//! Elements of `W_L` are stored as normal forms: reduced words that are
//! lexicographically least among all reduced words for the element. Reduced
//! words of one element differ only by swapping adjacent commuting letters, so
//! the normal form is the lexicographic normal form of that trace.

mod words;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::flag_complex::FlagComplex;
use crate::homology::{ChainComplex, HomologyProfile, IntegerMatrix};
use crate::jnw::MoveSystem;
use crate::vertex_set::VertexSet;

pub use words::{exhaustive_canonical, lex_normal_form, multiply_letter, normal_form};

pub const MAX_RADIUS: usize = 8;
pub const MAX_GENERATORS: usize = 16;
pub const MAX_ELEMENTS: usize = 1 << 21;

/// The cube spanned by `base · ∏_{v ∈ τ} v` for `τ ⊆ generators`; `base` is
/// its vertex of least word length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub base: usize,
    pub generators: Vec<usize>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

/// Elements of word length at most `radius`, with the generator action and
/// every cube whose vertices all lie in the ball.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    l: FlagComplex,
    radius: usize,
    elements: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    next: Vec<Vec<Option<usize>>>,
    parities: Vec<u32>,
    cubes: Vec<Cube>,
}

/// Builds the ball by breadth-first search from the identity.
pub fn racg_ball(l: &FlagComplex, radius: usize) -> Result<CayleyBall> {
    racg_ball_with_cap(l, radius, MAX_ELEMENTS)
}

pub fn racg_ball_with_cap(l: &FlagComplex, radius: usize, max_elements: usize) -> Result<CayleyBall> {
    let n = l.vertex_count();
    if radius > MAX_RADIUS {
        return Err(Error::CapExceeded(format!("radius {radius} exceeds {MAX_RADIUS}")));
    }
    if n > MAX_GENERATORS {
        return Err(Error::CapExceeded(format!("{n} generators exceed {MAX_GENERATORS}")));
    }
    let mut elements: Vec<Vec<u8>> = vec![Vec::new()];
    let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut next: Vec<Vec<Option<usize>>> = Vec::new();
    let mut parities = vec![0u32];
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let mut row = vec![None; n];
        for (v, slot) in row.iter_mut().enumerate() {
            let w = lex_normal_form(l, &multiply_letter(l, &elements[g], v as u8));
            if w.len() > radius {
                continue;
            }
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if elements.len() >= max_elements {
                        return Err(Error::CapExceeded(format!(
                            "ball of radius {radius} has more than {max_elements} elements"
                        )));
                    }
                    let id = elements.len();
                    index.insert(w.clone(), id);
                    elements.push(w);
                    parities.push(parities[g] ^ 1 << v);
                    queue.push_back(id);
                    id
                }
            };
            *slot = Some(id);
        }
        next.push(row);
    }
    let mut ball = CayleyBall {
        l: l.clone(),
        radius,
        elements,
        index,
        next,
        parities,
        cubes: Vec::new(),
    };
    ball.cubes = ball.enumerate_cubes();
    Ok(ball)
}

impl CayleyBall {
    pub fn complex(&self) -> &FlagComplex {
        &self.l
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Normal form of element `g` as vertex indices.
    pub fn word(&self, g: usize) -> Vec<usize> {
        self.elements[g].iter().map(|&x| x as usize).collect()
    }

    pub fn length(&self, g: usize) -> usize {
        self.elements[g].len()
    }

    /// Index of the element represented by an arbitrary word, if it lies in the ball.
    pub fn find(&self, word: &[usize]) -> Option<usize> {
        let nf = normal_form(&self.l, word);
        self.index.get(&nf).copied()
    }

    /// `g · v` when it lies in the ball.
    pub fn step(&self, g: usize, v: usize) -> Option<usize> {
        self.next[g][v]
    }

    /// Letter parities of `g`, bit `v` set when `v` occurs an odd number of times.
    pub fn parity(&self, g: usize) -> u32 {
        self.parities[g]
    }

    /// Elements of the commutator subgroup: every generator occurs an even number of times.
    pub fn in_commutator(&self, g: usize) -> bool {
        self.parities[g] == 0
    }

    /// Dot-separated normal form, `e` for the identity.
    pub fn label(&self, g: usize) -> String {
        if self.elements[g].is_empty() {
            return "e".to_string();
        }
        self.elements[g]
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Undirected edges `(g, v)` with `g < g·v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (g, row) in self.next.iter().enumerate() {
            for (v, h) in row.iter().enumerate() {
                if matches!(h, Some(h) if *h > g) {
                    out.push((g, v));
                }
            }
        }
        out
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Vertices of a cube, indexed by subsets of its generators.
    pub fn cube_vertices(&self, cube: &Cube) -> Vec<usize> {
        (0usize..1 << cube.dim())
            .map(|bits| {
                let mut g = cube.base;
                for (j, &v) in cube.generators.iter().enumerate() {
                    if bits >> j & 1 == 1 {
                        g = self.next[g][v].expect("cube lies in the ball");
                    }
                }
                g
            })
            .collect()
    }

    /// Whether every generator step from `g` stays in the ball.
    pub fn is_interior(&self, g: usize) -> bool {
        self.next[g].iter().all(Option::is_some)
    }

    /// True when the ball is closed under all generators (the group is finite).
    pub fn is_whole_group(&self) -> bool {
        (0..self.len()).all(|g| self.is_interior(g))
    }

    /// Cubes `(g, σ)` with `σ` a clique of generators that all lengthen `g`.
    fn enumerate_cubes(&self) -> Vec<Cube> {
        let mut cubes = Vec::new();
        for g in 0..self.len() {
            let room = self.radius - self.length(g);
            let up: Vec<usize> = (0..self.l.vertex_count())
                .filter(|&v| matches!(self.next[g][v], Some(h) if self.length(h) > self.length(g)))
                .collect();
            let mut current = Vec::new();
            self.extend_cliques(g, &up, 0, room, &mut current, &mut cubes);
        }
        cubes.sort_by(|a, b| (a.dim(), a.base, &a.generators).cmp(&(b.dim(), b.base, &b.generators)));
        cubes
    }

    fn extend_cliques(
        &self,
        base: usize,
        up: &[usize],
        from: usize,
        room: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Cube>,
    ) {
        out.push(Cube {
            base,
            generators: current.clone(),
        });
        if current.len() == room {
            return;
        }
        for i in from..up.len() {
            let v = up[i];
            if current.iter().all(|&u| self.l.adjacent(u, v)) {
                current.push(v);
                self.extend_cliques(base, up, i + 1, room, current, out);
                current.pop();
            }
        }
    }

    /// One line per element: index, normal form, height (if given), neighbours by generator.
    pub fn dump(&self, heights: Option<&HeightAssignment>) -> String {
        let mut out = String::from("# index\tword\theight\tneighbours\n");
        for g in 0..self.len() {
            let h = heights.map_or("-".to_string(), |h| h.height(g).to_string());
            let nbrs: Vec<String> = self.next[g]
                .iter()
                .map(|x| x.map_or("-".to_string(), |x| x.to_string()))
                .collect();
            out.push_str(&format!("{g}\t{}\t{h}\t{}\n", self.label(g), nbrs.join(",")));
        }
        out
    }
}

/// `h` on the ball, together with the state `σ_0 + Σ μ` carried by every element.
#[derive(Clone, Debug)]
pub struct HeightAssignment {
    heights: Vec<i64>,
    states: Vec<VertexSet>,
    sigma0: VertexSet,
}

impl HeightAssignment {
    pub fn height(&self, g: usize) -> i64 {
        self.heights[g]
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// `σ_0 + μ_{v_1} + ... + μ_{v_k}` for any word `v_1 ... v_k` of `g`.
    pub fn state(&self, g: usize) -> &VertexSet {
        &self.states[g]
    }

    pub fn initial_state(&self) -> &VertexSet {
        &self.sigma0
    }

    /// `|h(gv) - h(g)| = 1` on every edge of the ball.
    pub fn edges_are_unit(&self, ball: &CayleyBall) -> bool {
        ball.edges().into_iter().all(|(g, v)| {
            let h = ball.step(g, v).expect("edge");
            (self.heights[h] - self.heights[g]).abs() == 1
        })
    }

    /// `h(gwv) - h(gw) = h(gv) - h(g)` on every 2-cube.
    pub fn squares_consistent(&self, ball: &CayleyBall) -> bool {
        ball.cubes().iter().filter(|c| c.dim() == 2).all(|c| {
            let [g, gv, gw, gvw] = ball.cube_vertices(c)[..] else {
                unreachable!()
            };
            self.heights[gvw] - self.heights[gw] == self.heights[gv] - self.heights[g]
        })
    }
}

/// Heights by breadth-first recursion: stepping from `g` along `v` adds one
/// when `v` lies in the current state of `g`, and subtracts one otherwise.
/// Every edge of the ball is checked, so an invalid move system surfaces as
/// [`Error::InconsistentHeight`].
pub fn assign_heights(ball: &CayleyBall, sigma0: &VertexSet, moves: &MoveSystem) -> Result<HeightAssignment> {
    let n = ball.l.vertex_count();
    for w in [sigma0.width(), moves.width()] {
        if w != n {
            return Err(Error::WidthMismatch { expected: n, found: w });
        }
    }
    let states: Vec<VertexSet> = ball
        .parities
        .iter()
        .map(|&p| {
            let mut s = sigma0.clone();
            for v in 0..n {
                if p >> v & 1 == 1 {
                    s.xor_assign(moves.move_of(v));
                }
            }
            s
        })
        .collect();
    let mut heights: Vec<Option<i64>> = vec![None; ball.len()];
    heights[0] = Some(0);
    for g in 0..ball.len() {
        let hg = heights[g].expect("breadth-first order reaches parents first");
        for v in 0..n {
            let Some(gv) = ball.next[g][v] else { continue };
            let expected = if states[g].contains(v) { hg + 1 } else { hg - 1 };
            match heights[gv] {
                Some(h) if h != expected => {
                    return Err(Error::InconsistentHeight {
                        element: ball.label(gv),
                        generator: v,
                    })
                }
                Some(_) => {}
                None => heights[gv] = Some(expected),
            }
        }
    }
    Ok(HeightAssignment {
        heights: heights.into_iter().map(|h| h.expect("ball is connected")).collect(),
        states,
        sigma0: sigma0.clone(),
    })
}

/// Ascending and descending links of an interior element.
#[derive(Clone, Debug)]
pub struct Links {
    pub ascending: FlagComplex,
    pub descending: FlagComplex,
    /// `{v : h(gv) > h(g)}`.
    pub ascending_set: VertexSet,
    /// The state carried by `g`.
    pub predicted_state: VertexSet,
}

impl Links {
    pub fn matches_prediction(&self) -> bool {
        self.ascending_set == self.predicted_state
    }
}

pub fn asc_desc_link(ball: &CayleyBall, heights: &HeightAssignment, g: usize) -> Result<Links> {
    if g >= ball.len() {
        return Err(Error::IndexOutOfRange {
            index: g,
            len: ball.len(),
        });
    }
    if ball.length(g) + 1 > ball.radius || !ball.is_interior(g) {
        return Err(Error::BoundaryElement(ball.label(g)));
    }
    let n = ball.l.vertex_count();
    let mut up = VertexSet::empty(n);
    for v in 0..n {
        let gv = ball.next[g][v].expect("interior");
        if heights.heights[gv] > heights.heights[g] {
            up.insert(v);
        }
    }
    Ok(Links {
        ascending: ball.l.induced(&up)?,
        descending: ball.l.induced(&up.complement())?,
        ascending_set: up,
        predicted_state: heights.states[g].clone(),
    })
}

/// `h(gx) = h(g) + h(x)` for every `g` in the commutator subgroup and every
/// `x` with `gx` in the ball.
pub fn commutator_additivity(ball: &CayleyBall, heights: &HeightAssignment) -> bool {
    for g in (0..ball.len()).filter(|&g| ball.in_commutator(g)) {
        for x in 0..ball.len() {
            let mut word = ball.word(g);
            word.extend(ball.word(x));
            let Some(gx) = ball.find(&word) else { continue };
            if heights.heights[gx] != heights.heights[g] + heights.heights[x] {
                return false;
            }
        }
    }
    true
}

/// Homology of the superlevel set `h >= t` of a ball.
#[derive(Clone, Debug)]
pub struct Superlevel {
    pub profile: HomologyProfile,
    /// Cells per dimension.
    pub cells: Vec<usize>,
    /// The ball is not the whole group, so boundary effects are possible.
    pub ball_truncated: bool,
}

/// Cubical homology of the cubes with every vertex at height `>= t`. Faces
/// are signed `(-1)^i (upper_i - lower_i)` with generators in increasing order.
pub fn superlevel_homology(ball: &CayleyBall, heights: &HeightAssignment, t: i64) -> Superlevel {
    let mut by_dim: Vec<Vec<&Cube>> = Vec::new();
    for c in ball.cubes() {
        if ball.cube_vertices(c).iter().all(|&g| heights.heights[g] >= t) {
            if by_dim.len() <= c.dim() {
                by_dim.resize(c.dim() + 1, Vec::new());
            }
            by_dim[c.dim()].push(c);
        }
    }
    let cells: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let ball_truncated = !ball.is_whole_group();
    if cells.first().is_none_or(|&c| c == 0) {
        return Superlevel {
            profile: HomologyProfile::default(),
            cells,
            ball_truncated,
        };
    }
    let index: Vec<HashMap<(usize, &[usize]), usize>> = by_dim
        .iter()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(i, c)| ((c.base, c.generators.as_slice()), i))
                .collect()
        })
        .collect();
    let mut boundaries = vec![IntegerMatrix::from_rows(&[vec![1; cells[0]]])];
    for k in 1..by_dim.len() {
        let mut m = IntegerMatrix::zeros(cells[k - 1], cells[k]);
        for (j, c) in by_dim[k].iter().enumerate() {
            for (i, &v) in c.generators.iter().enumerate() {
                let rest: Vec<usize> = c.generators.iter().copied().filter(|&u| u != v).collect();
                let lower = index[k - 1][&(c.base, rest.as_slice())];
                let upper_base = ball.next[c.base][v].expect("cube lies in the ball");
                let upper = index[k - 1][&(upper_base, rest.as_slice())];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(upper, j, sign);
                m.set(lower, j, -sign);
            }
        }
        boundaries.push(m);
    }
    Superlevel {
        profile: ChainComplex { boundaries }.homology(true),
        cells,
        ball_truncated,
    }
}

#[cfg(test)]
mod tests;
