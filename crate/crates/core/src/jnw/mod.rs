//! The legal-coset game on a flag complex.
//!
//! States are vertex subsets, i.e. elements of `(Z/2)^V`. A system of moves
//! assigns to every vertex `v` a state `μ_v` containing `v` and no neighbour
//! of `v`; the moves span a subgroup `M`. A state is `(m-1)`-legal when it
//! and its complement both induce `(m-1)`-acyclic subcomplexes, and a coset
//! of `M` all of whose members are legal witnesses a fibering of the
//! commutator subgroup of `W_L`.

mod certificate;
mod estimate;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_complex::{mask_connected, FlagComplex};
use crate::homology::{is_k_acyclic, reduced_homology_through, HomologyProfile};
use crate::vertex_set::VertexSet;

pub use certificate::{verify_certificate, Evidence, FiberCertificate, CERT_SCHEMA};
pub use estimate::{
    block_rng, estimate_fraction, exact_fraction, hoeffding_half_width, random_state, Estimate,
    Predicate, SAMPLE_BLOCK,
};
pub use search::{
    census, coset_search, pigeonhole_check, Census, Counting, PigeonholeReport, Strategy,
    Verdict, EXHAUSTIVE_CAP,
};

/// How a side of a state is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `(m-1)`-acyclic via reduced homology.
    #[serde(rename = "hom")]
    Homological,
    /// Nonempty (`m = 0`) or connected (`m = 1`) via graph search.
    #[serde(rename = "conn")]
    Connectivity,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Homological => "hom",
            Mode::Connectivity => "conn",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hom" => Ok(Mode::Homological),
            "conn" => Ok(Mode::Connectivity),
            _ => Err(format!("unknown mode {s:?}, expected hom or conn")),
        }
    }
}

/// The legality predicate: `(m-1)`-legal, optionally sharply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Legality {
    pub m: usize,
    pub mode: Mode,
    pub sharply: bool,
}

impl Legality {
    pub fn new(m: usize, mode: Mode) -> Result<Self> {
        if mode == Mode::Connectivity && m > 1 {
            return Err(Error::UnsupportedDegree(m));
        }
        Ok(Legality {
            m,
            mode,
            sharply: false,
        })
    }

    pub fn sharp(m: usize) -> Self {
        Legality {
            m,
            mode: Mode::Homological,
            sharply: true,
        }
    }

    /// Highest degree of homology the predicate looks at.
    pub(crate) fn profile_degree(&self) -> usize {
        if self.sharply {
            self.m + 1
        } else {
            self.m.saturating_sub(1)
        }
    }

    /// The predicate evaluated on a precomputed profile of one side.
    pub fn profile_ok(&self, profile: &HomologyProfile) -> bool {
        if !profile.is_acyclic_through(self.m as isize - 1) {
            return false;
        }
        !self.sharply || (!profile.is_trivial_in(self.m) && profile.is_trivial_in(self.m + 1))
    }
}

/// Evaluates one side of a state, with bit-mask fast paths when `|V| <= 64`.
pub(crate) struct SideChecker<'a> {
    l: &'a FlagComplex,
    adj: Option<Vec<u64>>,
    legality: Legality,
}

impl<'a> SideChecker<'a> {
    pub(crate) fn new(l: &'a FlagComplex, legality: Legality) -> Self {
        SideChecker {
            l,
            adj: l.adjacency_masks(),
            legality,
        }
    }

    pub(crate) fn full_mask(&self) -> u64 {
        match self.l.vertex_count() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    /// Requires `|V| <= 64`.
    pub(crate) fn side_ok_mask(&self, mask: u64) -> bool {
        let Legality { m, sharply, .. } = self.legality;
        if mask == 0 {
            return false;
        }
        if m >= 1 && !mask_connected(self.adj.as_ref().expect("at most 64 vertices"), mask) {
            return false;
        }
        if m <= 1 && !sharply {
            return true;
        }
        let side = VertexSet::from_mask(self.l.vertex_count(), mask);
        self.side_ok_slow(&side)
    }

    pub(crate) fn side_ok(&self, side: &VertexSet) -> bool {
        if self.adj.is_some() {
            return self.side_ok_mask(side.to_mask());
        }
        let Legality { m, sharply, .. } = self.legality;
        if side.is_empty() {
            return false;
        }
        if m >= 1 && !self.l.induces_connected(side).unwrap_or(false) {
            return false;
        }
        if m <= 1 && !sharply {
            return true;
        }
        self.side_ok_slow(side)
    }

    fn side_ok_slow(&self, side: &VertexSet) -> bool {
        let sub = self.l.induced(side).expect("width checked");
        if self.legality.sharply {
            let profile = reduced_homology_through(&sub, self.legality.profile_degree());
            return self.legality.profile_ok(&profile);
        }
        is_k_acyclic(&sub, self.legality.m as isize - 1)
    }

    pub(crate) fn state_ok_mask(&self, mask: u64) -> bool {
        self.side_ok_mask(mask) && self.side_ok_mask(!mask & self.full_mask())
    }

    pub(crate) fn state_ok(&self, state: &VertexSet) -> bool {
        if self.adj.is_some() {
            return self.state_ok_mask(state.to_mask());
        }
        self.side_ok(state) && self.side_ok(&state.complement())
    }
}

fn check_width(l: &FlagComplex, s: &VertexSet) -> Result<()> {
    if s.width() != l.vertex_count() {
        return Err(Error::WidthMismatch {
            expected: l.vertex_count(),
            found: s.width(),
        });
    }
    Ok(())
}

/// `(m-1)`-legality of `σ`: both `L[σ]` and `L[V \ σ]` are `(m-1)`-acyclic
/// (homological mode) or nonempty / connected (connectivity mode, `m <= 1`).
pub fn is_legal_state(l: &FlagComplex, sigma: &VertexSet, m: usize, mode: Mode) -> Result<bool> {
    let legality = Legality::new(m, mode)?;
    check_width(l, sigma)?;
    Ok(SideChecker::new(l, legality).state_ok(sigma))
}

/// Sharply `k`-legal: `k`-legal, with `H̃_{k+1} != 0` and `H̃_{k+2} = 0` on both sides.
pub fn is_sharply_legal_state(l: &FlagComplex, sigma: &VertexSet, k: isize) -> Result<bool> {
    check_width(l, sigma)?;
    if k < -1 {
        return Ok(false);
    }
    let legality = Legality::sharp((k + 1) as usize);
    Ok(SideChecker::new(l, legality).state_ok(sigma))
}

/// A system of moves with a reduced basis of its span over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSystem {
    moves: Vec<VertexSet>,
    basis: Vec<VertexSet>,
    pivots: Vec<usize>,
}

impl MoveSystem {
    /// Checks `v ∈ μ_v` and `w ∉ μ_v` for every neighbour `w` of `v`.
    pub fn new(l: &FlagComplex, moves: Vec<VertexSet>) -> Result<Self> {
        let n = l.vertex_count();
        if moves.len() != n {
            return Err(Error::InvalidMoveSystem(format!(
                "{} moves for {} vertices",
                moves.len(),
                n
            )));
        }
        for (v, mu) in moves.iter().enumerate() {
            check_width(l, mu)?;
            if !mu.contains(v) {
                return Err(Error::InvalidMoveSystem(format!("vertex {v} is not in its own move")));
            }
            if let Some(w) = l.neighbors(v).iter().find(|&w| mu.contains(w)) {
                return Err(Error::InvalidMoveSystem(format!(
                    "move of vertex {v} contains its neighbour {w}"
                )));
            }
        }
        Ok(Self::unchecked(moves))
    }

    /// No axiom check; used to exercise the height function on invalid systems.
    pub fn unchecked(moves: Vec<VertexSet>) -> Self {
        let (basis, pivots) = reduced_basis(&moves);
        MoveSystem {
            moves,
            basis,
            pivots,
        }
    }

    pub fn width(&self) -> usize {
        self.moves.first().map_or(0, VertexSet::width)
    }

    pub fn moves(&self) -> &[VertexSet] {
        &self.moves
    }

    pub fn move_of(&self, v: usize) -> &VertexSet {
        &self.moves[v]
    }

    /// Reduced row echelon basis; `pivots[i]` is the lowest element of `basis[i]`
    /// and no other basis vector contains it.
    pub fn basis(&self) -> &[VertexSet] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coset representative with no pivot coordinates.
    pub fn reduce(&self, state: &VertexSet) -> VertexSet {
        let mut s = state.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if s.contains(p) {
                s.xor_assign(b);
            }
        }
        s
    }

    pub fn in_span(&self, state: &VertexSet) -> bool {
        self.reduce(state).is_empty()
    }

    /// Vertices outside the pivot set, in increasing order.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.width()).filter(|v| !self.pivots.contains(v)).collect()
    }

    /// Number of cosets, `2^(|V| - rank)`, when it fits.
    pub fn coset_count(&self) -> Option<u128> {
        1u128.checked_shl((self.width() - self.rank()) as u32)
    }

    /// The `i`-th coset representative in Gray-code order over the free coordinates.
    pub fn representative(&self, i: u128) -> VertexSet {
        let free = self.free_coordinates();
        let gray = i ^ (i >> 1);
        let mut s = VertexSet::empty(self.width());
        for (j, &v) in free.iter().enumerate() {
            if j < 128 && gray >> j & 1 == 1 {
                s.insert(v);
            }
        }
        s
    }
}

/// Gauss-Jordan elimination over `F_2`.
fn reduced_basis(moves: &[VertexSet]) -> (Vec<VertexSet>, Vec<usize>) {
    let mut basis: Vec<VertexSet> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mu in moves {
        let mut r = mu.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r.contains(p) {
                r.xor_assign(b);
            }
        }
        let Some(p) = r.first() else { continue };
        for b in basis.iter_mut() {
            if b.contains(p) {
                b.xor_assign(&r);
            }
        }
        basis.push(r);
        pivots.push(p);
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    (
        order.iter().map(|&i| basis[i].clone()).collect(),
        order.iter().map(|&i| pivots[i]).collect(),
    )
}

/// The colored system: `μ_v` is the color class of `v`.
pub fn move_system_from_coloring(l: &FlagComplex, coloring: &[usize]) -> Result<MoveSystem> {
    let n = l.vertex_count();
    if coloring.len() != n {
        return Err(Error::WidthMismatch {
            expected: n,
            found: coloring.len(),
        });
    }
    for (u, v) in l.edges() {
        if coloring[u] == coloring[v] {
            return Err(Error::ImproperColoring(u, v));
        }
    }
    let moves = (0..n)
        .map(|v| VertexSet::from_indices(n, (0..n).filter(|&w| coloring[w] == coloring[v])))
        .collect::<Result<Vec<_>>>()?;
    MoveSystem::new(l, moves)
}

/// `rep + span(M)`; member `i` adds the basis vectors selected by the bits of `i`.
pub fn coset_members(moves: &MoveSystem, rep: &VertexSet) -> Result<Vec<VertexSet>> {
    if rep.width() != moves.width() {
        return Err(Error::WidthMismatch {
            expected: moves.width(),
            found: rep.width(),
        });
    }
    let rank = moves.rank();
    if rank >= 32 {
        return Err(Error::TooLarge {
            what: "coset size",
            count: 1u128 << rank.min(127),
            cap: 1 << 31,
        });
    }
    Ok((0u64..1 << rank)
        .map(|i| {
            let mut s = rep.clone();
            for (j, b) in moves.basis().iter().enumerate() {
                if i >> j & 1 == 1 {
                    s.xor_assign(b);
                }
            }
            s
        })
        .collect())
}
