//! Exact reduced integral homology of flag complexes.
//!
//! Chains are built on the augmented complex (the empty simplex in degree -1),
//! simplices are oriented by ascending vertex index and every group is read
//! off Smith normal forms of consecutive boundary matrices.

mod matrix;
mod snf;

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_complex::FlagComplex;

pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, smith_normal_form_big, SmithForm};

/// One reduced homology group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Reduced integral homology in degrees `0..=dim`, plus whether the complex
/// has a vertex (the degree -1 information).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub nonempty: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    /// `H̃_k`; trivial beyond the stored range.
    pub fn degree(&self, k: usize) -> DegreeHomology {
        self.degrees.get(k).cloned().unwrap_or_default()
    }

    pub fn free_rank(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.free_rank)
    }

    pub fn is_trivial_in(&self, k: usize) -> bool {
        self.degrees.get(k).is_none_or(DegreeHomology::is_trivial)
    }

    /// Nonempty with `H̃_i = 0` for `0 <= i <= k`; `k = -1` means nonempty.
    /// Only meaningful if the profile was computed through degree `k`.
    pub fn is_acyclic_through(&self, k: isize) -> bool {
        self.nonempty && (0..=k).all(|i| self.is_trivial_in(i as usize))
    }

    /// Reduced Euler characteristic `Σ (-1)^k free_rank(H̃_k)`, with the
    /// degree -1 term for the empty complex.
    pub fn reduced_euler(&self) -> i64 {
        let mut chi: i64 = if self.nonempty { 0 } else { -1 };
        for (k, d) in self.degrees.iter().enumerate() {
            let r = d.free_rank as i64;
            chi += if k % 2 == 0 { r } else { -r };
        }
        chi
    }
}

/// A finite augmented chain complex: `boundaries[k]` is `∂_k: C_k -> C_{k-1}`
/// with `C_{-1} = Z` (or `0` for an unaugmented complex), rows indexed by
/// `(k-1)`-cells and columns by `k`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// Homology in degrees `0..boundaries.len()`; `∂_{top+1}` is zero.
    /// `nonempty` is passed through unchanged.
    pub fn homology(&self, nonempty: bool) -> HomologyProfile {
        let forms: Vec<SmithForm> = self.boundaries.iter().map(smith_normal_form).collect();
        let mut degrees = Vec::with_capacity(self.boundaries.len());
        for k in 0..self.boundaries.len() {
            let cells = self.boundaries[k].cols();
            let rank_k = forms[k].rank;
            let (rank_up, torsion) = match forms.get(k + 1) {
                Some(f) => (
                    f.rank,
                    f.nontrivial_divisors()
                        .map(|d| d.to_u64().expect("torsion coefficient exceeds 64 bits"))
                        .collect(),
                ),
                None => (0, Vec::new()),
            };
            degrees.push(DegreeHomology {
                free_rank: cells - rank_k - rank_up,
                torsion,
            });
        }
        HomologyProfile { nonempty, degrees }
    }
}

/// Lexicographically sorted `k`-simplices with a lookup table.
fn indexed_simplices(l: &FlagComplex, k: usize) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let list: Vec<Vec<usize>> = l.simplices(k).into_iter().map(|s| s.vertices().to_vec()).collect();
    let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    (list, index)
}

fn boundary_between(
    faces: &HashMap<Vec<usize>, usize>,
    face_count: usize,
    cells: &[Vec<usize>],
) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(face_count, cells.len());
    let mut face = Vec::new();
    for (j, s) in cells.iter().enumerate() {
        for omit in 0..s.len() {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v));
            let row = faces[&face];
            m.set(row, j, if omit % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// `∂_k` from `k`-simplices to `(k-1)`-simplices; `∂_0` is the augmentation.
pub fn boundary_matrix(l: &FlagComplex, k: usize) -> Result<IntegerMatrix> {
    let max = (l.dimension() + 1) as usize;
    if k > max {
        return Err(Error::DegreeOutOfRange { degree: k, max });
    }
    let (cells, _) = indexed_simplices(l, k);
    if k == 0 {
        let mut m = IntegerMatrix::zeros(1, cells.len());
        for j in 0..cells.len() {
            m.set(0, j, 1);
        }
        return Ok(m);
    }
    let (faces, index) = indexed_simplices(l, k - 1);
    Ok(boundary_between(&index, faces.len(), &cells))
}

/// Augmented simplicial chain complex through `∂_{top}`.
fn chain_complex(l: &FlagComplex, top: usize) -> ChainComplex {
    let mut boundaries = Vec::with_capacity(top + 1);
    let (mut prev_list, mut prev_index) = indexed_simplices(l, 0);
    let mut aug = IntegerMatrix::zeros(1, prev_list.len());
    for j in 0..prev_list.len() {
        aug.set(0, j, 1);
    }
    boundaries.push(aug);
    for k in 1..=top {
        let (list, index) = indexed_simplices(l, k);
        boundaries.push(boundary_between(&prev_index, prev_list.len(), &list));
        prev_list = list;
        prev_index = index;
    }
    boundaries.truncate(top + 1);
    ChainComplex { boundaries }
}

/// `H̃_k(L)` for every `0 <= k <= dim L`.
pub fn reduced_homology(l: &FlagComplex) -> HomologyProfile {
    let dim = l.dimension();
    if dim < 0 {
        return HomologyProfile::default();
    }
    reduced_homology_through(l, dim as usize)
}

/// `H̃_k(L)` for `0 <= k <= min(max_degree, dim L)`. Builds only the
/// boundary maps that are needed.
pub fn reduced_homology_through(l: &FlagComplex, max_degree: usize) -> HomologyProfile {
    let dim = l.dimension();
    if dim < 0 {
        return HomologyProfile::default();
    }
    let dim = dim as usize;
    let top = max_degree.min(dim);
    // ∂_{top+1} contributes the image in degree top
    let chains = chain_complex(l, (top + 1).min(dim));
    let mut profile = chains.homology(true);
    profile.degrees.truncate(top + 1);
    profile
}

/// Nonempty with vanishing `H̃_i` for all `0 <= i <= k`; `k = -1` is nonemptiness.
pub fn is_k_acyclic(l: &FlagComplex, k: isize) -> bool {
    if l.is_empty() {
        return false;
    }
    if k < 0 {
        return true;
    }
    if k == 0 {
        return is_connected(l);
    }
    reduced_homology_through(l, k as usize).is_acyclic_through(k)
}

/// Nonempty with connected 1-skeleton (graph search only).
pub fn is_connected(l: &FlagComplex) -> bool {
    !l.is_empty() && l.induces_connected(&l.full_set()).unwrap_or(false)
}

/// `H̃_d(L) != 0`.
pub fn top_homology_nontrivial(l: &FlagComplex, d: usize) -> bool {
    if l.dimension() < d as isize {
        return false;
    }
    if d == 0 {
        return l.components().len() > 1;
    }
    !reduced_homology_through(l, d).is_trivial_in(d)
}
