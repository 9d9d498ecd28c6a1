//! Small named complexes used by the CLI and the test corpus.

use crate::flag_complex::FlagComplex;

/// Cycle graph on `n >= 3` vertices (a triangulated circle for `n >= 4`).
pub fn cycle(n: usize) -> FlagComplex {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    FlagComplex::from_graph(n, &edges).expect("cycle")
}

/// Path with `len` edges on `len + 1` vertices.
pub fn path(len: usize) -> FlagComplex {
    let edges: Vec<_> = (0..len).map(|i| (i, i + 1)).collect();
    FlagComplex::from_graph(len + 1, &edges).expect("path")
}

/// Full simplex on `n` vertices.
pub fn simplex(n: usize) -> FlagComplex {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    FlagComplex::from_graph(n, &edges).expect("simplex")
}

/// `n` isolated vertices.
pub fn discrete(n: usize) -> FlagComplex {
    FlagComplex::from_graph(n, &[]).expect("discrete")
}

/// Boundary of the octahedron: three pairs of antipodal vertices `(2i, 2i+1)`,
/// all other pairs adjacent. A flag triangulation of the 2-sphere.
pub fn octahedron() -> FlagComplex {
    let mut edges = Vec::new();
    for u in 0..6 {
        for v in (u + 1)..6 {
            if u / 2 != v / 2 {
                edges.push((u, v));
            }
        }
    }
    FlagComplex::from_graph(6, &edges).expect("octahedron")
}
