use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::families::{cycle, discrete, octahedron, path, simplex};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Points 0..7 and lines 7..14 of the Fano plane, incident iff dot product is 0.
fn heawood() -> FlagComplex {
    let mut edges = Vec::new();
    for p in 1..8u32 {
        for l in 1..8u32 {
            if (p & l).count_ones() % 2 == 0 {
                edges.push((p as usize - 1, 6 + l as usize));
            }
        }
    }
    FlagComplex::from_graph(14, &edges).unwrap()
}

/// Every subset checked for being a clique.
fn brute_f_vector(l: &FlagComplex) -> Vec<u64> {
    let n = l.vertex_count();
    let mut f = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if l.is_simplex(&vs) {
            let k = vs.len() - 1;
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
    }
    f
}

fn brute_chromatic(l: &FlagComplex) -> usize {
    let n = l.vertex_count();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if l.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

#[test]
fn f_vectors() {
    assert_eq!(simplex(3).f_vector(), vec![3, 3, 1]);
    assert_eq!(cycle(6).f_vector(), vec![6, 6]);
    assert_eq!(heawood().f_vector(), vec![14, 21]);
    assert_eq!(octahedron().f_vector(), vec![6, 12, 8]);
    assert!(FlagComplex::empty().f_vector().is_empty());
    assert_eq!(FlagComplex::empty().dimension(), -1);
}

#[test]
fn charney_davis_values() {
    assert_eq!(cycle(6).charney_davis(2), q(-1, 2));
    assert_eq!(heawood().charney_davis(2), q(-3, 4));
    assert_eq!(path(2).charney_davis(2), q(0, 1));
    assert_eq!(cycle(4).charney_davis(2), q(0, 1));
    assert_eq!(FlagComplex::empty().charney_davis(2), q(1, 1));
}

#[test]
fn chromatic_numbers() {
    assert_eq!(heawood().chromatic_number().0, 2);
    assert_eq!(cycle(5).chromatic_number().0, 3);
    assert_eq!(cycle(6).chromatic_number().0, 2);
    assert_eq!(simplex(4).chromatic_number().0, 4);
    assert_eq!(octahedron().chromatic_number().0, 3);
    assert_eq!(discrete(3).chromatic_number().0, 1);
    assert_eq!(FlagComplex::empty().chromatic_number().0, 0);
}

#[test]
fn girth_and_squares() {
    assert_eq!(cycle(4).girth_and_square_free(), (Some(4), false));
    assert_eq!(cycle(6).girth_and_square_free(), (Some(6), true));
    assert_eq!(heawood().girth_and_square_free(), (Some(6), true));
    assert_eq!(path(5).girth_and_square_free(), (None, true));
    assert_eq!(FlagComplex::empty().girth_and_square_free(), (None, true));
    // octahedron has induced squares on each equator
    assert_eq!(octahedron().girth_and_square_free(), (Some(3), false));
}

#[test]
fn links_and_stars() {
    let h = heawood();
    let (link, star) = h.link_star(&Simplex::new(vec![0])).unwrap();
    assert_eq!(link.vertex_count(), 3);
    assert_eq!(link.edge_count(), 0);
    assert_eq!(star.vertex_count(), 4);
    assert_eq!(star.edge_count(), 3);

    let (link, _) = cycle(6).link_star(&Simplex::new(vec![2])).unwrap();
    assert_eq!((link.vertex_count(), link.edge_count()), (2, 0));

    let (link, star) = simplex(3).link_star(&Simplex::new(vec![0, 1])).unwrap();
    assert_eq!(link.vertex_count(), 1);
    assert_eq!(star.f_vector(), vec![3, 3, 1]);

    assert!(matches!(
        cycle(6).link_star(&Simplex::new(vec![0, 3])),
        Err(Error::NotASimplex(_))
    ));
}

#[test]
fn chamber_complexes() {
    assert!(cycle(6).is_chamber_complex(1));
    let two_edges = FlagComplex::from_graph(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(!two_edges.is_chamber_complex(1));
    let mut minus_line = heawood().full_set();
    minus_line.remove(13);
    assert!(heawood().induced(&minus_line).unwrap().is_chamber_complex(1));
    assert!(octahedron().is_chamber_complex(2));
    assert!(!octahedron().is_chamber_complex(1));
    assert!(!FlagComplex::empty().is_chamber_complex(0));
    // bowtie: two triangles meeting in a vertex
    let bowtie = FlagComplex::from_graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
    assert!(!bowtie.is_chamber_complex(2));
}

#[test]
fn construction_errors() {
    assert!(matches!(
        FlagComplex::from_graph(2, &[(0, 0)]),
        Err(Error::SelfLoop(0))
    ));
    assert!(matches!(
        FlagComplex::from_graph(2, &[(0, 1), (1, 0)]),
        Err(Error::DuplicateEdge(_, _))
    ));
    assert!(matches!(
        FlagComplex::from_graph(2, &[(0, 2)]),
        Err(Error::IndexOutOfRange { index: 2, len: 2 })
    ));
    assert!(matches!(
        FlagComplex::from_graph_with_cap(65, &[], 64),
        Err(Error::TooLarge { .. })
    ));
    let wrong = VertexSet::empty(3);
    assert!(matches!(
        cycle(4).induced(&wrong),
        Err(Error::WidthMismatch { expected: 4, found: 3 })
    ));
}

#[test]
fn text_roundtrip_and_errors() {
    let text = "# a labelled path\nn 3\nlabel 1 middle vertex\ne 0 1\ne 1 2\n";
    let l = parse_complex(text).unwrap();
    assert_eq!(l.edges(), vec![(0, 1), (1, 2)]);
    assert_eq!(l.labels()[1].as_deref(), Some("middle vertex"));
    assert_eq!(parse_complex(&write_complex(&l)).unwrap(), l);
    assert_eq!(complex_hash(&l), complex_hash(&path(2)));
    assert_ne!(complex_hash(&l), complex_hash(&cycle(3)));

    for (bad, line) in [
        ("e 0 1\n", 1),
        ("n 3\ne 0\n", 2),
        ("n 3\n\nfoo 1\n", 3),
        ("n 2\nn 2\n", 2),
        ("n x\n", 1),
    ] {
        match parse_complex(bad) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
            other => panic!("{bad:?} parsed as {other:?}"),
        }
    }
    assert!(matches!(parse_complex("n 2\ne 0 5\n"), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn maximal_cliques_of_octahedron() {
    let m = octahedron().maximal_cliques();
    assert_eq!(m.len(), 8);
    assert!(m.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(m[0].vertices(), &[0, 2, 4]);
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = FlagComplex> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in (u + 1)..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            FlagComplex::from_graph(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn f_vector_matches_brute_force(l in arb_graph(10)) {
        prop_assert_eq!(l.f_vector(), brute_f_vector(&l));
        let cd = l.charney_davis(2);
        let f = l.f_vector();
        let get = |k: usize| BigInt::from(f.get(k).copied().unwrap_or(0));
        let closed = q(1, 1) - BigRational::new(get(0), BigInt::from(2))
            + BigRational::new(get(1), BigInt::from(4));
        prop_assert_eq!(cd, closed);
    }

    #[test]
    fn chromatic_is_exact(l in arb_graph(8)) {
        let (chi, coloring) = l.chromatic_number();
        prop_assert_eq!(chi, brute_chromatic(&l));
        for (u, v) in l.edges() {
            prop_assert_ne!(coloring[u], coloring[v]);
        }
        prop_assert!(coloring.iter().all(|&c| c < chi.max(1)));
        prop_assert!(chi >= l.clique_number());
    }

    #[test]
    fn induced_of_induced(l in arb_graph(12), a in any::<u64>(), b in any::<u64>()) {
        let n = l.vertex_count();
        let s = VertexSet::from_mask(n, a & ((1u64 << n) - 1));
        let inner = l.induced(&s).unwrap();
        let t = VertexSet::from_mask(inner.vertex_count(), b & ((1u64 << inner.vertex_count()) - 1));
        let twice = inner.induced(&t).unwrap();
        // the same subset expressed in the original numbering
        let kept: Vec<usize> = s.iter().collect();
        let direct = VertexSet::from_indices(n, t.iter().map(|i| kept[i])).unwrap();
        prop_assert_eq!(twice, l.induced(&direct).unwrap());
    }

    #[test]
    fn maximal_cliques_are_maximal(l in arb_graph(10)) {
        let m = l.maximal_cliques();
        for c in &m {
            prop_assert!(l.is_simplex(c.vertices()));
            let ext = l.link_vertices(c.vertices());
            prop_assert!(ext.is_empty());
        }
        let total: usize = brute_f_vector(&l).len();
        prop_assert_eq!(m.iter().map(Simplex::len).max().unwrap_or(0), total);
    }

    #[test]
    fn connectivity_paths_agree(l in arb_graph(12), mask in any::<u64>()) {
        let n = l.vertex_count();
        let s = VertexSet::from_mask(n, mask & ((1u64 << n) - 1));
        let fast = mask_connected(&l.adjacency_masks().unwrap(), s.to_mask());
        let sub = l.induced(&s).unwrap();
        let by_components = sub.vertex_count() > 0 && sub.components().len() == 1;
        prop_assert_eq!(fast, by_components);
        prop_assert_eq!(l.induces_connected(&s).unwrap(), by_components);
    }
}
