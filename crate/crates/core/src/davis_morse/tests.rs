use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::families::{discrete, path};
use crate::homology::reduced_homology;
use crate::jnw::{coset_search, move_system_from_coloring, Legality, Mode, Strategy as Search};

fn set(n: usize, idx: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, idx.iter().copied()).unwrap()
}

/// `D_∞ = <a, b>` with moves `{a}, {b}` and `σ_0 = {a}`.
fn dihedral(radius: usize) -> (CayleyBall, HeightAssignment) {
    let l = discrete(2);
    let moves = move_system_from_coloring(&l, &[0, 1]).unwrap();
    let ball = racg_ball(&l, radius).unwrap();
    let h = assign_heights(&ball, &set(2, &[0]), &moves).unwrap();
    (ball, h)
}

/// Path `a - b - c` with the coloring `{a, c}, {b}`.
fn path_example(radius: usize, sigma0: &[usize]) -> (CayleyBall, HeightAssignment, MoveSystem) {
    let l = path(2);
    let moves = move_system_from_coloring(&l, &[0, 1, 0]).unwrap();
    let ball = racg_ball(&l, radius).unwrap();
    let h = assign_heights(&ball, &set(3, sigma0), &moves).unwrap();
    (ball, h, moves)
}

/// All words of length at most `len` over `n` letters.
fn all_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for v in 0..n {
                let mut x: Vec<usize> = w.clone();
                x.push(v);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Height of a word by walking it letter by letter from the identity.
fn walk_height(moves: &MoveSystem, sigma0: &VertexSet, word: &[usize]) -> i64 {
    let mut state = sigma0.clone();
    let mut h = 0;
    for &v in word {
        h += if state.contains(v) { 1 } else { -1 };
        state.xor_assign(moves.move_of(v));
    }
    h
}

#[test]
fn ball_examples() {
    let ball = racg_ball(&discrete(2), 3).unwrap();
    assert_eq!(ball.len(), 7);
    let mut labels: Vec<String> = (0..7).map(|g| ball.label(g)).collect();
    labels.sort();
    assert_eq!(labels, ["0", "0.1", "0.1.0", "1", "1.0", "1.0.1", "e"]);
    assert!(!ball.is_whole_group());

    let edge = racg_ball(&path(1), 2).unwrap();
    assert_eq!(edge.len(), 4);
    assert!(edge.is_whole_group());
    let squares: Vec<&Cube> = edge.cubes().iter().filter(|c| c.dim() == 2).collect();
    assert_eq!(squares.len(), 1);
    assert_eq!(squares[0].base, 0);
    assert_eq!(edge.cubes().len(), 4 + 4 + 1);

    let p = racg_ball(&path(2), 2).unwrap();
    assert_eq!(p.len(), 8);
    // b commutes with a and c
    assert_eq!(p.find(&[1, 0]), p.find(&[0, 1]));
    assert_ne!(p.find(&[0, 2]), p.find(&[2, 0]));
}

#[test]
fn ball_sizes_match_brute_enumeration() {
    for (l, r) in [(discrete(2), 5), (path(2), 5), (discrete(3), 4), (path(3), 4)] {
        let ball = racg_ball(&l, r).unwrap();
        let mut forms: Vec<Vec<u8>> = all_words(l.vertex_count(), r)
            .iter()
            .map(|w| exhaustive_canonical(&l, w))
            .collect();
        forms.sort();
        forms.dedup();
        assert_eq!(ball.len(), forms.len());
        for f in &forms {
            let w: Vec<usize> = f.iter().map(|&x| x as usize).collect();
            assert!(ball.find(&w).is_some());
        }
        // closure below the radius
        for g in 0..ball.len() {
            assert_eq!(ball.is_interior(g), ball.length(g) < r || ball.is_whole_group());
        }
    }
}

#[test]
fn caps_are_enforced() {
    assert!(matches!(racg_ball(&discrete(2), 9), Err(Error::CapExceeded(_))));
    assert!(matches!(racg_ball(&discrete(17), 1), Err(Error::CapExceeded(_))));
    assert!(matches!(racg_ball_with_cap(&discrete(3), 6, 50), Err(Error::CapExceeded(_))));
}

#[test]
fn dihedral_heights() {
    let (ball, h) = dihedral(5);
    let at = |w: &[usize]| h.height(ball.find(w).unwrap());
    assert_eq!(at(&[]), 0);
    assert_eq!(at(&[0]), 1);
    assert_eq!(at(&[1]), -1);
    assert_eq!(at(&[0, 1]), 0);
    assert_eq!(at(&[1, 0]), 0);
    assert_eq!(at(&[0, 1, 0]), -1);
    assert_eq!(at(&[1, 0, 1]), 1);
    assert_eq!(at(&[0, 0]), 0);
    assert_eq!(at(&[1, 1]), 0);

    // every word, geodesic or not, walks to the same height
    let l = discrete(2);
    let moves = move_system_from_coloring(&l, &[0, 1]).unwrap();
    for w in all_words(2, 7) {
        if let Some(g) = ball.find(&w) {
            assert_eq!(h.height(g), walk_height(&moves, &set(2, &[0]), &w), "{w:?}");
        }
    }
    assert!(h.edges_are_unit(&ball));
}

#[test]
fn path_heights_match_walks() {
    for sigma0 in [vec![], vec![0], vec![1], vec![0, 2], vec![0, 1, 2]] {
        let (ball, h, moves) = path_example(5, &sigma0);
        for w in all_words(3, 6) {
            if let Some(g) = ball.find(&w) {
                assert_eq!(h.height(g), walk_height(&moves, &set(3, &sigma0), &w));
            }
        }
        assert!(h.edges_are_unit(&ball));
        assert!(h.squares_consistent(&ball));
        for v in 0..3 {
            assert_eq!(h.height(ball.find(&[v, v]).unwrap()), 0);
        }
    }
}

#[test]
fn invalid_moves_raise_inconsistent_heights() {
    let l = path(1);
    let moves = MoveSystem::unchecked(vec![set(2, &[0, 1]), set(2, &[1])]);
    assert!(MoveSystem::new(&l, moves.moves().to_vec()).is_err());
    let ball = racg_ball(&l, 2).unwrap();
    assert!(matches!(
        assign_heights(&ball, &set(2, &[]), &moves),
        Err(Error::InconsistentHeight { .. })
    ));

    let l = path(2);
    let moves = MoveSystem::unchecked(vec![set(3, &[0]), set(3, &[1, 2]), set(3, &[2])]);
    let ball = racg_ball(&l, 5).unwrap();
    assert!(matches!(
        assign_heights(&ball, &set(3, &[0]), &moves),
        Err(Error::InconsistentHeight { .. })
    ));
}

#[test]
fn ascending_links() {
    let (ball, h) = dihedral(5);
    let e = asc_desc_link(&ball, &h, 0).unwrap();
    assert_eq!(e.ascending_set, set(2, &[0]));
    assert!(e.matches_prediction());
    let a = ball.find(&[0]).unwrap();
    let links = asc_desc_link(&ball, &h, a).unwrap();
    // σ_0 + μ_a = ∅
    assert_eq!(links.ascending_set, set(2, &[]));
    assert!(links.ascending.is_empty());
    assert_eq!(links.descending.vertex_count(), 2);

    let far = ball.find(&[0, 1, 0, 1, 0]).unwrap();
    assert!(matches!(asc_desc_link(&ball, &h, far), Err(Error::BoundaryElement(_))));

    for (ball, h) in [dihedral(5), {
        let (b, h, _) = path_example(5, &[0]);
        (b, h)
    }] {
        let n = ball.complex().vertex_count();
        for g in (0..ball.len()).filter(|&g| ball.length(g) < ball.radius()) {
            let links = asc_desc_link(&ball, &h, g).unwrap();
            assert!(links.matches_prediction());
            assert_eq!(links.ascending.vertex_count() + links.descending.vertex_count(), n);
        }
    }
}

#[test]
fn commutator_additivity_examples() {
    let (ball, h) = dihedral(6);
    assert!(commutator_additivity(&ball, &h));
    let g = ball.find(&[0, 1, 0, 1]).unwrap();
    assert!(ball.in_commutator(g));
    let ga = ball.find(&[0, 1, 0, 1, 0]).unwrap();
    assert_eq!(h.height(ga), h.height(g) + h.height(ball.find(&[0]).unwrap()));

    let (ball, h, _) = path_example(5, &[0]);
    assert!(commutator_additivity(&ball, &h));
}

#[test]
fn superlevel_examples() {
    let (ball, h) = dihedral(5);
    let all = superlevel_homology(&ball, &h, -5);
    assert!(all.ball_truncated);
    assert!(all.profile.nonempty);
    assert!((0..2).all(|k| all.profile.is_trivial_in(k)));
    assert_eq!(all.cells, vec![11, 10]);

    let none = superlevel_homology(&ball, &h, 6);
    assert!(!none.profile.nonempty);

    // the ball is a path; count components of the part at height >= 0 directly
    let keep: Vec<usize> = (0..ball.len()).filter(|&g| h.height(g) >= 0).collect();
    let mut comp: HashMap<usize, usize> = keep.iter().map(|&g| (g, g)).collect();
    fn root(c: &mut HashMap<usize, usize>, x: usize) -> usize {
        let p = c[&x];
        if p == x {
            x
        } else {
            let r = root(c, p);
            c.insert(x, r);
            r
        }
    }
    for (g, v) in ball.edges() {
        let w = ball.step(g, v).unwrap();
        if comp.contains_key(&g) && comp.contains_key(&w) {
            let (a, b) = (root(&mut comp, g), root(&mut comp, w));
            comp.insert(a, b);
        }
    }
    let roots: std::collections::HashSet<usize> = keep.iter().map(|&g| root(&mut comp, g)).collect();
    let zero = superlevel_homology(&ball, &h, 0);
    assert_eq!(zero.profile.free_rank(0) + 1, roots.len());

    // the finite group (Z/2)^2 is a full square
    let l = path(1);
    let ball = racg_ball(&l, 2).unwrap();
    let moves = move_system_from_coloring(&l, &[0, 1]).unwrap();
    let h = assign_heights(&ball, &set(2, &[0]), &moves).unwrap();
    let s = superlevel_homology(&ball, &h, -2);
    assert!(!s.ball_truncated);
    assert_eq!(s.cells, vec![4, 4, 1]);
    assert!(s.profile.nonempty && s.profile.degrees.iter().all(|d| d.is_trivial()));
    assert_eq!(s.profile.reduced_euler(), reduced_homology(&crate::families::simplex(1)).reduced_euler());
}

#[test]
fn superlevel_balls_are_acyclic() {
    let (ball, h, _) = path_example(4, &[0]);
    let s = superlevel_homology(&ball, &h, -10);
    assert!(s.profile.nonempty);
    assert!(s.profile.degrees.iter().all(|d| d.is_trivial()));
    assert_eq!(s.cells[0], ball.len());
}

#[test]
fn certificate_links_are_legal() {
    let l = path(2);
    let moves = move_system_from_coloring(&l, &[0, 1, 0]).unwrap();
    let legality = Legality::new(0, Mode::Homological).unwrap();
    let cert = coset_search(&l, &moves, legality, Search::Exhaustive).unwrap().unwrap();
    let rep = VertexSet::from_hex(3, &cert.rep_bits_hex).unwrap();
    let ball = racg_ball(&l, 5).unwrap();
    let h = assign_heights(&ball, &rep, &moves).unwrap();
    for g in (0..ball.len()).filter(|&g| ball.length(g) < 5) {
        let links = asc_desc_link(&ball, &h, g).unwrap();
        assert!(!links.ascending.is_empty() && !links.descending.is_empty());
        let hex = links.predicted_state.to_hex();
        assert!(cert.evidence.iter().any(|e| e.state_hex == hex));
    }
}

#[test]
fn dump_lists_every_element() {
    let (ball, h) = dihedral(2);
    let text = ball.dump(Some(&h));
    assert_eq!(text.lines().count(), 1 + ball.len());
    assert!(text.lines().nth(1).unwrap().starts_with("0\te\t0\t"));
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = FlagComplex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
    fn normal_form_matches_exhaustive_rewriting(
        (l, word) in arb_graph(5).prop_flat_map(|l| {
            let n = l.vertex_count();
            (Just(l), prop::collection::vec(0..n, 0..8))
        })
    ) {
        let nf = normal_form(&l, &word);
        prop_assert_eq!(&nf, &exhaustive_canonical(&l, &word));
        // letter parities are an invariant of the element
        let parity = |w: &[usize]| w.iter().fold(0u32, |p, &v| p ^ 1 << v);
        let nf_usize: Vec<usize> = nf.iter().map(|&x| x as usize).collect();
        prop_assert_eq!(parity(&word), parity(&nf_usize));
        // normal forms are fixed points
        prop_assert_eq!(normal_form(&l, &nf_usize), nf);
    }
}
