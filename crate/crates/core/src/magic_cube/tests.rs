use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

/// Random cube from `n` maps with fibres of size `big_n` over `{0..t}`.
fn random_magic(n: usize, t: usize, big_n: usize, seed: u64) -> MagicCube {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut m: Vec<usize> = (0..t).flat_map(|x| std::iter::repeat_n(x, big_n)).collect();
            m.shuffle(&mut rng);
            m
        })
        .collect();
    MagicCube::from_maps(t, &maps)
}

/// Largest k with k-subsets A, B and zero mass on A × B, by trying every pair.
fn brute_zero_block_2d(cube: &MagicCube) -> usize {
    let t = cube.side();
    let mut best = 0;
    for a in 0u32..1 << t {
        for b in 0u32..1 << t {
            let k = a.count_ones().min(b.count_ones()) as usize;
            if k <= best || a.count_ones() != b.count_ones() {
                continue;
            }
            let zero = (0..t).all(|x| a >> x & 1 == 0 || (0..t).all(|y| b >> y & 1 == 0 || cube.get(&[x, y]) == 0));
            if zero {
                best = k;
            }
        }
    }
    best
}

fn chamber_panels(b: &Building, c: usize) -> Vec<usize> {
    b.chamber_panels(c).to_vec()
}

#[test]
fn one_dimensional_cube() {
    let b = Building::type_a(2, 2).unwrap();
    for p in 0..b.panels().len() {
        let cube = cube_from_panels(&b, &[p]).unwrap();
        assert_eq!(cube.entries(), (0..3).map(|x| (vec![x], 7)).collect::<Vec<_>>());
    }
}

#[test]
fn two_panel_cubes_are_magic() {
    let b = Building::type_a(2, 3).unwrap();
    let cube = cube_from_panels(&b, &chamber_panels(&b, 0)).unwrap();
    assert_eq!((cube.dim(), cube.side()), (2, 4));
    assert_eq!(cube.verify_magic().unwrap(), 13);
    assert_eq!(cube.total(), 52);

    let b = Building::type_a(2, 5).unwrap();
    for (p, q) in [(0, 1), (3, 40), (17, 60)] {
        let cube = cube_from_panels(&b, &[p, q]).unwrap();
        assert_eq!(cube.verify_magic().unwrap(), 31);
    }
    assert!(matches!(cube_from_panels(&b, &[2, 2]), Err(Error::DuplicatePanel(2))));
}

#[test]
fn verify_magic_examples() {
    assert_eq!(MagicCube::constant(3, 4, 5).verify_magic().unwrap(), 5 * 16);
    let mut c = MagicCube::constant(2, 3, 2);
    c.add(&[1, 2], 1);
    assert!(matches!(
        c.verify_magic(),
        Err(Error::NotMagic { axis: 0, index: 1, observed: 7, expected: 6 })
    ));
}

#[test]
fn zero_blocks() {
    let z = MagicCube::constant(2, 5, 1).max_zero_block().unwrap();
    assert_eq!((z.k, z.exact, z.bound_holds), (0, true, true));
    let one = MagicCube::from_maps(4, &[vec![0, 1, 2, 3, 3, 2, 1, 0]]);
    assert_eq!(one.max_zero_block().unwrap().k, 0);
    assert!(matches!(MagicCube::zeros(2, 3).max_zero_block(), Err(Error::ZeroWeightCube)));

    // permutation cube: only the diagonal is positive
    let perm = MagicCube::from_maps(6, &[vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2, 3, 4, 5]]);
    let z = perm.max_zero_block().unwrap();
    assert_eq!(z.k, 3);
    assert!(z.bound_holds);

    for seed in 0..40 {
        let t = 2 + (seed as usize % 5);
        let cube = random_magic(2, t, 1 + seed as usize % 3, seed);
        let z = cube.max_zero_block().unwrap();
        assert!(z.exact);
        assert_eq!(z.k, brute_zero_block_2d(&cube), "seed {seed}");
        assert!(z.bound_holds);
        assert!(cube.axis_labels.is_empty());
    }
}

#[test]
fn greedy_zero_block_is_a_valid_block() {
    let maps: Vec<usize> = (0..10).collect();
    let cube = MagicCube::from_maps(10, &[maps.clone(), maps]);
    let z = cube.max_zero_block().unwrap();
    assert!(!z.exact);
    assert!(z.bound_holds);
    for x in &z.axes[0] {
        for y in &z.axes[1] {
            assert_eq!(cube.get(&[*x, *y]), 0);
        }
    }
    assert!(z.k >= 1);
}

#[test]
fn diagonals() {
    let d = MagicCube::constant(3, 5, 2).positive_diagonal().unwrap();
    assert_eq!(d.m, 5);
    assert!(d.perms.iter().all(|p| p == &(0..5).collect::<Vec<_>>()));

    for (p, bound) in [(5u32, 2usize), (13, 3)] {
        let b = Building::type_a(2, p).unwrap();
        let cube = cube_from_panels(&b, &chamber_panels(&b, 0)).unwrap();
        let d = cube.positive_diagonal().unwrap();
        assert_eq!(diagonal_bound(cube.side(), 2), bound);
        assert!(d.m >= bound);
        assert!((0..d.m).all(|j| cube.diagonal_weight(&d.perms, j) > 0));
        for perm in &d.perms {
            let mut sorted = perm.clone();
            sorted.sort();
            assert_eq!(sorted, (0..cube.side()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn independent_chamber_examples() {
    let b = Building::type_a(2, 5).unwrap();
    let panels = chamber_panels(&b, 0);
    assert_eq!(independent_chambers(&b, &panels, 1).unwrap().len(), 1);
    let ds = independent_chambers(&b, &panels, 2).unwrap();
    assert_eq!(ds.len(), 2);
    for &p in &panels {
        assert_ne!(b.project_to_panel(p, ds[0]).unwrap(), b.project_to_panel(p, ds[1]).unwrap());
    }

    let b = Building::type_a(2, 2).unwrap();
    let ds = independent_chambers(&b, &[4], 3).unwrap();
    let mut images: Vec<usize> = ds.iter().map(|&d| b.project_to_panel(4, d).unwrap()).collect();
    images.sort();
    assert_eq!(images, b.panel_star(4).to_vec());
    assert!(matches!(independent_chambers(&b, &[4], 4), Err(Error::NotFound { .. })));
}

#[test]
fn opposite_spreads() {
    let b = Building::type_a(2, 2).unwrap();
    let d = opposite_spread(&b, &[0], 1).unwrap();
    assert!(b.is_opposite(0, d[0]).unwrap());

    let b = Building::type_a(2, 5).unwrap();
    let ds = opposite_spread(&b, &[0], 2).unwrap();
    assert_eq!(ds.len(), 2);
    assert!(ds.iter().all(|&d| b.is_opposite(0, d).unwrap()));
    let h1: HashSet<usize> = b.convex_hull(0, ds[0]).unwrap().into_iter().collect();
    let h2: HashSet<usize> = b.convex_hull(0, ds[1]).unwrap().into_iter().collect();
    assert_eq!(h1.intersection(&h2).copied().collect::<Vec<_>>(), vec![0]);
    // vertex level
    let v1 = b.support(&h1.iter().copied().collect::<Vec<_>>());
    let v2 = b.support(&h2.iter().copied().collect::<Vec<_>>());
    assert_eq!(v1.intersection(&v2).unwrap(), b.support(&[0]));

    // two chambers at once
    let es = [0, b.opposites(0).unwrap()[0]];
    let ds = opposite_spread(&b, &es, 2).unwrap();
    assert!(hulls_meet_in(&b, &es, ds[0], ds[1]).unwrap());

    // far more than the opposites of a single chamber
    assert!(matches!(opposite_spread(&b, &[0], 1000), Err(Error::NotFound { .. })));
}

#[test]
fn csv_dump() {
    let cube = MagicCube::from_maps(2, &[vec![0, 1], vec![1, 0]]);
    assert_eq!(cube.to_csv(), "# n=2 t=2 N=1\n0,1,1\n1,0,1\n");
}

#[test]
fn sparse_storage() {
    let mut cube = MagicCube::zeros(3, 300);
    assert!(!cube.is_dense());
    cube.set(&[299, 0, 7], 4);
    cube.add(&[299, 0, 7], 1);
    assert_eq!(cube.get(&[299, 0, 7]), 5);
    assert_eq!(cube.entries(), vec![(vec![299, 0, 7], 5)]);
    assert!(MagicCube::zeros(3, 14).is_dense());
}

fn arb_perm(t: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..t).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn pushforward_preserves_magic(
        seed in any::<u64>(),
        p0 in arb_perm(5),
        p1 in arb_perm(5),
        p2 in arb_perm(5),
    ) {
        let cube = random_magic(3, 5, 2, seed);
        let n = cube.verify_magic().unwrap();
        let moved = cube.permuted(&[p0, p1, p2]);
        prop_assert_eq!(moved.verify_magic().unwrap(), n);
        prop_assert_eq!(moved.total(), cube.total());
    }

    #[test]
    fn diagonal_meets_bound(seed in any::<u64>(), t in 2usize..9, n in 1usize..4, big_n in 1usize..4) {
        let cube = random_magic(n, t, big_n, seed);
        let d = cube.positive_diagonal().unwrap();
        prop_assert!(d.m >= diagonal_bound(t, n));
        for j in 0..d.m {
            prop_assert!(cube.diagonal_weight(&d.perms, j) > 0);
        }
        let z = cube.max_zero_block().unwrap();
        prop_assert!(z.bound_holds);
    }
}
