use ambitropical::games::{CellOptions, MeanPayoffGame};
use ambitropical::scalar::int;
use ambitropical::tropical::{hilbert_seminorm, sub, top};
use ambitropical::{sample, Ext, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_game(rng: &mut ChaCha8Rng, n: usize) -> MeanPayoffGame {
    let m = rng.gen_range(n..=n + 1);
    let a = ambitropical::tropical::TropMat::from_fn(m, n, |j, i| {
        if j == i || rng.gen_bool(0.25) {
            Ext::int(rng.gen_range(-1..=1))
        } else {
            Ext::NegInf
        }
    });
    let hit: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    let b = ambitropical::tropical::TropMat::from_fn(m, n, |j, k| {
        if hit[j] == k || rng.gen_bool(0.4) {
            Ext::int(rng.gen_range(-2..=2))
        } else {
            Ext::NegInf
        }
    });
    MeanPayoffGame::new(a, b).unwrap()
}

/// Value of the `k`-turn game from every state by expanding the play tree.
fn tree_value(g: &MeanPayoffGame, state: usize, k: usize) -> Rat {
    if k == 0 {
        return int(0);
    }
    (0..g.m())
        .filter_map(|j| {
            let aji = g.a().get(j, state).finite()?;
            let best = (0..g.n())
                .filter_map(|l| g.b().get(j, l).finite().map(|bjl| bjl + tree_value(g, l, k - 1)))
                .max()
                .expect("B has no empty row");
            Some(best - aji)
        })
        .min()
        .expect("A has no empty column")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn value_iteration_matches_the_play_tree(seed in any::<u64>(), n in 1usize..4, k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, n);
        let vi = g.value_iteration(k).unwrap();
        let tree: Vec<Rat> = (0..n).map(|i| tree_value(&g, i, k)).collect();
        prop_assert_eq!(vi.values, tree);
    }

    #[test]
    fn residuals_do_not_grow(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, n);
        let mut v = vec![int(0); n];
        let mut prev = g.eval(&v).unwrap();
        let first = hilbert_seminorm(&sub(&prev, &v));
        for _ in 0..10 {
            v = prev;
            prev = g.eval(&v).unwrap();
            prop_assert!(hilbert_seminorm(&sub(&prev, &v)) <= first);
        }
    }

    #[test]
    fn cells_are_exactly_the_fixed_points(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, n);
        let cx = g.enumerate_cells(&CellOptions::default()).unwrap();
        let Some(lambda) = cx.lambda.clone() else { return Ok(()) };
        let h = g.recentered(&lambda);
        let (u, _) = g.find_eigen(10_000).unwrap().unwrap();
        prop_assert!(h.check_eigen(&u, &int(0)).unwrap());
        prop_assert!(cx.covers(&u).unwrap());
        prop_assert!(!cx.cells.is_empty());
        for cell in &cx.cells {
            for _ in 0..5 {
                let x = cell.poly.project_up(&sample::point(&mut rng, n, 4, 3)).unwrap();
                prop_assert_eq!(h.eval(&x).unwrap(), x.clone());
                let tau = h.type_of(&x).unwrap();
                prop_assert!(cell.tau.refines(&tau));
                let own = h.cell_of_type(&tau).unwrap().expect("x lies in its own cell");
                prop_assert!(own.contains(&x).unwrap());
                prop_assert!(cx.cells.iter().any(|c| own.is_subset_of(&c.poly)));
            }
        }
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 3, 2);
            prop_assert_eq!(h.eval(&x).unwrap() == x, cx.covers(&x).unwrap());
        }
    }

    #[test]
    fn merged_types_intersect_cells(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, n);
        let cx = g.enumerate_cells(&CellOptions::default()).unwrap();
        let Some(lambda) = cx.lambda.clone() else { return Ok(()) };
        let h = g.recentered(&lambda);
        for a in &cx.cells {
            for b in &cx.cells {
                let merged = h.cell_of_type(&a.tau.merge(&b.tau)).unwrap();
                let meet = a.poly.intersect(&b.poly).unwrap();
                prop_assert_eq!(merged.map(|p| p.canonical()), meet.map(|p| p.canonical()));
            }
        }
    }

    #[test]
    fn calibrated_paths_stay_within_bounds(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_game(&mut rng, n);
        let Some((u, lambda)) = g.find_eigen(10_000).unwrap() else { return Ok(()) };
        prop_assert_eq!(top(&u), int(0));
        let pol = g.calibrated_policies(&u, &lambda).unwrap();
        prop_assert!(pol.is_proper());
        prop_assert_eq!(g.verify_calibrated(&u, &lambda, &pol, 5, 12).unwrap(), None);
    }
}
