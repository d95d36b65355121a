use std::collections::BTreeSet;

use ambitropical::alcoved::AlcovedPoly;
use ambitropical::fixtures;
use ambitropical::games::{CellOptions, MeanPayoffGame};
use ambitropical::minmax::{ShapleyOp, Term};
use ambitropical::retract::{sunny_probe, AmbiCone};
use ambitropical::scalar::{int, ratio};
use ambitropical::tropical::{normalize_bottom, TropVec};
use ambitropical::{sample, Ext, Rat};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&a| int(a)).collect()
}

fn var(i: usize) -> Term {
    Term::Var(i - 1)
}

/// `x ↦ v - v_3`, points of R^3 modulo constants.
fn mod3(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|a| a - &v[2]).collect()
}

#[test]
fn butterfly_generators_are_the_listed_ones() {
    let g = fixtures::butterfly_generators();
    let n = Ext::NegInf;
    let z = Ext::zero();
    let expected: BTreeSet<TropVec> = [
        vec![n.clone(), z.clone(), n.clone()],
        vec![z.clone(), z.clone(), n.clone()],
        vec![z.clone(), z.clone(), z.clone()],
        vec![n.clone(), n.clone(), z.clone()],
        vec![z.clone(), n, z],
    ]
    .into_iter()
    .map(TropVec)
    .collect();
    assert_eq!(g.max_gens().iter().cloned().collect::<BTreeSet<_>>(), expected);
}

#[test]
fn butterfly_projection_formulas() {
    let g = fixtures::butterfly_generators();
    let p_max = ShapleyOp::new(3, vec![Term::Min(vec![var(1), Term::Max(vec![var(2), var(3)])]), var(2), var(3)]).unwrap();
    let p_min = ShapleyOp::new(3, vec![Term::Max(vec![var(1), Term::Min(vec![var(2), var(3)])]), var(2), var(3)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let x = sample::point(&mut rng, 3, 6, 5);
        assert_eq!(g.p_max(&x).unwrap(), p_max.eval(&x).unwrap());
        assert_eq!(g.p_min(&x).unwrap(), p_min.eval(&x).unwrap());
    }
}

#[test]
fn unit_butterfly_generators_and_retraction() {
    let g = fixtures::unit_butterfly_generators();
    let listed: BTreeSet<Vec<Rat>> =
        [pt(&[-1, 0, -1]), pt(&[0, 0, -1]), pt(&[0, 0, 0]), pt(&[-1, -1, 0]), pt(&[0, -1, 0])].into_iter().collect();
    let got: BTreeSet<Vec<Rat>> = g.max_gens().iter().map(fixtures::finite).collect();
    assert_eq!(got, listed);
    let q = fixtures::unit_butterfly_retraction();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let x = sample::point(&mut rng, 3, 4, 6);
        assert_eq!(g.q_minus(&x).unwrap(), q.eval(&x).unwrap());
    }
}

#[test]
fn segment_counterexample_values() {
    let g = fixtures::segment_generators(&fixtures::uniform_grid(100));
    let x = vec![int(2), ratio(1, 2), int(0)];
    let u = g.p_max(&x).unwrap();
    assert_eq!(u, vec![int(1), ratio(1, 2), int(0)]);
    assert_eq!(mod3(&g.p_min(&u).unwrap()), vec![ratio(3, 4), ratio(1, 4), int(0)]);

    let mut grid = fixtures::uniform_grid(100);
    grid.extend([ratio(5, 8), ratio(13, 16)]);
    let cone = AmbiCone::new(fixtures::segment_generators(&grid));
    let probe = sunny_probe(&cone, &x, &ratio(1, 2)).unwrap();
    assert_eq!(mod3(&probe.image), vec![ratio(3, 4), ratio(1, 4), int(0)]);
    assert_eq!(mod3(&probe.probe), vec![ratio(11, 8), ratio(3, 8), int(0)]);
    assert_eq!(mod3(&probe.probe_image), vec![ratio(13, 16), ratio(3, 16), int(0)]);
    assert!(!probe.sunny);
}

#[test]
fn segment_operator_fixes_the_segment() {
    let t = fixtures::segment_operator();
    for k in 0..=10 {
        let s = ratio(k, 10);
        let p = vec![s.clone(), int(1) - &s, int(0)];
        assert_eq!(t.eval(&p).unwrap(), p);
    }
}

#[test]
fn fathi_reproduction() {
    let g = fixtures::fathi_game();
    let u = fixtures::fathi_eigenvector();
    assert!(g.check_eigen(&u, &int(1)).unwrap());
    let (w, l) = g.find_eigen(1000).unwrap().unwrap();
    assert_eq!(l, int(1));
    assert_eq!(normalize_bottom(&w), normalize_bottom(&u));
    let vi = g.value_iteration(50).unwrap();
    for v in vi.mean.unwrap() {
        assert!((v - int(1)).abs() <= ratio(4, 50));
    }
}

#[test]
fn butterfly_cell_complex() {
    let g = MeanPayoffGame::from_operator(&fixtures::butterfly()).unwrap();
    let cx = g.enumerate_cells(&CellOptions::default()).unwrap();
    assert_eq!(cx.lambda, Some(int(0)));
    let dims: Vec<usize> = cx.cells.iter().map(|c| c.dimension).collect();
    assert_eq!(dims, vec![3, 3, 2, 2, 2, 2, 1]);
    let maximal = cx.maximal();
    assert_eq!(maximal.len(), 2);
    let [e1, e2] = fixtures::butterfly_wings();
    let stars: Vec<_> = maximal.iter().map(|&c| cx.cells[c].poly.star().clone()).collect();
    assert!(stars.contains(e1.star()) && stars.contains(e2.star()));
    let line = AlcovedPoly::order(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
    assert!(cx.cells.iter().any(|c| c.poly.star() == line.star()));
    let t = fixtures::butterfly();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                let x = pt(&[a, b, c]);
                assert_eq!(t.eval(&x).unwrap() == x, cx.covers(&x).unwrap(), "{x:?}");
            }
        }
    }
}

#[test]
fn nine_point_hull() {
    let pts = fixtures::nine_points();
    let hull = ambitropical::retract::ambitropical_hull(&pts).unwrap();
    for p in &pts {
        assert!(hull.contains(p).unwrap());
    }
}
