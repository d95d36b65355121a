use ambitropical::alcoved::AlcovedPoly;
use ambitropical::fixtures;
use ambitropical::minmax::ShapleyOp;
use ambitropical::retract::{lattice_inf, lattice_sup, AmbiCone, GeneratorSet, Retraction};
use ambitropical::scalar::int;
use ambitropical::tropical::{leq, TropMat};
use ambitropical::{sample, Ext, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_alcoved(rng: &mut ChaCha8Rng, n: usize) -> AlcovedPoly {
    let m = TropMat::from_fn(n, n, |i, j| {
        if i == j || rng.gen_bool(0.5) {
            Ext::NegInf
        } else {
            Ext::Fin(-sample::nonneg_rat(rng, 2, 2))
        }
    });
    AlcovedPoly::new(m).unwrap()
}

/// A random union of alcoved polyhedra, or a random finite set.
fn random_generators(rng: &mut ChaCha8Rng, n: usize) -> (GeneratorSet, Vec<Vec<Rat>>) {
    let k = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        let pieces: Vec<AlcovedPoly> = (0..k).map(|_| random_alcoved(rng, n)).collect();
        let members: Vec<Vec<Rat>> = pieces
            .iter()
            .flat_map(|p| (0..3).map(|_| p.project_up(&sample::point(rng, n, 4, 3)).unwrap()).collect::<Vec<_>>())
            .collect();
        (GeneratorSet::from_alcoved_union(&pieces).unwrap(), members)
    } else {
        let pts: Vec<Vec<Rat>> = (0..k + 2).map(|_| sample::point(rng, n, 3, 4)).collect();
        (GeneratorSet::from_points(&pts).unwrap(), pts)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_retractions(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, members) = random_generators(&mut rng, n);
        for p in &members {
            prop_assert_eq!(&g.q_minus(p).unwrap(), p);
            prop_assert_eq!(&g.q_plus(p).unwrap(), p);
        }
        for _ in 0..30 {
            let z = sample::point(&mut rng, n, 5, 3);
            let (pmax, pmin) = (g.p_max(&z).unwrap(), g.p_min(&z).unwrap());
            prop_assert!(leq(&pmax, &z) && leq(&z, &pmin));
            prop_assert_eq!(&g.p_max(&pmax).unwrap(), &pmax);
            prop_assert_eq!(&g.p_min(&pmin).unwrap(), &pmin);
            let qm = g.q_minus(&z).unwrap();
            let qp = g.q_plus(&z).unwrap();
            prop_assert_eq!(&g.q_minus(&qm).unwrap(), &qm);
            prop_assert_eq!(&g.q_plus(&qp).unwrap(), &qp);
            prop_assert_eq!(&g.q_plus(&g.q_minus(&qp).unwrap()).unwrap(), &qp);
            prop_assert_eq!(&g.q_minus(&g.q_plus(&qm).unwrap()).unwrap(), &qm);
            prop_assert!(leq(&qp, &g.q_minus(&qp).unwrap()));
            prop_assert!(leq(&g.q_plus(&qm).unwrap(), &qm));
        }
    }

    #[test]
    fn points_fixed_by_both_projections_are_in_the_cone(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_generators(&mut rng, n);
        for _ in 0..30 {
            let z = sample::point(&mut rng, n, 5, 3);
            for y in [g.p_max(&g.p_min(&z).unwrap()).unwrap(), g.p_min(&g.p_max(&z).unwrap()).unwrap()] {
                if g.p_max(&y).unwrap() == y && g.p_min(&y).unwrap() == y {
                    prop_assert_eq!(&g.q_minus(&y).unwrap(), &y);
                }
            }
        }
    }

    #[test]
    fn fixed_points_form_a_lattice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = fixtures::unit_butterfly_retraction();
        let x = q.eval(&sample::point(&mut rng, 3, 3, 4)).unwrap();
        let y = q.eval(&sample::point(&mut rng, 3, 3, 4)).unwrap();
        let sup = lattice_sup(&q, &x, &y, 100).unwrap();
        let inf = lattice_inf(&q, &x, &y, 100).unwrap();
        prop_assert_eq!(&q.eval(&sup).unwrap(), &sup);
        prop_assert_eq!(&q.eval(&inf).unwrap(), &inf);
        prop_assert!(leq(&x, &sup) && leq(&y, &sup) && leq(&inf, &x) && leq(&inf, &y));
        // least upper bound among fixed points above both
        let w = q.eval(&ambitropical::tropical::join(&sup, &sample::point(&mut rng, 3, 3, 4))).unwrap();
        if leq(&x, &w) && leq(&y, &w) {
            prop_assert!(leq(&sup, &w));
        }
    }

    #[test]
    fn canonical_retractions_bound_every_retraction(seed in any::<u64>()) {
        // the butterfly operator retracts onto the butterfly cone
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fixtures::butterfly_generators();
        let t: ShapleyOp = fixtures::butterfly();
        let cone = AmbiCone::new(g.clone());
        for _ in 0..30 {
            let z = sample::point(&mut rng, 3, 5, 3);
            let tz = t.eval(&z).unwrap();
            prop_assert!(cone.is_fixed(&tz).unwrap());
            prop_assert!(leq(&g.q_minus(&z).unwrap(), &tz) && leq(&tz, &g.q_plus(&z).unwrap()));
        }
    }
}

#[test]
fn generator_sets_must_cover_every_coordinate() {
    let g = ambitropical::tropical::TropVec(vec![Ext::zero(), Ext::NegInf]);
    assert!(GeneratorSet::new(2, vec![g.clone()], vec![ambitropical::tropical::TropVec(vec![Ext::zero(), Ext::zero()])]).is_err());
    assert!(GeneratorSet::new(2, vec![], vec![g]).is_err());
    assert!(GeneratorSet::from_points(&[vec![int(0), int(1)]]).is_ok());
}
