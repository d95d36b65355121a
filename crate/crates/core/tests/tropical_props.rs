use ambitropical::alcoved::AlcovedPoly;
use ambitropical::scalar::int;
use ambitropical::tropical::{hilbert_seminorm, join, leq, meet, shift, sup_dist, TropMat};
use ambitropical::{sample, Ext, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_entry() -> impl Strategy<Value = Ext> {
    prop_oneof![Just(Ext::NegInf), Just(Ext::int(-1)), Just(Ext::int(0)), Just(Ext::int(1))]
}

fn small_matrix(n: usize) -> impl Strategy<Value = TropMat> {
    prop::collection::vec(small_entry(), n * n).prop_map(move |d| TropMat::new(n, n, d).unwrap())
}

/// Entries `-inf` or in `[-3, 0]`: never a positive circuit.
fn nonpositive_matrix(rng: &mut ChaCha8Rng, n: usize) -> TropMat {
    TropMat::from_fn(n, n, |_, _| if rng.gen_bool(0.4) { Ext::NegInf } else { Ext::Fin(-sample::nonneg_rat(rng, 3, 4)) })
}

fn brute_product(a: &TropMat, b: &TropMat) -> TropMat {
    TropMat::from_fn(a.rows(), b.cols(), |i, j| {
        let mut best = Ext::NegInf;
        for k in 0..a.cols() {
            if let (Some(x), Some(y)) = (a.get(i, k).finite(), b.get(k, j).finite()) {
                best = best.max(Ext::Fin(x + y));
            }
        }
        best
    })
}

fn floyd_warshall(m: &TropMat) -> TropMat {
    let n = m.rows();
    let mut d: Vec<Vec<Ext>> = m.to_rows();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = row[i].clone().max(Ext::zero());
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k].finite(), d[k][j].finite()) {
                    let via = Ext::Fin(x + y);
                    if via > d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
    }
    TropMat::from_rows(d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matmul_is_associative_with_identity(a in small_matrix(3), b in small_matrix(3), c in small_matrix(3)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(&ab, &brute_product(&a, &b));
        prop_assert_eq!(ab.matmul(&c).unwrap(), a.matmul(&b.matmul(&c).unwrap()).unwrap());
        prop_assert_eq!(TropMat::identity(3).matmul(&a).unwrap(), a.clone());
        prop_assert_eq!(a.matmul(&TropMat::identity(3)).unwrap(), a);
    }

    #[test]
    fn star_matches_floyd_warshall(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = nonpositive_matrix(&mut rng, n);
        let s = m.kleene_star().unwrap();
        prop_assert_eq!(&s, &floyd_warshall(&m));
        let x = sample::point(&mut rng, n, 4, 3);
        let sx = s.apply_finite(&x).unwrap();
        prop_assert_eq!(s.apply_finite(&sx).unwrap(), sx);
    }

    #[test]
    fn residuation_is_a_galois_connection(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = TropMat::from_fn(rows, cols, |i, j| {
            if i == j % rows || rng.gen_bool(0.6) { Ext::Fin(sample::rat(&mut rng, 3, 2)) } else { Ext::NegInf }
        });
        let x = sample::point(&mut rng, cols, 4, 2);
        let y = sample::point(&mut rng, rows, 4, 2);
        let ax = a.apply(&x).unwrap();
        let lhs = ax.iter().zip(&y).all(|(l, r)| *l <= Ext::Fin(r.clone()));
        let rhs = leq(&x, &a.adjoint_apply(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
        // A♯(Ax) ≥ x, with A x finite on rows meeting the support
        if ax.iter().all(|e| e.finite().is_some()) {
            let fin: Vec<Rat> = ax.iter().map(|e| e.finite().unwrap().clone()).collect();
            prop_assert!(leq(&x, &a.adjoint_apply(&fin).unwrap()));
        }
    }

    #[test]
    fn hilbert_seminorm_ignores_constants(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::point(&mut rng, n, 5, 3);
        let c = sample::rat(&mut rng, 5, 7);
        prop_assert_eq!(hilbert_seminorm(&shift(&x, &c)), hilbert_seminorm(&x));
    }

    #[test]
    fn alcoved_projections(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = AlcovedPoly::new(nonpositive_matrix(&mut rng, n)).unwrap();
        let x = sample::point(&mut rng, n, 5, 4);
        let y = join(&x, &sample::point(&mut rng, n, 5, 4));
        let c = sample::rat(&mut rng, 3, 5);
        for proj in [AlcovedPoly::project_up, AlcovedPoly::project_down] {
            let px = proj(&p, &x).unwrap();
            let py = proj(&p, &y).unwrap();
            prop_assert!(p.contains(&px).unwrap());
            prop_assert_eq!(proj(&p, &px).unwrap(), px.clone());
            prop_assert!(leq(&px, &py));
            prop_assert_eq!(proj(&p, &shift(&x, &c)).unwrap(), shift(&px, &c));
            prop_assert!(sup_dist(&px, &py) <= sup_dist(&x, &y));
        }
        prop_assert!(leq(&p.project_down(&x).unwrap(), &x));
        prop_assert!(leq(&x, &p.project_up(&x).unwrap()));
        let (u, v) = (p.project_up(&x).unwrap(), p.project_down(&y).unwrap());
        prop_assert!(p.contains(&join(&u, &v)).unwrap());
        prop_assert!(p.contains(&meet(&u, &v)).unwrap());
        prop_assert!(p.generators().len() <= n);
        prop_assert!(p.dimension() <= n && p.dimension() >= 1);
    }
}

#[test]
fn positive_loop_is_rejected() {
    let m = TropMat::from_rows(vec![vec![Ext::NegInf, Ext::int(1)], vec![Ext::int(0), Ext::NegInf]]).unwrap();
    match m.kleene_star() {
        Err(ambitropical::Error::PositiveCircuit { circuit, weight }) => {
            assert_eq!(circuit.len(), 2);
            assert_eq!(weight, int(1));
        }
        other => panic!("{other:?}"),
    }
}
