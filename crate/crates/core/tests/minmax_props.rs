use ambitropical::minmax::{ShapleyOp, Term, DEFAULT_NORMAL_FORM_CAP};
use ambitropical::scalar::{int, ratio};
use ambitropical::tropical::{shift, sup_dist};
use ambitropical::{sample, Rat};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_term(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        let v = Term::Var(rng.gen_range(0..n));
        return if rng.gen_bool(0.5) { Term::shift(int(rng.gen_range(-3..=3)), v) } else { v };
    }
    let k = rng.gen_range(2..=3);
    let args: Vec<Term> = (0..k).map(|_| random_term(rng, n, depth - 1)).collect();
    let t = if rng.gen_bool(0.5) { Term::Max(args) } else { Term::Min(args) };
    if rng.gen_bool(0.3) {
        Term::shift(int(rng.gen_range(-2..=2)), t)
    } else {
        t
    }
}

fn random_op(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> ShapleyOp {
    ShapleyOp::new(n, (0..n).map(|_| random_term(rng, n, depth)).collect()).unwrap()
}

/// Sum of the absolute values of every constant in a term.
fn constant_mass(t: &Term) -> Rat {
    match t {
        Term::Var(_) => int(0),
        Term::Shift(c, t) => c.abs() + constant_mass(t),
        Term::Max(ts) | Term::Min(ts) => ts.iter().map(constant_mass).max().unwrap_or_else(|| int(0)),
        Term::Affine { r, .. } => r.abs(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normal_forms_preserve_evaluation(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        let cnf = t.cnf(DEFAULT_NORMAL_FORM_CAP).unwrap();
        let dnf = t.dnf(DEFAULT_NORMAL_FORM_CAP).unwrap();
        let pair = t.to_proper_pair().unwrap();
        let back = pair.to_operator();
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 5, 4);
            let tx = t.eval(&x).unwrap();
            prop_assert_eq!(&cnf.iter().map(|f| f.eval(&x)).collect::<Vec<_>>(), &tx);
            prop_assert_eq!(&dnf.iter().map(|f| f.eval(&x)).collect::<Vec<_>>(), &tx);
            prop_assert_eq!(&pair.eval(&x).unwrap(), &tx);
            prop_assert_eq!(&back.eval(&x).unwrap(), &tx);
        }
    }

    #[test]
    fn composition_and_lattice_operations(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (random_op(&mut rng, n, 2), random_op(&mut rng, n, 2));
        let st = s.compose(&t).unwrap();
        let (j, m) = (s.join(&t).unwrap(), s.meet(&t).unwrap());
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 5, 4);
            let (sx, tx) = (s.eval(&x).unwrap(), t.eval(&x).unwrap());
            prop_assert_eq!(st.eval(&x).unwrap(), s.eval(&tx).unwrap());
            prop_assert_eq!(j.eval(&x).unwrap(), ambitropical::tropical::join(&sx, &tx));
            prop_assert_eq!(m.eval(&x).unwrap(), ambitropical::tropical::meet(&sx, &tx));
        }
    }

    #[test]
    fn shapley_operators_are_nonexpansive(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 5, 4);
            let y = sample::point(&mut rng, n, 5, 4);
            let c = sample::rat(&mut rng, 3, 4);
            prop_assert!(sup_dist(&t.eval(&x).unwrap(), &t.eval(&y).unwrap()) <= sup_dist(&x, &y));
            prop_assert_eq!(t.eval(&shift(&x, &c)).unwrap(), shift(&t.eval(&x).unwrap(), &c));
        }
    }

    #[test]
    fn semiderivative_is_exact_near_the_base_point(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        let u = sample::point(&mut rng, n, 3, 4);
        let d = t.semiderivative(&u).unwrap();
        prop_assert!(d.is_constant_free());
        let tu = t.eval(&u).unwrap();
        let s = ratio(1, 1000);
        for _ in 0..20 {
            let h = sample::point(&mut rng, n, 2, 3);
            let moved: Vec<Rat> = u.iter().zip(&h).map(|(a, b)| a + &s * b).collect();
            let expected: Vec<Rat> = tu.iter().zip(d.eval(&h).unwrap()).map(|(a, b)| a + &s * b).collect();
            prop_assert_eq!(t.eval(&moved).unwrap(), expected);
            prop_assert_eq!(d.recession().eval(&h).unwrap(), d.eval(&h).unwrap());
        }
    }

    #[test]
    fn homogeneous_operators_are_their_own_derivative(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3).recession();
        let d = t.semiderivative(&vec![int(0); n]).unwrap();
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 5, 4);
            prop_assert_eq!(d.eval(&x).unwrap(), t.eval(&x).unwrap());
        }
    }

    #[test]
    fn recession_stays_within_the_constants(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        let r = t.recession();
        for _ in 0..20 {
            let x: Vec<Rat> = sample::point(&mut rng, n, 5, 4).into_iter().map(|v| v * int(1000)).collect();
            let (tx, rx) = (t.eval(&x).unwrap(), r.eval(&x).unwrap());
            for ((a, b), term) in tx.iter().zip(&rx).zip(t.coords()) {
                prop_assert!((a - b).abs() <= constant_mass(term));
            }
        }
    }

    #[test]
    fn flip_is_conjugation_by_negation(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        let f = t.flip();
        prop_assert_eq!(f.flip(), t.clone());
        for _ in 0..20 {
            let x = sample::point(&mut rng, n, 5, 4);
            let neg: Vec<Rat> = x.iter().map(|v| -v).collect();
            let expected: Vec<Rat> = t.eval(&neg).unwrap().into_iter().map(|v| -v).collect();
            prop_assert_eq!(f.eval(&x).unwrap(), expected);
        }
    }

    #[test]
    fn operators_survive_json(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_op(&mut rng, n, 3);
        let text = serde_json::to_string(&t).unwrap();
        let back: ShapleyOp = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, t);
    }
}
