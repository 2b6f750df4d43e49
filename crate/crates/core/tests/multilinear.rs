mod common;

use aholo::multilinear::{
    antisymmetrize_fk, det::det, norm_bracket, pullback, pullback_invert, wedge_basis, ALinearMap, AVector, AntisymForm,
    MultilinearMap,
};
use aholo::{Algebra, Error};
use common::*;
use itertools::Itertools;
use proptest::prelude::*;

fn close(a: &aholo::AlgebraElement, b: &[num_complex::Complex64], tol: f64) -> bool {
    a.components().iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * y.norm().max(1.0))
}

#[test]
fn determinant_matches_leibniz() {
    let mut rng = rng(21);
    for k in 0..=6 {
        let entries: Vec<_> = (0..k * k).map(|_| random_complex(&mut rng, 1.0)).collect();
        let want = leibniz_det(&entries, k);
        assert!((det(&entries, k) - want).norm() <= 1e-12 * want.norm().max(1.0), "k = {k}");
    }
}

#[test]
fn eval_matches_determinant_oracle() {
    let mut rng = rng(22);
    for n in 1..=4 {
        for k in 0..=n.min(3) {
            let alg = Algebra::new(2).unwrap();
            let f = random_form(&mut rng, alg, n, k);
            let args: Vec<AVector> = (0..k).map(|_| random_vector(&mut rng, alg, n, 1.0)).collect();
            assert!(close(&f.eval(&args).unwrap(), &oracle_form_eval(&f, &args), 1e-12));
        }
    }
}

#[test]
fn antisymmetric_under_every_transposition() {
    let mut rng = rng(23);
    let alg = Algebra::new(3).unwrap();
    for n in 2..=4 {
        for k in 2..=n.min(3) {
            let f = random_form(&mut rng, alg, n, k);
            let args: Vec<AVector> = (0..k).map(|_| random_vector(&mut rng, alg, n, 1.0)).collect();
            let base = f.eval(&args).unwrap();
            for (a, b) in (0..k).tuple_combinations() {
                let mut swapped = args.clone();
                swapped.swap(a, b);
                assert_eq!(f.eval(&swapped).unwrap(), -&base);
            }
        }
    }
}

#[test]
fn tensor_expansion_agrees_with_eval() {
    let mut rng = rng(24);
    let alg = Algebra::new(2).unwrap();
    for n in 1..=4 {
        for k in 1..=n.min(3) {
            for idx in wedge_basis(n, k) {
                let expansion = antisymmetrize_fk(&idx, n).unwrap();
                assert_eq!(expansion.terms.len(), (1..=k).product::<usize>());
                let f = AntisymForm::monomial(alg, n, &idx, alg.one()).unwrap();
                let args: Vec<AVector> = (0..k).map(|_| random_vector(&mut rng, alg, n, 1.0)).collect();
                let via_tensor = expansion.eval(alg, &args).unwrap();
                assert!((&via_tensor - &f.eval(&args).unwrap()).norm() < 1e-13);
            }
        }
    }
}

#[test]
fn pullback_identity_and_contravariance() {
    let mut rng = rng(25);
    for case in 0..100 {
        let alg = Algebra::new(1 + case % 3).unwrap();
        let (n1, n2, n3) = (1 + case % 4, 1 + (case / 4) % 4, 1 + (case / 16) % 3);
        let k = case % (n3.min(n2).min(n1) + 1);
        let f_map = random_map(&mut rng, alg, n2, n1);
        let g_map = random_map(&mut rng, alg, n3, n2);
        let f = random_form(&mut rng, alg, n3, k);
        let args: Vec<AVector> = (0..k).map(|_| random_vector(&mut rng, alg, n1, 1.0)).collect();

        let pulled = pullback(&f_map, &pullback(&g_map, &f).unwrap()).unwrap();
        let direct = pullback(&g_map.compose(&f_map).unwrap(), &f).unwrap();
        assert!(pulled.distance(&direct) <= 1e-12 * direct.coeffs().iter().map(|a| a.norm()).fold(1.0, f64::max));

        let gf = g_map.compose(&f_map).unwrap();
        let pushed: Vec<AVector> = args.iter().map(|x| gf.apply(x).unwrap()).collect();
        let lhs = direct.eval(&args).unwrap();
        let rhs = f.eval(&pushed).unwrap();
        assert!((&lhs - &rhs).norm() <= 1e-12 * rhs.norm().max(1.0), "case {case}");
    }
}

#[test]
fn pullback_inverse_round_trip() {
    let mut rng = rng(26);
    for case in 0..50 {
        let alg = Algebra::new(1 + case % 3).unwrap();
        let n = 1 + case % 4;
        let k = case % (n + 1);
        let f = random_invertible(&mut rng, alg, n, 1e3);
        let g = random_form(&mut rng, alg, n, k);
        let back = pullback(&f, &pullback_invert(&f, &g).unwrap()).unwrap();
        assert!(back.distance(&g) <= 1e-11, "case {case}: {}", back.distance(&g));
    }
}

#[test]
fn singular_pullback_invert() {
    let alg = Algebra::new(2).unwrap();
    let f = ALinearMap::diag(alg, vec![aholo::AlgebraElement::from_reals(&[1.0, 0.0])]).unwrap();
    let g = AntisymForm::monomial(alg, 1, &[0], alg.one()).unwrap();
    assert_eq!(pullback_invert(&f, &g), Err(Error::SingularMap { components: vec![1] }));
}

#[test]
fn norm_bracket_contains_sampled_values() {
    let mut rng = rng(27);
    let alg = Algebra::new(2).unwrap();
    let f = random_form(&mut rng, alg, 3, 2);
    let b = norm_bracket(&MultilinearMap::from_form(&f));
    assert!(b.lower <= b.upper * (1.0 + 1e-12));
    for _ in 0..50 {
        let args: Vec<AVector> = (0..2).map(|_| random_disk_vector(&mut rng, alg, 3, 1.0)).collect();
        let scale: f64 = args.iter().map(|a| a.norm()).product();
        assert!(f.eval(&args).unwrap().norm() <= b.upper * scale * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multilinear_in_each_slot(seed in 0u64..10_000, slot in 0usize..3, s in -3.0f64..3.0) {
        let mut rng = rng(seed);
        let alg = Algebra::new(2).unwrap();
        let f = random_form(&mut rng, alg, 4, 3);
        let args: Vec<AVector> = (0..3).map(|_| random_vector(&mut rng, alg, 4, 1.0)).collect();
        let y = random_vector(&mut rng, alg, 4, 1.0);
        let a = random_element(&mut rng, 2, 1.0);
        let mut combo = args.clone();
        combo[slot] = &args[slot].scale(&a) + &y.scale_complex(c(s, 0.0));
        let mut with_y = args.clone();
        with_y[slot] = y;
        let lhs = f.eval(&combo).unwrap();
        let rhs = &(&a * &f.eval(&args).unwrap()) + &f.eval(&with_y).unwrap().scale(c(s, 0.0));
        prop_assert!((&lhs - &rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn identity_pullback_is_identity(seed in 0u64..10_000, n in 1usize..5, k in 0usize..4) {
        prop_assume!(k <= n);
        let mut rng = rng(seed);
        let alg = Algebra::new(3).unwrap();
        let f = random_form(&mut rng, alg, n, k);
        prop_assert_eq!(pullback(&ALinearMap::identity(alg, n), &f).unwrap(), f);
    }
}
