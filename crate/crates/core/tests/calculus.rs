mod common;

use aholo::calculus::{
    adaptive_directional_derivative, cauchy_directional_derivative, check_pointwise_locality, complex_jacobian,
    frechet_matrix, is_a_differentiable, second_derivative, HolomorphicMapSpec, LocalityOutcome, PolyMap, PolyTerm,
    DEFAULT_NODES, DEFAULT_TOL,
};
use aholo::domain::{DomainDescriptor, Region};
use aholo::multilinear::AVector;
use aholo::{Algebra, AlgebraElement, Error};
use common::*;
use proptest::prelude::*;

fn square(alg: Algebra) -> PolyMap {
    PolyMap::new(alg, 1, 1, vec![PolyTerm { output: 0, exponents: vec![2], coeff: alg.one() }]).unwrap()
}

#[test]
fn square_at_one() {
    let alg = Algebra::new(1).unwrap();
    let f = HolomorphicMapSpec::polynomial(square(alg));
    let z = AVector::new(alg, vec![alg.one()]).unwrap();
    let d = cauchy_directional_derivative(&f, &z, &z, DEFAULT_NODES).unwrap();
    assert!((d.coord(0, 0) - c(2.0, 0.0)).norm() < 1e-14);
}

#[test]
fn quadrature_is_exact_for_polynomials() {
    let mut rng = rng(11);
    for case in 0..30 {
        let alg = Algebra::new(1 + case % 3).unwrap();
        let n = 1 + (case / 3) % 3;
        let p = random_poly(&mut rng, alg, n, 2, 10, 6);
        let f = HolomorphicMapSpec::polynomial(p.clone());
        let z = random_disk_vector(&mut rng, alg, n, 1.0);
        let zdot = random_vector(&mut rng, alg, n, 1.0);
        let got = cauchy_directional_derivative(&f, &z, &zdot, DEFAULT_NODES).unwrap();
        let want = symbolic_derivative(&p, &z, &zdot);
        let err = distance_to(&got, &want) / max_abs(&want).max(1e-300);
        assert!(err <= 1e-11, "case {case}: {err}");
    }
}

#[test]
fn frechet_matches_symbolic_jacobian() {
    let mut rng = rng(12);
    let alg = Algebra::new(2).unwrap();
    let p = random_poly(&mut rng, alg, 3, 2, 5, 8);
    let f = HolomorphicMapSpec::polynomial(p.clone());
    let z = random_disk_vector(&mut rng, alg, 3, 1.0);
    let got = frechet_matrix(&f, &z, DEFAULT_NODES).unwrap();
    assert!(got.distance(&symbolic_jacobian(&p, &z)) < 1e-11);
}

#[test]
fn chain_rule() {
    // D(g ∘ f) = Dg(f(z)) ∘ Df(z)
    let mut rng = rng(13);
    let alg = Algebra::new(2).unwrap();
    let pf = random_poly(&mut rng, alg, 2, 2, 3, 5);
    let pg = random_poly(&mut rng, alg, 2, 1, 3, 5);
    let (pf2, pg2) = (pf.clone(), pg.clone());
    let composite = HolomorphicMapSpec::blackbox(alg, 2, 1, DomainDescriptor::full(alg, 2), move |z| {
        pg2.eval(&pf2.eval(z).unwrap()).unwrap()
    });
    let z = random_disk_vector(&mut rng, alg, 2, 0.5);
    let lhs = frechet_matrix(&composite, &z, DEFAULT_NODES).unwrap();
    let rhs = symbolic_jacobian(&pg, &pf.eval(&z).unwrap()).compose(&symbolic_jacobian(&pf, &z)).unwrap();
    assert!(lhs.distance(&rhs) <= 1e-10 * rhs.entries().iter().map(|a| a.norm()).fold(1.0, f64::max));
}

#[test]
fn second_derivative_matches_symbolic() {
    let mut rng = rng(14);
    for m in 1..=2 {
        let alg = Algebra::new(m).unwrap();
        let p = random_poly(&mut rng, alg, 2, 1, 4, 6);
        let f = HolomorphicMapSpec::polynomial(p.clone());
        let z = random_disk_vector(&mut rng, alg, 2, 0.5);
        let h = random_vector(&mut rng, alg, 2, 1.0);
        let zdot = random_vector(&mut rng, alg, 2, 1.0);
        let got = second_derivative(&f, &z, &h, &zdot, DEFAULT_NODES).unwrap();
        let want = symbolic_second_derivative(&p, &z, &h, &zdot);
        assert!(distance_to(&got, &want) <= 1e-9 * max_abs(&want).max(1.0));
    }
}

#[test]
fn adaptive_converges_on_entire_functions() {
    let alg = Algebra::new(2).unwrap();
    let f = HolomorphicMapSpec::blackbox(alg, 1, 1, DomainDescriptor::full(alg, 1), |z| z.map_coords(|x| x.exp()));
    let z = AVector::new(alg, vec![AlgebraElement::from_pairs(&[(0.3, 0.1), (-0.5, 2.0)])]).unwrap();
    let zdot = AVector::new(alg, vec![alg.one()]).unwrap();
    let (d, nodes) = adaptive_directional_derivative(&f, &z, &zdot).unwrap();
    assert!(nodes >= 128);
    for j in 0..2 {
        assert!((d.coord(0, j) - z.coord(0, j).exp()).norm() < 1e-12);
    }
}

#[test]
fn boundary_and_domain_errors() {
    let alg = Algebra::new(1).unwrap();
    let disk = DomainDescriptor::uniform(alg, 1, Region::disk(c(0.0, 0.0), 1.0));
    let f = HolomorphicMapSpec::polynomial(square(alg)).with_domain(disk).unwrap();
    let on_edge = AVector::new(alg, vec![alg.one()]).unwrap();
    assert!(matches!(
        cauchy_directional_derivative(&f, &on_edge, &on_edge, 64),
        Err(Error::BoundaryTooClose { .. })
    ));
    let inside = AVector::new(alg, vec![alg.scalar(c(0.5, 0.0))]).unwrap();
    let d = cauchy_directional_derivative(&f, &inside, &on_edge, 64).unwrap();
    assert!((d.coord(0, 0) - c(1.0, 0.0)).norm() < 1e-13);
}

#[test]
fn detector_classifies() {
    let mut rng = rng(15);
    let alg = Algebra::new(3).unwrap();
    let samples: Vec<AVector> = (0..4).map(|_| random_disk_vector(&mut rng, alg, 1, 1.0)).collect();
    let p = HolomorphicMapSpec::polynomial(random_poly(&mut rng, alg, 1, 1, 4, 5));
    assert!(is_a_differentiable(&p, &samples, DEFAULT_TOL, DEFAULT_NODES).unwrap().verdict);

    let swap = permutation_map(3, &[1, 0, 2]);
    let r = is_a_differentiable(&swap, &samples, DEFAULT_TOL, DEFAULT_NODES).unwrap();
    assert!(!r.verdict);
    let w = r.witness.unwrap();
    assert_ne!(w.output.1, w.input.1);

    assert!(matches!(
        is_a_differentiable(&conjugation_map(3), &samples, DEFAULT_TOL, DEFAULT_NODES),
        Err(Error::NonHolomorphic(_))
    ));
}

#[test]
fn jacobian_layout() {
    // output char 0 = z_(1); rows o*m + j, columns l*m + j'
    let f = permutation_map(2, &[1, 0]);
    let z = AVector::new(Algebra::new(2).unwrap(), vec![AlgebraElement::from_reals(&[0.5, -0.5])]).unwrap();
    let jac = complex_jacobian(&f, &z, 64).unwrap();
    assert!((jac.matrix[(0, 1)] - c(1.0, 0.0)).norm() < 1e-14);
    assert!(jac.matrix[(0, 0)].norm() < 1e-14);
}

#[test]
fn locality() {
    let mut rng = rng(16);
    for m in [2, 5] {
        let alg = Algebra::new(m).unwrap();
        let p = HolomorphicMapSpec::polynomial(random_poly(&mut rng, alg, 2, 1, 3, 5));
        let u0 = random_disk_vector(&mut rng, alg, 2, 1.0);
        let mut u1 = random_disk_vector(&mut rng, alg, 2, 1.0);
        for l in 0..2 {
            u1.set_coord(l, 1, u0.coord(l, 1));
        }
        let r = check_pointwise_locality(&p, &u0, &u1, 1, 1e-10, 64).unwrap();
        assert_eq!(r.outcome, LocalityOutcome::Holds);
        assert!(r.integral_difference <= 1e-10);

        let one_var = |u: &AVector| AVector::new(alg, vec![u.entry(0).clone()]).unwrap();
        let sigma: Vec<usize> = (0..m).map(|j| (j + 1) % m).collect();
        for f in [permutation_map(m, &sigma), averaging_map(m)] {
            let r = check_pointwise_locality(&f, &one_var(&u0), &one_var(&u1), 1, 1e-10, 64).unwrap();
            assert!(matches!(r.outcome, LocalityOutcome::HypothesisFailed { .. }), "{r:?}");
        }
        assert!(matches!(
            check_pointwise_locality(&p, &u0, &u1, 0, 1e-10, 64),
            Err(Error::Precondition(_))
        ));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivative_is_linear_in_direction(seed in 0u64..1000, s in -2.0f64..2.0) {
        let mut rng = rng(seed);
        let alg = Algebra::new(2).unwrap();
        let p = random_poly(&mut rng, alg, 2, 1, 5, 5);
        let f = HolomorphicMapSpec::polynomial(p);
        let z = random_disk_vector(&mut rng, alg, 2, 1.0);
        let a = random_vector(&mut rng, alg, 2, 1.0);
        let b = random_vector(&mut rng, alg, 2, 1.0);
        let combo = &a.scale_complex(c(s, 0.0)) + &b;
        let lhs = cauchy_directional_derivative(&f, &z, &combo, 64).unwrap();
        let rhs = &cauchy_directional_derivative(&f, &z, &a, 64).unwrap().scale_complex(c(s, 0.0))
            + &cauchy_directional_derivative(&f, &z, &b, 64).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-10 * rhs.norm().max(1.0));
    }
}
