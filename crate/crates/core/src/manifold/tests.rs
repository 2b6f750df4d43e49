use num_complex::Complex64;

use super::*;
use crate::algebra::{Algebra, AlgebraElement};
use crate::calculus::{CoordFactor, CoordTerm, CoordinatePolyMap, HolomorphicMapSpec, PolyMap, PolyTerm};
use crate::domain::{DomainDescriptor, Region, DEFAULT_SEED};
use crate::error::Error;
use crate::multilinear::{ALinearMap, AVector, AntisymForm};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pt(a: Complex64, b: Complex64) -> AVector {
    AVector::from_entries(vec![AlgebraElement::new(vec![a, b])]).unwrap()
}

#[test]
fn manifold_n_transition_images() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let w1 = atlas.chart_index("W1").unwrap();
    let w3 = atlas.chart_index("W3").unwrap();
    let w4 = atlas.chart_index("W4").unwrap();
    let img = atlas.transition(w3, w1).unwrap().map.eval(&pt(c(0.0, 0.0), c(0.0, 2.0))).unwrap();
    assert_eq!(img, pt(c(2.0, 0.0), c(0.0, 1.0)));
    let img = atlas.transition(w4, w1).unwrap().map.eval(&pt(c(0.0, 0.0), c(0.0, 3.0))).unwrap();
    assert_eq!(img, pt(c(-2.0, 0.0), c(0.0, 1.0)));
}

#[test]
fn manifold_n_validates() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let report = validate_atlas(&atlas, 64, 1e-10, DEFAULT_SEED).unwrap();
    assert!(report.pass, "{report:#?}");
    assert_eq!(report.transitions.len(), 8);
    for t in &report.transitions {
        assert_eq!(t.worst_a_linearity, 0.0);
        assert!(t.worst_round_trip < 1e-15);
    }
}

#[test]
fn manifold_n_pairs_without_overlap() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let with_overlap: Vec<(usize, usize)> = atlas.transitions().iter().map(|t| (t.from.min(t.to), t.from.max(t.to))).collect();
    assert!(!with_overlap.contains(&(0, 1)));
    assert!(!with_overlap.contains(&(2, 3)));
    for pair in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        assert!(with_overlap.contains(&pair));
    }
}

#[test]
fn manifold_n_rejects_bad_constants() {
    for (c1, c2) in [(0.0, 1.0), (2.0, 1.0), (1.0, 1.0), (1.0, f64::INFINITY)] {
        assert!(matches!(build_manifold_n(c1, c2), Err(Error::BadParameters(_))));
    }
}

#[test]
fn manifold_n_bundle_transitions_are_identity() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let alg = atlas.algebra();
    for t in atlas.transitions() {
        for p in overlap_samples(&t.overlap, &atlas.charts()[t.from].domain, 8, 3) {
            assert_eq!(tangent_transition(&atlas, t.from, t.to, &p).unwrap(), ALinearMap::identity(alg, 1));
            for k in 0..=1 {
                assert_eq!(cotangent_transition(&atlas, t.from, t.to, &p, k).unwrap(), ALinearMap::identity(alg, 1));
            }
        }
    }
}

#[test]
fn not_in_overlap() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let p = pt(c(0.0, 0.0), c(0.0, 0.5));
    assert!(matches!(tangent_transition(&atlas, 2, 0, &p), Err(Error::NotInOverlap { .. })));
    assert!(matches!(tangent_transition(&atlas, 0, 1, &p), Err(Error::NotInOverlap { .. })));
}

#[test]
fn projective_line() {
    let atlas = build_projective_line(2).unwrap();
    let z = pt(c(2.0, 0.0), c(0.0, 1.0));
    assert_eq!(atlas.transition(0, 1).unwrap().map.eval(&z).unwrap(), pt(c(0.5, 0.0), c(0.0, -1.0)));
    let d = tangent_transition(&atlas, 0, 1, &z).unwrap();
    let want = -(&z.entry(0).powi(-2));
    assert!((d.get(0, 0) - &want).norm() < 1e-15);
    assert!(validate_atlas(&atlas, 32, 1e-10, DEFAULT_SEED).unwrap().pass);

    let f = AntisymForm::monomial(atlas.algebra(), 1, &[0], atlas.algebra().one()).unwrap();
    let g = transport_form(&atlas, 0, 1, &z, &f).unwrap();
    // dz = -w^{-2} dw with w = 1/z, so the coefficient is -z^2.
    let want = -(&z.entry(0).powi(2));
    assert!((&g.coeffs()[0] - &want).norm() < 1e-13);
}

#[test]
fn json_round_trip() {
    for atlas in [build_manifold_n(1.0, 2.0).unwrap(), build_projective_line(3).unwrap()] {
        let back = Atlas::from_json(&atlas.to_json()).unwrap();
        assert_eq!(back, atlas);
    }
}

#[test]
fn missing_inverse_is_structural() {
    let text = build_projective_line(1).unwrap().to_json();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["transitions"].as_array_mut().unwrap().pop();
    assert!(matches!(Atlas::from_json(&v.to_string()), Err(Error::StructuralError(_))));
}

fn single_chart(m: usize) -> Atlas {
    let alg = Algebra::new(m).unwrap();
    let chart = Chart {
        name: "U".into(),
        domain: DomainDescriptor::full(alg, 1),
        witness: AVector::zeros(alg, 1),
    };
    Atlas::new(alg, 1, vec![chart], Vec::new(), Vec::new()).unwrap()
}

#[test]
fn single_chart_passes_vacuously() {
    let atlas = single_chart(2);
    let report = validate_atlas(&atlas, 16, 1e-10, DEFAULT_SEED).unwrap();
    assert!(report.pass && report.transitions.is_empty());
    let glue = componentwise_glue_report(&atlas).unwrap();
    assert!(glue.components.iter().all(|c| c.gluings.is_empty() && c.candidates.is_empty()));
}

#[test]
fn conjugation_transition_fails() {
    let alg = Algebra::new(1).unwrap();
    let full = DomainDescriptor::full(alg, 1);
    let conj = CoordinatePolyMap::new(
        alg,
        1,
        1,
        vec![CoordTerm {
            output: [0, 0],
            coeff: [1.0, 0.0],
            factors: vec![CoordFactor {
                var: 0,
                comp: 0,
                power: 1,
                conj: true,
            }],
        }],
    )
    .unwrap();
    let charts = ["U", "V"]
        .map(|name| Chart {
            name: name.into(),
            domain: full.clone(),
            witness: AVector::zeros(alg, 1),
        })
        .to_vec();
    let transitions = vec![
        Transition {
            name: "f".into(),
            from: 0,
            to: 1,
            overlap: full.clone(),
            map: TransitionMap::Coordinate(conj.clone()),
            inverse: "g".into(),
        },
        Transition {
            name: "g".into(),
            from: 1,
            to: 0,
            overlap: full.clone(),
            map: TransitionMap::Coordinate(conj),
            inverse: "f".into(),
        },
    ];
    let atlas = Atlas::new(alg, 1, charts, transitions, Vec::new()).unwrap();
    let report = validate_atlas(&atlas, 16, 1e-10, DEFAULT_SEED).unwrap();
    assert!(!report.pass);
    assert!(report.transitions.iter().all(|t| t.non_holomorphic.is_some()));
}

#[test]
fn manifold_n_glue_candidates() {
    let atlas = build_manifold_n(1.0, 2.0).unwrap();
    let report = componentwise_glue_report(&atlas).unwrap();
    let first = &report.components[0];
    let w3_to_w1 = first.gluings.iter().find(|g| g.from == "W3" && g.to == "W1").unwrap();
    assert_eq!(w3_to_w1.source, Region::disk(c(0.0, 0.0), 1.0));
    assert_eq!(w3_to_w1.map, OneVarMap::Affine { scale: c(1.0, 0.0), shift: c(2.0, 0.0) });

    let pairs: Vec<_> = first.candidates.iter().map(|cand| cand.charts.clone()).collect();
    assert!(pairs.contains(&("W1".into(), "W2".into())));
    for cand in first.candidates.iter().filter(|cand| cand.charts == ("W1".into(), "W2".into())) {
        let r = (cand.p - c(2.0, 0.0)).norm().min((cand.p - c(-2.0, 0.0)).norm());
        assert!((r - 1.0).abs() < 1e-12);
        assert!((cand.p - cand.q).norm() < 1e-12);
        assert_eq!(cand.approach.len(), APPROACH_STEPS);
    }
    let second = &report.components[1];
    assert!(second.candidates.iter().any(|cand| cand.charts == ("W3".into(), "W4".into())));
}

#[test]
fn polynomial_tangent_matches_symbolic() {
    // (z1, z2) |-> (z1 + a z2^2, z2) and its inverse.
    let alg = Algebra::new(2).unwrap();
    let a = AlgebraElement::from_pairs(&[(0.5, 0.25), (-1.0, 0.0)]);
    let shear = |s: f64| {
        PolyMap::new(
            alg,
            2,
            2,
            vec![
                PolyTerm { output: 0, exponents: vec![1, 0], coeff: alg.one() },
                PolyTerm { output: 0, exponents: vec![0, 2], coeff: a.scale(c(s, 0.0)) },
                PolyTerm { output: 1, exponents: vec![0, 1], coeff: alg.one() },
            ],
        )
        .unwrap()
    };
    let full = DomainDescriptor::full(alg, 2);
    let charts = ["U", "V"]
        .map(|name| Chart { name: name.into(), domain: full.clone(), witness: AVector::zeros(alg, 2) })
        .to_vec();
    let transitions = vec![
        Transition { name: "f".into(), from: 0, to: 1, overlap: full.clone(), map: TransitionMap::Polynomial(shear(1.0)), inverse: "g".into() },
        Transition { name: "g".into(), from: 1, to: 0, overlap: full.clone(), map: TransitionMap::Polynomial(shear(-1.0)), inverse: "f".into() },
    ];
    let atlas = Atlas::new(alg, 2, charts, transitions, Vec::new()).unwrap();
    assert!(validate_atlas(&atlas, 16, 1e-10, DEFAULT_SEED).unwrap().pass);
    let z = AVector::new(alg, vec![AlgebraElement::from_pairs(&[(1.0, 2.0), (0.5, 0.0)]), AlgebraElement::from_pairs(&[(-0.5, 1.0), (3.0, -1.0)])]).unwrap();
    let d = tangent_transition(&atlas, 0, 1, &z).unwrap();
    let two_a_z2 = &a.scale(c(2.0, 0.0)) * z.entry(1);
    let want = ALinearMap::from_rows(alg, vec![vec![alg.one(), two_a_z2], vec![alg.zero(), alg.one()]]).unwrap();
    assert!(d.distance(&want) < 1e-11, "{}", d.distance(&want));
}

#[test]
fn global_forms() {
    let p1 = build_projective_line(1).unwrap();
    let alg = p1.algebra();
    let constant = |k: usize, n: usize| {
        HolomorphicMapSpec::polynomial(
            PolyMap::new(alg, n, 1, vec![PolyTerm { output: 0, exponents: vec![0; n], coeff: alg.one() }]).unwrap(),
        )
        .with_domain(DomainDescriptor::full(alg, n))
        .map(|s| (k, s))
        .unwrap()
    };
    let (_, one) = constant(0, 1);
    let r = check_global_form(&p1, 0, &[one.clone(), one.clone()], 16, 1e-10, DEFAULT_SEED).unwrap();
    assert!(r.pass);
    let r = check_global_form(&p1, 1, &[one.clone(), one.clone()], 16, 1e-10, DEFAULT_SEED).unwrap();
    assert!(!r.pass);
    assert!(matches!(
        check_global_form(&p1, 0, &[one], 16, 1e-10, DEFAULT_SEED),
        Err(Error::MissingChartData(_))
    ));

    let n = build_manifold_n(1.0, 2.0).unwrap();
    let alg2 = n.algebra();
    let one2 = HolomorphicMapSpec::polynomial(
        PolyMap::new(alg2, 1, 1, vec![PolyTerm { output: 0, exponents: vec![0], coeff: alg2.one() }]).unwrap(),
    );
    let r = check_global_form(&n, 1, &vec![one2; 4], 16, 1e-10, DEFAULT_SEED).unwrap();
    assert!(r.pass, "{r:#?}");
}
