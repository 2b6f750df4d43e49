use aholo::cohomology::{build_cech_complex, cohomology_ranks, CoverKind, CoverSpec, Sheaf};
use aholo::Algebra;
use proptest::prelude::*;

fn report(kind: CoverKind, m: usize, n: usize, d: usize, sheaf: Sheaf) -> aholo::cohomology::CohomologyReport {
    let cover = CoverSpec::new(kind, Algebra::new(m).unwrap(), n, d).unwrap();
    cohomology_ranks(&build_cech_complex(&cover, sheaf).unwrap()).unwrap()
}

#[test]
fn projective_line_is_stable_under_truncation() {
    for sheaf in [Sheaf::O, Sheaf::Omega(1)] {
        let ranks: Vec<_> = (2..=8).map(|d| report(CoverKind::P1TwoChart, 2, 1, d, sheaf).ranks).collect();
        assert!(ranks.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn overlap_window_rank() {
    // O: 2D + 1 overlap monomials; Ω¹: 2D + 3
    for d in 2..=8usize {
        assert_eq!(report(CoverKind::P1TwoChart, 1, 1, d, Sheaf::O).cochain_ranks, vec![2 * (d + 1), 2 * d + 1]);
        assert_eq!(report(CoverKind::P1TwoChart, 1, 1, d, Sheaf::Omega(1)).cochain_ranks, vec![2 * (d + 1), 2 * d + 3]);
    }
}

#[test]
fn forms_above_dimension_vanish() {
    let r = report(CoverKind::P1TwoChart, 1, 1, 4, Sheaf::Omega(2));
    assert_eq!(r.ranks, Some(vec![0, 0]));
    let r = report(CoverKind::PolydiskTwoCover, 1, 2, 2, Sheaf::Omega(2));
    assert_eq!(r.ranks, Some(vec![9, 0, 0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn euler_and_uniformity(kind in prop::sample::select(vec![CoverKind::SingleChart, CoverKind::P1TwoChart, CoverKind::PolydiskTwoCover]),
                            m in 1usize..4, n in 1usize..3, d in 2usize..6, k in 0usize..2) {
        let n = if kind == CoverKind::P1TwoChart { 1 } else { n };
        let sheaf = if k == 0 { Sheaf::O } else { Sheaf::Omega(k) };
        let cover = CoverSpec::new(kind, Algebra::new(m).unwrap(), n, d).unwrap();
        let complex = build_cech_complex(&cover, sheaf).unwrap();
        let r = cohomology_ranks(&complex).unwrap();
        prop_assert!(r.euler_consistent);
        prop_assert!(r.exact);
        prop_assert!(r.ranks.is_some());
        prop_assert_eq!(r.per_component.len(), m);
        let alt: i64 = r.per_component[0].iter().enumerate().map(|(q, &h)| if q % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
        prop_assert_eq!(alt, r.euler);
    }
}
