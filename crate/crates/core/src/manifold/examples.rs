//! Concrete atlases: the four-chart manifold `N` over `C^2` and the projective line over `A`.

use num_complex::Complex64;

use super::{Atlas, Chart, Transition, TransitionMap};
use crate::algebra::{Algebra, AlgebraElement};
use crate::domain::{DomainDescriptor, Region};
use crate::error::{Error, Result};
use crate::multilinear::AVector;

fn point(a: Complex64, b: Complex64) -> AVector {
    AVector::from_entries(vec![AlgebraElement::new(vec![a, b])]).expect("one variable")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The four-chart manifold over `A = C^2`, `n = 1`, for `0 < c1 < c2 < ∞`.
///
/// Charts `W1 = C × {Im > 0}`, `W2 = C × {Im < 0}`, `W3 = W4 = D × C`, glued by
/// translations: `W3 -> W1` is `z + (2, -c1 i)` on `D × {Im > c1}`,
/// `W4 -> W1` is `z + (-2, -c2 i)` on `D × {Im > c2}`, and the lower half
/// mirrors these with `+c1 i`, `+c2 i`. `W1 ∩ W2` and `W3 ∩ W4` are empty.
pub fn build_manifold_n(c1: f64, c2: f64) -> Result<Atlas> {
    if !(c1.is_finite() && c2.is_finite() && 0.0 < c1 && c1 < c2) {
        return Err(Error::BadParameters(format!("need 0 < c1 < c2 < inf, got c1 = {c1}, c2 = {c2}")));
    }
    let alg = Algebra::new(2)?;
    let dom = |a: Region, b: Region| DomainDescriptor::new(vec![vec![a, b]]);
    let disk = |x: f64| Region::disk(c(x, 0.0), 1.0);
    let charts = vec![
        Chart {
            name: "W1".into(),
            domain: dom(Region::FullPlane, Region::HalfPlaneImGt { c: 0.0 })?,
            witness: point(c(0.0, 0.0), c(0.0, 1.0)),
        },
        Chart {
            name: "W2".into(),
            domain: dom(Region::FullPlane, Region::HalfPlaneImLt { c: 0.0 })?,
            witness: point(c(0.0, 0.0), c(0.0, -1.0)),
        },
        Chart {
            name: "W3".into(),
            domain: dom(disk(0.0), Region::FullPlane)?,
            witness: point(c(0.0, 0.0), c(0.0, 0.0)),
        },
        Chart {
            name: "W4".into(),
            domain: dom(disk(0.0), Region::FullPlane)?,
            witness: point(c(0.0, 0.0), c(0.0, 0.0)),
        },
    ];

    let mut transitions = Vec::new();
    // (upper chart, disk chart, shift of z1 into the upper chart, height constant, upper?)
    for (upper, lower, shift, height, above) in [
        (0, 2, 2.0, c1, true),
        (0, 3, -2.0, c2, true),
        (1, 2, 2.0, c1, false),
        (1, 3, -2.0, c2, false),
    ] {
        let sign = if above { 1.0 } else { -1.0 };
        let names = [&charts[lower].name, &charts[upper].name];
        let forward = format!("{}->{}", names[0], names[1]);
        let backward = format!("{}->{}", names[1], names[0]);
        let half = |c: f64| {
            if above {
                Region::HalfPlaneImGt { c }
            } else {
                Region::HalfPlaneImLt { c }
            }
        };
        transitions.push(Transition {
            name: forward.clone(),
            from: lower,
            to: upper,
            overlap: dom(disk(0.0), half(sign * height))?,
            map: TransitionMap::translation(point(c(shift, 0.0), c(0.0, -sign * height))),
            inverse: backward.clone(),
        });
        transitions.push(Transition {
            name: backward,
            from: upper,
            to: lower,
            overlap: dom(disk(shift), half(0.0))?,
            map: TransitionMap::translation(point(c(-shift, 0.0), c(0.0, sign * height))),
            inverse: forward,
        });
    }
    Atlas::new(alg, 1, charts, transitions, Vec::new())
}

/// Two full-plane charts over `A` glued by `z |-> 1/z` on the invertible elements.
pub fn build_projective_line(m: usize) -> Result<Atlas> {
    let alg = Algebra::new(m)?;
    let full = DomainDescriptor::full(alg, 1);
    let punctured = DomainDescriptor::uniform(alg, 1, Region::PuncturedPlane);
    let charts = ["U0", "U1"]
        .into_iter()
        .map(|name| Chart {
            name: name.into(),
            domain: full.clone(),
            witness: AVector::zeros(alg, 1),
        })
        .collect();
    let transitions = [(0, 1), (1, 0)]
        .into_iter()
        .map(|(from, to)| Transition {
            name: format!("U{from}->U{to}"),
            from,
            to,
            overlap: punctured.clone(),
            map: TransitionMap::MonomialInversion { variables: vec![0] },
            inverse: format!("U{to}->U{from}"),
        })
        .collect();
    Atlas::new(alg, 1, charts, transitions, Vec::new())
}
