//! Pointwise locality of maps whose derivative is `C(X)`-linear.
//!
//! For finite `X` and `F : C(X; U) -> C(X)`, if `F'(u)` is `C(X)`-linear along
//! the segment from `u0` to `u1` then
//! `F(u1) - F(u0) = ∫_0^1 F'((1-t) u0 + t u1)(u1 - u0) dt`
//! vanishes at every point `x` where `u0(x) = u1(x)`. The check below probes
//! the linearity hypothesis at Gauss-Legendre nodes of that integral and then
//! compares `F(u0)(x)` with `F(u1)(x)`.

use num_complex::Complex64;
use serde::Serialize;

use super::cauchy::complex_jacobian;
use super::detect::{sample_violation, BlockWitness};
use super::HolomorphicMapSpec;
use crate::error::{Error, Result};
use crate::multilinear::AVector;

// 8-point Gauss-Legendre rule on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalityOutcome {
    /// Hypothesis held and `|F(u0)(x) - F(u1)(x)| <= tol`.
    Holds,
    /// Hypothesis held but the values differ.
    Violated,
    /// `F'` coupled characters somewhere on the segment.
    HypothesisFailed { t: f64, witness: BlockWitness },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalityReport {
    pub outcome: LocalityOutcome,
    pub component: usize,
    /// `|F(u0)(x) - F(u1)(x)|`.
    pub direct_difference: f64,
    /// `|∫ F'(u_t)(u1 - u0) dt|` at `x` by quadrature, using the full complex Jacobian.
    pub integral_difference: f64,
    pub segment_samples: usize,
}

pub fn check_pointwise_locality(
    f: &HolomorphicMapSpec,
    u0: &AVector,
    u1: &AVector,
    x: usize,
    tol: f64,
    nodes: usize,
) -> Result<LocalityReport> {
    let m = f.algebra().m();
    if f.k() != 1 {
        return Err(Error::Precondition(format!("locality maps have one output, got {}", f.k())));
    }
    if x >= m {
        return Err(Error::Precondition(format!("component {x} out of range for m = {m}")));
    }
    for u in [u0, u1] {
        if u.rank() != f.n() || u.m() != m {
            return Err(Error::RankMismatch {
                context: "locality input",
                expected: f.n(),
                found: u.rank(),
            });
        }
    }
    if (0..f.n()).any(|l| u0.coord(l, x) != u1.coord(l, x)) {
        return Err(Error::Precondition(format!("u0 and u1 differ at component {x}")));
    }

    let delta = u1 - u0;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut failure = None;
    for (i, (node, weight)) in GL_NODES.iter().zip(GL_WEIGHTS).enumerate() {
        let t = 0.5 * (node + 1.0);
        let point = &u0.scale_complex(Complex64::new(1.0 - t, 0.0)) + &u1.scale_complex(Complex64::new(t, 0.0));
        if !f.domain().contains(&point) {
            return Err(Error::DomainViolation(format!("segment point t = {t} leaves the domain")));
        }
        let (violation, witness) = sample_violation(f, &point, i, nodes)?;
        if failure.is_none() && violation > tol {
            failure = witness.map(|w| (t, w));
        }
        let jac = complex_jacobian(f, &point, nodes)?;
        let row = x; // output coordinate 0, character x
        let mut dir = Complex64::new(0.0, 0.0);
        for l in 0..f.n() {
            for jp in 0..m {
                dir += jac.matrix[(row, l * m + jp)] * delta.coord(l, jp);
            }
        }
        integral += dir * (0.5 * weight);
    }

    let direct = (f.eval(u0)?.coord(0, x) - f.eval(u1)?.coord(0, x)).norm();
    let outcome = match failure {
        Some((t, witness)) => LocalityOutcome::HypothesisFailed { t, witness },
        None if direct <= tol => LocalityOutcome::Holds,
        None => LocalityOutcome::Violated,
    };
    Ok(LocalityReport {
        outcome,
        component: x,
        direct_difference: direct,
        integral_difference: integral.norm(),
        segment_samples: GL_NODES.len(),
    })
}
