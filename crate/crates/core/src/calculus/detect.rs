//! Detection of `A`-differentiability.
//!
//! Over `A = C^m` a holomorphic map is `A`-differentiable exactly when its
//! complex Jacobian is block diagonal in the characters: output character `j`
//! must not depend on input character `j' != j`.

use num_complex::Complex64;
use serde::Serialize;

use super::cauchy::{complex_jacobian, HOLOMORPHY_TOL};
use super::HolomorphicMapSpec;
use crate::error::{Error, HolomorphyWitness, Result};
use crate::multilinear::AVector;

pub const DEFAULT_TOL: f64 = 1e-9;

/// An off-diagonal Jacobian entry coupling two different characters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockWitness {
    pub sample: usize,
    /// `(output coordinate, character)`.
    pub output: (usize, usize),
    /// `(input variable, character)`.
    pub input: (usize, usize),
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ADiffReport {
    pub verdict: bool,
    /// Largest off-diagonal entry, relative to `max(1, max |J|)` at its sample.
    pub worst_violation: f64,
    pub witness: Option<BlockWitness>,
    pub samples: usize,
}

/// Checks the character-block structure of the Jacobian at every sample.
pub fn is_a_differentiable(
    f: &HolomorphicMapSpec,
    samples: &[AVector],
    tol: f64,
    nodes: usize,
) -> Result<ADiffReport> {
    let mut report = ADiffReport {
        verdict: true,
        worst_violation: 0.0,
        witness: None,
        samples: samples.len(),
    };
    for (s, z) in samples.iter().enumerate() {
        let (violation, witness) = sample_violation(f, z, s, nodes)?;
        if violation > report.worst_violation {
            report.worst_violation = violation;
            report.witness = witness;
        }
    }
    report.verdict = report.worst_violation <= tol;
    Ok(report)
}

/// Worst off-diagonal coupling at one point; `Err(NonHolomorphic)` if any
/// coordinate fails the circle-mode test.
pub(crate) fn sample_violation(
    f: &HolomorphicMapSpec,
    z: &AVector,
    sample: usize,
    nodes: usize,
) -> Result<(f64, Option<BlockWitness>)> {
    let jac = complex_jacobian(f, z, nodes)?;
    let m = jac.m;
    let (rows, cols) = jac.matrix.shape();
    for r in 0..rows {
        for c in 0..cols {
            if jac.defects[(r, c)] > HOLOMORPHY_TOL {
                return Err(Error::NonHolomorphic(HolomorphyWitness {
                    sample,
                    input: (c / m, c % m),
                    output: (r / m, r % m),
                    defect: jac.defects[(r, c)],
                }));
            }
        }
    }
    let scale = jac.matrix.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut worst = 0.0;
    let mut witness = None;
    for r in 0..rows {
        for c in 0..cols {
            if r % m == c % m {
                continue;
            }
            let v = jac.matrix[(r, c)];
            let rel = v.norm() / scale;
            if rel > worst {
                worst = rel;
                witness = Some(BlockWitness {
                    sample,
                    output: (r / m, r % m),
                    input: (c / m, c % m),
                    value: v,
                });
            }
        }
    }
    Ok((worst, witness))
}
