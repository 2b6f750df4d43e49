//! Deterministic inputs for the benchmarks.

use aholo::calculus::{PolyMap, PolyTerm};
use aholo::multilinear::{wedge_basis, ALinearMap, AVector, AntisymForm};
use aholo::{Algebra, AlgebraElement};
use num_complex::Complex64;

/// Element with components spread around the unit circle, scaled by `r`.
pub fn element(m: usize, seed: usize, r: f64) -> AlgebraElement {
    AlgebraElement::new(
        (0..m)
            .map(|j| Complex64::from_polar(r, 0.7 * (seed * m + j) as f64 + 0.3))
            .collect(),
    )
}

pub fn vector(alg: Algebra, n: usize, seed: usize, r: f64) -> AVector {
    AVector::from_entries((0..n).map(|l| element(alg.m(), seed * n + l, r)).collect()).unwrap()
}

/// Every monomial of total degree at most `degree` in `n` variables, one output.
pub fn dense_poly(alg: Algebra, n: usize, degree: u32) -> PolyMap {
    let mut terms = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        if exps.iter().sum::<u32>() <= degree {
            terms.push(PolyTerm {
                output: 0,
                exponents: exps.clone(),
                coeff: element(alg.m(), terms.len(), 1.0),
            });
        }
        let Some(l) = exps.iter().position(|&e| e < degree) else { break };
        exps[l] += 1;
        exps[..l].iter_mut().for_each(|e| *e = 0);
    }
    PolyMap::new(alg, n, 1, terms).unwrap()
}

/// `I + 0.1 B` for a fixed dense `B`; well conditioned.
pub fn near_identity(alg: Algebra, n: usize) -> ALinearMap {
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let e = element(alg.m(), r * n + c, 0.1);
                    if r == c {
                        &e + &alg.one()
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    ALinearMap::from_rows(alg, rows).unwrap()
}

pub fn dense_form(alg: Algebra, n: usize, k: usize) -> AntisymForm {
    let coeffs = (0..wedge_basis(n, k).len()).map(|i| element(alg.m(), i, 1.0)).collect();
    AntisymForm::from_coeffs(alg, n, k, coeffs).unwrap()
}
