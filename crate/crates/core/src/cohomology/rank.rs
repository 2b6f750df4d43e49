//! Ranks of complex matrices: exact for integer entries, SVD otherwise.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Relative singular-value threshold for the floating-point rank.
pub const SVD_RANK_TOL: f64 = 1e-9;
/// Singular values within this factor of the threshold make the rank unstable.
const INSTABILITY_FACTOR: f64 = 10.0;

fn is_integer(z: &Complex64) -> bool {
    z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9.0e15
}

pub fn all_integer(mat: &DMatrix<Complex64>) -> bool {
    mat.iter().all(is_integer)
}

/// Exact rank by sparse Gaussian elimination over the rationals.
pub fn exact_rank(mat: &DMatrix<Complex64>) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigRational>> = (0..mat.nrows())
        .map(|r| {
            (0..mat.ncols())
                .filter(|&c| mat[(r, c)].re != 0.0)
                .map(|c| (c, BigRational::from_integer(BigInt::from(mat[(r, c)].re as i64))))
                .collect()
        })
        .filter(|row: &BTreeMap<_, _>| !row.is_empty())
        .collect();
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot_row = rows.swap_remove(pos);
        let (&col, pivot) = pivot_row.iter().next().expect("nonempty row");
        rank += 1;
        for row in rows.iter_mut() {
            let Some(factor) = row.get(&col).map(|v| v / pivot) else {
                continue;
            };
            for (&c, v) in &pivot_row {
                let updated = row.get(&c).cloned().unwrap_or_else(BigRational::zero) - &factor * v;
                if updated.is_zero() {
                    row.remove(&c);
                } else {
                    row.insert(c, updated);
                }
            }
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}

/// Numerical rank with threshold `SVD_RANK_TOL * sigma_max`.
pub fn svd_rank(mat: &DMatrix<Complex64>, component: usize) -> Result<usize> {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return Ok(0);
    }
    let sv = mat.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    let threshold = SVD_RANK_TOL * max;
    if let Some(&s) = sv
        .iter()
        .find(|&&s| s > threshold / INSTABILITY_FACTOR && s < threshold * INSTABILITY_FACTOR)
    {
        return Err(Error::RankInstability {
            component,
            singular_value: s,
        });
    }
    Ok(sv.iter().filter(|&&s| s > threshold).count())
}

/// Rank of one component matrix, and whether it was computed exactly.
pub fn component_rank(mat: &DMatrix<Complex64>, component: usize) -> Result<(usize, bool)> {
    if all_integer(mat) {
        Ok((exact_rank(mat), true))
    } else {
        svd_rank(mat, component).map(|r| (r, false))
    }
}
