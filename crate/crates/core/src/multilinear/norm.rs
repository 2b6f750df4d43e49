//! Norms of continuous multilinear maps `A^{n_1} x .. x A^{n_k} -> A^{out}`.
//!
//! With the max norm on every factor, the norm splits into one complex norm per
//! character, and each of those is attained on the torus of unimodular
//! arguments. Exact values are computed only for `k = 1`; for higher degree a
//! bracket `[sampled_lower, upper]` is returned.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{wedge_basis, ALinearMap, AntisymForm, AVector};
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};

/// Phases per torus coordinate in the sampled lower bound.
pub const TORUS_PHASES: usize = 8;
/// Maximum number of argument tuples visited per character.
pub const TORUS_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    ExactK1,
    Upper,
    SampledLower,
}

/// A multilinear map given by its dense coefficient tensor over `A`,
/// indexed `[out][i_1]..[i_k]` in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearMap {
    m: usize,
    arg_ranks: Vec<usize>,
    out_rank: usize,
    coeffs: Vec<AlgebraElement>,
}

impl MultilinearMap {
    pub fn new(algebra: Algebra, arg_ranks: Vec<usize>, out_rank: usize, coeffs: Vec<AlgebraElement>) -> Result<Self> {
        let size = out_rank * arg_ranks.iter().product::<usize>();
        if coeffs.len() != size {
            return Err(Error::LengthMismatch {
                expected: size,
                found: coeffs.len(),
            });
        }
        for c in &coeffs {
            algebra.check(c)?;
        }
        Ok(Self {
            m: algebra.m(),
            arg_ranks,
            out_rank,
            coeffs,
        })
    }

    pub fn from_linear(map: &ALinearMap) -> Self {
        Self {
            m: map.m(),
            arg_ranks: vec![map.cols()],
            out_rank: map.rows(),
            coeffs: map.entries().to_vec(),
        }
    }

    /// Full antisymmetric tensor of a form.
    pub fn from_form(form: &AntisymForm) -> Self {
        let (n, k) = (form.n(), form.degree());
        let alg = form.algebra();
        let size = n.pow(k as u32);
        let mut coeffs = vec![alg.zero(); size];
        for (idx, c) in wedge_basis(n, k).iter().zip(form.coeffs()) {
            for term in super::antisymmetrize_fk(idx, n).expect("wedge basis indices are valid").terms {
                let flat = term.1.iter().fold(0, |acc, &i| acc * n + i);
                coeffs[flat] = c.scale(Complex64::new(term.0 as f64, 0.0));
            }
        }
        Self {
            m: alg.m(),
            arg_ranks: vec![n; k],
            out_rank: 1,
            coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.arg_ranks.len()
    }

    pub fn eval(&self, args: &[AVector]) -> Result<AVector> {
        if args.len() != self.degree() {
            return Err(Error::RankMismatch {
                context: "multilinear argument count",
                expected: self.degree(),
                found: args.len(),
            });
        }
        for (x, &n) in args.iter().zip(&self.arg_ranks) {
            if x.rank() != n {
                return Err(Error::RankMismatch {
                    context: "multilinear argument rank",
                    expected: n,
                    found: x.rank(),
                });
            }
        }
        let per_component: Vec<Vec<Complex64>> = (0..self.m)
            .map(|j| {
                let xs: Vec<Vec<Complex64>> = args.iter().map(|x| x.component(j)).collect();
                self.eval_component(j, &xs)
            })
            .collect();
        AVector::from_components(&per_component)
    }

    fn component_tensor(&self, j: usize) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.component(j)).collect()
    }

    fn eval_component(&self, j: usize, xs: &[Vec<Complex64>]) -> Vec<Complex64> {
        contract(&self.component_tensor(j), self.out_rank, &self.arg_ranks, xs)
    }

    /// Sum of coefficient moduli per output coordinate, maximised over outputs and characters.
    pub fn upper_bound(&self) -> f64 {
        let block = self.arg_ranks.iter().product::<usize>();
        let mut best: f64 = 0.0;
        for j in 0..self.m {
            for o in 0..self.out_rank {
                let s: f64 = self.coeffs[o * block..(o + 1) * block]
                    .iter()
                    .map(|c| c.component(j).norm())
                    .sum();
                best = best.max(s);
            }
        }
        best
    }

    /// Max row absolute sum per character; only defined for `k = 1`.
    pub fn exact_k1(&self) -> Result<f64> {
        if self.degree() != 1 {
            return Err(Error::UnsupportedMode(format!(
                "exact_k1 requires degree 1, map has degree {}",
                self.degree()
            )));
        }
        Ok(self.upper_bound())
    }

    /// Maximum over a deterministic torus grid of unimodular arguments.
    ///
    /// Each argument's first entry is pinned to phase 0; the value's modulus
    /// does not depend on it.
    pub fn sampled_lower(&self) -> f64 {
        if self.arg_ranks.contains(&0) || self.out_rank == 0 {
            return 0.0;
        }
        let roots: Vec<Complex64> = (0..TORUS_PHASES)
            .map(|t| Complex64::from_polar(1.0, 2.0 * PI * t as f64 / TORUS_PHASES as f64))
            .collect();
        let free: usize = self.arg_ranks.iter().map(|n| n - 1).sum();
        let total = (TORUS_PHASES as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
        let count = total.min(TORUS_CAP as u128) as usize;

        let mut best: f64 = 0.0;
        for j in 0..self.m {
            let tensor = self.component_tensor(j);
            let mut digits = vec![0usize; free];
            for step in 0..count {
                if step > 0 {
                    // mixed-radix increment, last digit fastest
                    for d in digits.iter_mut().rev() {
                        *d += 1;
                        if *d < TORUS_PHASES {
                            break;
                        }
                        *d = 0;
                    }
                }
                let mut it = digits.iter();
                let xs: Vec<Vec<Complex64>> = self
                    .arg_ranks
                    .iter()
                    .map(|&n| {
                        std::iter::once(roots[0])
                            .chain((1..n).map(|_| roots[*it.next().unwrap()]))
                            .collect()
                    })
                    .collect();
                let value = contract(&tensor, self.out_rank, &self.arg_ranks, &xs);
                best = value.iter().map(|v| v.norm()).fold(best, f64::max);
            }
        }
        best
    }
}

/// Contracts a dense `[out][i_1]..[i_k]` tensor with argument vectors, last slot first.
fn contract(tensor: &[Complex64], out_rank: usize, ranks: &[usize], xs: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut current = tensor.to_vec();
    for (x, &n) in xs.iter().zip(ranks).rev() {
        current = current
            .chunks(n)
            .map(|chunk| chunk.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
    }
    debug_assert_eq!(current.len(), out_rank);
    current
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormBracket {
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<f64>,
}

pub fn multilinear_norm(map: &MultilinearMap, mode: NormMode) -> Result<f64> {
    match mode {
        NormMode::ExactK1 => map.exact_k1(),
        NormMode::Upper => Ok(map.upper_bound()),
        NormMode::SampledLower => Ok(map.sampled_lower()),
    }
}

pub fn norm_bracket(map: &MultilinearMap) -> NormBracket {
    NormBracket {
        lower: map.sampled_lower(),
        upper: map.upper_bound(),
        exact: map.exact_k1().ok(),
    }
}
