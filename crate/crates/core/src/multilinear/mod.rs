//! Free Banach `A`-modules `A^n`, `A`-linear maps, antisymmetric forms and
//! their pullbacks, and multilinear norms.

pub mod det;
mod form;
mod linear;
mod norm;
mod vector;

pub use form::{
    antisymmetrize_fk, eval_form, permutation_sign, pullback, pullback_invert, AntisymForm, TensorExpansion,
};
pub use linear::{apply_linear, compose_linear, ALinearMap};
pub use norm::{multilinear_norm, norm_bracket, MultilinearMap, NormBracket, NormMode, TORUS_CAP, TORUS_PHASES};
pub use vector::AVector;

use itertools::Itertools;

/// Rank of the free module of antisymmetric `k`-forms on `A^n`: `binomial(n, k)`.
pub fn wedge_rank(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-tuples of `0..n`, lexicographic.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}
