//! Computable complex geometry over the commutative Banach algebra `A = C^m`.
//!
//! The crate covers arithmetic in `A`, free `A`-modules and antisymmetric
//! `(A, k)`-forms, Cauchy-integral differentiation and `A`-differentiability
//! detection, atlas and bundle-transition verification, and truncated Čech
//! cohomology of the structure sheaf and of holomorphic `k`-forms.

pub mod algebra;
pub mod calculus;
pub mod cohomology;
pub mod domain;
pub mod error;
pub mod manifold;
pub mod multilinear;

pub use algebra::{alg_arith, Algebra, AlgebraElement, ArithOp};
pub use domain::{DomainDescriptor, Region};
pub use error::{Error, Result};
pub use multilinear::{ALinearMap, AVector, AntisymForm};

pub use num_complex::Complex64;
