//! The commutative Banach algebra `A = C^m` with the sup norm.
//!
//! `C^m` is `C(X)` for the finite space `X = {0, .., m-1}`; its characters are
//! the coordinate evaluations, so every structure built on top of it splits
//! into `m` independent complex pieces. Elements are stored by their
//! character values and all arithmetic is componentwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The algebra `C^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    m: usize,
}

impl Algebra {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyAlgebra);
        }
        Ok(Self { m })
    }

    /// Number of characters (components).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::splat(self.m, Complex64::new(0.0, 0.0))
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::splat(self.m, Complex64::new(1.0, 0.0))
    }

    /// The scalar `c * 1_A`.
    pub fn scalar(&self, c: Complex64) -> AlgebraElement {
        AlgebraElement::splat(self.m, c)
    }

    pub fn element(&self, components: Vec<Complex64>) -> Result<AlgebraElement> {
        self.char_recompose(components)
    }

    /// Character values of `a`.
    pub fn char_decompose(&self, a: &AlgebraElement) -> Result<Vec<Complex64>> {
        self.check(a)?;
        Ok(a.components.clone())
    }

    /// Inverse of [`Algebra::char_decompose`].
    pub fn char_recompose(&self, values: Vec<Complex64>) -> Result<AlgebraElement> {
        if values.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: values.len(),
            });
        }
        Ok(AlgebraElement { components: values })
    }

    pub fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.m() != self.m {
            return Err(Error::MismatchedAlgebra {
                expected: self.m,
                found: a.m(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An element of `C^m`, stored by its character values.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    components: Vec<Complex64>,
}

impl AlgebraElement {
    pub fn new(components: Vec<Complex64>) -> Self {
        Self { components }
    }

    pub fn splat(m: usize, c: Complex64) -> Self {
        Self {
            components: vec![c; m],
        }
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self {
            components: pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        }
    }

    pub fn from_reals(values: &[f64]) -> Self {
        Self {
            components: values.iter().map(|&re| Complex64::new(re, 0.0)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn component(&self, j: usize) -> Complex64 {
        self.components[j]
    }

    pub fn into_components(self) -> Vec<Complex64> {
        self.components
    }

    /// Sup norm: the largest character modulus.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|x| x * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            components: self.components.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn powi(&self, e: i32) -> Self {
        self.map(|x| x.powi(e))
    }

    /// Componentwise reciprocal; fails exactly when some component is zero.
    pub fn inv(&self) -> Result<Self> {
        let indices: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re == 0.0 && c.im == 0.0)
            .map(|(j, _)| j)
            .collect();
        if !indices.is_empty() {
            return Err(Error::NonInvertible { indices });
        }
        Ok(self.map(|x| x.inv()))
    }

    pub fn arith(&self, op: ArithOp, other: &Self) -> Result<Self> {
        if self.m() != other.m() {
            return Err(Error::MismatchedAlgebra {
                expected: self.m(),
                found: other.m(),
            });
        }
        let f = match op {
            ArithOp::Add => |a: Complex64, b: Complex64| a + b,
            ArithOp::Sub => |a: Complex64, b: Complex64| a - b,
            ArithOp::Mul => |a: Complex64, b: Complex64| a * b,
        };
        Ok(Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.m(), other.m(), "mismatched algebra components");
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// Checked arithmetic entry point.
pub fn alg_arith(op: ArithOp, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.arith(op, b)
}

// Operator impls panic on mismatched algebras; use `arith` when inputs are untrusted.
impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.map(|x| -x)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.components.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.components.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        if pairs.is_empty() {
            return Err(serde::de::Error::custom("algebra element needs at least one component"));
        }
        Ok(Self {
            components: pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        })
    }
}
