use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};

/// An element of the free module `A^n` with the max norm.
#[derive(Debug, Clone, PartialEq)]
pub struct AVector {
    m: usize,
    entries: Vec<AlgebraElement>,
}

impl AVector {
    pub fn new(algebra: Algebra, entries: Vec<AlgebraElement>) -> Result<Self> {
        for e in &entries {
            algebra.check(e)?;
        }
        Ok(Self {
            m: algebra.m(),
            entries,
        })
    }

    /// Builds a vector from non-empty entries, inferring the algebra.
    pub fn from_entries(entries: Vec<AlgebraElement>) -> Result<Self> {
        let m = entries
            .first()
            .map(|e| e.m())
            .ok_or_else(|| Error::Precondition("cannot infer algebra from an empty vector".into()))?;
        Self::new(Algebra::new(m)?, entries)
    }

    pub fn zeros(algebra: Algebra, n: usize) -> Self {
        Self {
            m: algebra.m(),
            entries: vec![algebra.zero(); n],
        }
    }

    /// `e_l * 1_A`.
    pub fn basis(algebra: Algebra, n: usize, l: usize) -> Self {
        let mut v = Self::zeros(algebra, n);
        v.entries[l] = algebra.one();
        v
    }

    /// Assembles a vector from its per-character complex vectors, `per_component[j][l]`.
    pub fn from_components(per_component: &[Vec<Complex64>]) -> Result<Self> {
        let m = per_component.len();
        let algebra = Algebra::new(m)?;
        let n = per_component[0].len();
        if let Some(bad) = per_component.iter().find(|v| v.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let entries = (0..n)
            .map(|l| AlgebraElement::new(per_component.iter().map(|v| v[l]).collect()))
            .collect();
        Self::new(algebra, entries)
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("vector algebra is nonempty")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn entry(&self, l: usize) -> &AlgebraElement {
        &self.entries[l]
    }

    /// Complex coordinate `(variable l, character j)`.
    pub fn coord(&self, l: usize, j: usize) -> Complex64 {
        self.entries[l].component(j)
    }

    pub fn set_coord(&mut self, l: usize, j: usize, value: Complex64) {
        let mut comps = self.entries[l].components().to_vec();
        comps[j] = value;
        self.entries[l] = AlgebraElement::new(comps);
    }

    /// The complex vector seen by character `j`.
    pub fn component(&self, j: usize) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.component(j)).collect()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Module action `a * x`.
    pub fn scale(&self, a: &AlgebraElement) -> Self {
        Self {
            m: self.m,
            entries: self.entries.iter().map(|e| a * e).collect(),
        }
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self {
            m: self.m,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn map_coords(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            m: self.m,
            entries: self.entries.iter().map(|e| e.map(&f)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self + other)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::MismatchedAlgebra {
                expected: self.m,
                found: other.m,
            });
        }
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                context: "vector addition",
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    /// Max norm of the difference, for tolerance checks.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl<'a> Add<&'a AVector> for &'a AVector {
    type Output = AVector;
    fn add(self, rhs: &'a AVector) -> AVector {
        assert_eq!(self.rank(), rhs.rank(), "vector rank mismatch");
        AVector {
            m: self.m,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a AVector> for &'a AVector {
    type Output = AVector;
    fn sub(self, rhs: &'a AVector) -> AVector {
        assert_eq!(self.rank(), rhs.rank(), "vector rank mismatch");
        AVector {
            m: self.m,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Serialize for AVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<AlgebraElement>::deserialize(deserializer)?;
        AVector::from_entries(entries).map_err(serde::de::Error::custom)
    }
}
