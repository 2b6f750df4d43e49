use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AVector;
use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};

/// An `A`-linear map `A^cols -> A^rows`, stored as a row-major matrix over `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ALinearMap {
    m: usize,
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraElement>,
}

impl ALinearMap {
    pub fn from_rows(algebra: Algebra, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::RankMismatch {
                    context: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            for e in row {
                algebra.check(&e)?;
                entries.push(e);
            }
        }
        Ok(Self {
            m: algebra.m(),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn zeros(algebra: Algebra, rows: usize, cols: usize) -> Self {
        Self {
            m: algebra.m(),
            rows,
            cols,
            entries: vec![algebra.zero(); rows * cols],
        }
    }

    pub fn identity(algebra: Algebra, n: usize) -> Self {
        let mut id = Self::zeros(algebra, n, n);
        for i in 0..n {
            id.entries[i * n + i] = algebra.one();
        }
        id
    }

    pub fn diag(algebra: Algebra, diagonal: Vec<AlgebraElement>) -> Result<Self> {
        let n = diagonal.len();
        let mut d = Self::zeros(algebra, n, n);
        for (i, a) in diagonal.into_iter().enumerate() {
            algebra.check(&a)?;
            d.entries[i * n + i] = a;
        }
        Ok(d)
    }

    /// Reassembles a map from one complex matrix per character.
    pub fn from_component_matrices(mats: &[DMatrix<Complex64>]) -> Result<Self> {
        let algebra = Algebra::new(mats.len())?;
        let (rows, cols) = mats[0].shape();
        if let Some(bad) = mats.iter().find(|mat| mat.shape() != (rows, cols)) {
            return Err(Error::RankMismatch {
                context: "component matrix shape",
                expected: rows * cols,
                found: bad.nrows() * bad.ncols(),
            });
        }
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| AlgebraElement::new(mats.iter().map(|mat| mat[(r, c)]).collect()))
            .collect();
        Ok(Self {
            m: algebra.m(),
            rows,
            cols,
            entries,
        })
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("map algebra is nonempty")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgebraElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: AlgebraElement) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[AlgebraElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> AVector {
        let entries = (0..self.rows).map(|r| self.get(r, c).clone()).collect();
        AVector::new(self.algebra(), entries).expect("entries share the map algebra")
    }

    /// Builds a map from its columns.
    pub fn from_columns(algebra: Algebra, rows: usize, columns: &[AVector]) -> Result<Self> {
        let mut map = Self::zeros(algebra, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.rank() != rows {
                return Err(Error::RankMismatch {
                    context: "column length",
                    expected: rows,
                    found: col.rank(),
                });
            }
            for r in 0..rows {
                map.set(r, c, col.entry(r).clone());
            }
        }
        Ok(map)
    }

    /// The complex matrix seen by character `j`.
    pub fn component_matrix(&self, j: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).component(j))
    }

    pub fn apply(&self, x: &AVector) -> Result<AVector> {
        if x.rank() != self.cols {
            return Err(Error::RankMismatch {
                context: "apply_linear",
                expected: self.cols,
                found: x.rank(),
            });
        }
        if x.m() != self.m {
            return Err(Error::MismatchedAlgebra {
                expected: self.m,
                found: x.m(),
            });
        }
        let alg = self.algebra();
        let out = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x.entries())
                    .fold(alg.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect();
        AVector::new(alg, out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ALinearMap) -> Result<ALinearMap> {
        if self.cols != other.rows {
            return Err(Error::RankMismatch {
                context: "compose_linear",
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.m != other.m {
            return Err(Error::MismatchedAlgebra {
                expected: self.m,
                found: other.m,
            });
        }
        let alg = self.algebra();
        let mut out = Self::zeros(alg, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).fold(alg.zero(), |acc, i| &acc + &(self.get(r, i) * other.get(i, c)));
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    /// Componentwise inverse; reports every character whose matrix is singular.
    pub fn inverse(&self) -> Result<ALinearMap> {
        if self.rows != self.cols {
            return Err(Error::RankMismatch {
                context: "inverse of a non-square map",
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut singular = Vec::new();
        let mut mats = Vec::with_capacity(self.m);
        for j in 0..self.m {
            match self.component_matrix(j).try_inverse() {
                Some(inv) => mats.push(inv),
                None => {
                    singular.push(j);
                    mats.push(DMatrix::zeros(self.rows, self.cols));
                }
            }
        }
        if !singular.is_empty() {
            return Err(Error::SingularMap { components: singular });
        }
        if self.rows == 0 {
            return Ok(self.clone());
        }
        Self::from_component_matrices(&mats)
    }

    /// Largest entrywise difference, for tolerance checks.
    pub fn distance(&self, other: &ALinearMap) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn apply_linear(f: &ALinearMap, x: &AVector) -> Result<AVector> {
    f.apply(x)
}

pub fn compose_linear(f: &ALinearMap, g: &ALinearMap) -> Result<ALinearMap> {
    f.compose(g)
}

#[derive(Serialize, Deserialize)]
struct LinearMapFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<AlgebraElement>>,
}

impl Serialize for ALinearMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LinearMapFile {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|r| self.row(r).to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ALinearMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let file = LinearMapFile::deserialize(deserializer)?;
        let m = file
            .entries
            .iter()
            .flatten()
            .next()
            .map(|e| e.m())
            .ok_or_else(|| D::Error::custom("linear map needs at least one entry"))?;
        if file.entries.len() != file.rows {
            return Err(D::Error::custom("row count does not match \"rows\""));
        }
        let algebra = Algebra::new(m).map_err(D::Error::custom)?;
        let map = ALinearMap::from_rows(algebra, file.entries).map_err(D::Error::custom)?;
        if map.cols != file.cols {
            return Err(D::Error::custom("column count does not match \"cols\""));
        }
        Ok(map)
    }
}
