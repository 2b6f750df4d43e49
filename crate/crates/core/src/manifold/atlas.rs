//! Charts, transition maps and atlases over `A = C^m`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::calculus::{CoordTerm, CoordinatePolyMap, HolomorphicMapSpec, PolyMap, PolyTerm};
use crate::domain::DomainDescriptor;
use crate::error::{Error, Result};
use crate::multilinear::{ALinearMap, AVector};

/// A coordinate neighbourhood: an open set of `A^n` with a stored member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub name: String,
    pub domain: DomainDescriptor,
    pub witness: AVector,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TransitionMap {
    /// `z |-> matrix z + translation`.
    Affine { matrix: ALinearMap, translation: AVector },
    Polynomial(PolyMap),
    /// Per complex coordinate; allows non-holomorphic maps so they can be rejected.
    Coordinate(CoordinatePolyMap),
    /// `z_l |-> 1 / z_l` for the listed variables, identity elsewhere.
    MonomialInversion { variables: Vec<usize> },
}

impl TransitionMap {
    pub fn translation(translation: AVector) -> Self {
        TransitionMap::Affine {
            matrix: ALinearMap::identity(translation.algebra(), translation.rank()),
            translation,
        }
    }

    pub fn eval(&self, z: &AVector) -> Result<AVector> {
        match self {
            TransitionMap::Affine { matrix, translation } => matrix.apply(z)?.checked_add(translation),
            TransitionMap::Polynomial(p) => p.eval(z),
            TransitionMap::Coordinate(p) => p.eval(z),
            TransitionMap::MonomialInversion { variables } => {
                let mut entries = z.entries().to_vec();
                for &l in variables {
                    entries[l] = entries[l].inv()?;
                }
                AVector::new(z.algebra(), entries)
            }
        }
    }

    /// Derivative in closed form where one exists (`None` for polynomial maps).
    pub fn closed_form_derivative(&self, z: &AVector) -> Result<Option<ALinearMap>> {
        match self {
            TransitionMap::Affine { matrix, .. } => Ok(Some(matrix.clone())),
            TransitionMap::MonomialInversion { variables } => {
                let alg = z.algebra();
                let mut diag = vec![alg.one(); z.rank()];
                for &l in variables {
                    let inv = z.entry(l).inv().map_err(|_| Error::SingularMap {
                        components: singular_components(z.entry(l)),
                    })?;
                    diag[l] = -(&inv * &inv);
                }
                ALinearMap::diag(alg, diag).map(Some)
            }
            TransitionMap::Polynomial(_) | TransitionMap::Coordinate(_) => Ok(None),
        }
    }

    /// The map as a [`HolomorphicMapSpec`] on `domain`.
    pub fn to_spec(&self, algebra: Algebra, n: usize, domain: &DomainDescriptor) -> Result<HolomorphicMapSpec> {
        let spec = match self {
            TransitionMap::Affine { matrix, translation } => HolomorphicMapSpec::polynomial(affine_poly(matrix, translation)?),
            TransitionMap::Polynomial(p) => HolomorphicMapSpec::polynomial(p.clone()),
            TransitionMap::Coordinate(p) => HolomorphicMapSpec::coordinate(p.clone()),
            TransitionMap::MonomialInversion { .. } => {
                let map = self.clone();
                HolomorphicMapSpec::blackbox(algebra, n, n, domain.clone(), move |z| {
                    map.eval(z).unwrap_or_else(|_| {
                        z.map_coords(|_| num_complex::Complex64::new(f64::NAN, f64::NAN))
                    })
                })
            }
        };
        spec.with_domain(domain.clone())
    }

    fn kind_name(&self) -> &'static str {
        match self {
            TransitionMap::Affine { .. } => "affine",
            TransitionMap::Polynomial(_) => "polynomial",
            TransitionMap::Coordinate(_) => "coordinate_polynomial",
            TransitionMap::MonomialInversion { .. } => "monomial_inversion",
        }
    }
}

fn singular_components(a: &AlgebraElement) -> Vec<usize> {
    a.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() == 0.0)
        .map(|(j, _)| j)
        .collect()
}

fn affine_poly(matrix: &ALinearMap, translation: &AVector) -> Result<PolyMap> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut terms = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if matrix.get(r, c).is_zero() {
                continue;
            }
            let mut exponents = vec![0; cols];
            exponents[c] = 1;
            terms.push(PolyTerm {
                output: r,
                exponents,
                coeff: matrix.get(r, c).clone(),
            });
        }
        if !translation.entry(r).is_zero() {
            terms.push(PolyTerm {
                output: r,
                exponents: vec![0; cols],
                coeff: translation.entry(r).clone(),
            });
        }
    }
    PolyMap::new(matrix.algebra(), cols, rows, terms)
}

/// `phi_to ∘ phi_from^{-1}` on `overlap`, given in `from`-chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub overlap: DomainDescriptor,
    pub map: TransitionMap,
    pub inverse: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atlas {
    m: usize,
    n: usize,
    charts: Vec<Chart>,
    transitions: Vec<Transition>,
    triples: Vec<[usize; 3]>,
}

impl Atlas {
    /// Checks the structure: shapes, witnesses, inverse pairing and triple coverage.
    pub fn new(
        algebra: Algebra,
        n: usize,
        charts: Vec<Chart>,
        transitions: Vec<Transition>,
        triples: Vec<[usize; 3]>,
    ) -> Result<Self> {
        let m = algebra.m();
        let structural = |msg: String| Err(Error::StructuralError(msg));
        if charts.is_empty() {
            return structural("atlas has no charts".into());
        }
        for chart in &charts {
            if chart.domain.n() != n || chart.domain.m() != m {
                return structural(format!("chart {:?} domain has the wrong shape", chart.name));
            }
            if chart.witness.rank() != n || chart.witness.m() != m || !chart.domain.contains(&chart.witness) {
                return structural(format!("chart {:?} witness is not in its domain", chart.name));
            }
        }
        let mut by_name = HashMap::new();
        for (i, t) in transitions.iter().enumerate() {
            if by_name.insert(t.name.as_str(), i).is_some() {
                return structural(format!("duplicate transition name {:?}", t.name));
            }
            if t.from >= charts.len() || t.to >= charts.len() || t.from == t.to {
                return structural(format!("transition {:?} has bad chart indices", t.name));
            }
            if t.overlap.n() != n || t.overlap.m() != m {
                return structural(format!("transition {:?} overlap has the wrong shape", t.name));
            }
            check_map_shape(&t.map, m, n).map_err(|e| Error::StructuralError(format!("transition {:?}: {e}", t.name)))?;
        }
        for t in &transitions {
            match by_name.get(t.inverse.as_str()).map(|&i| &transitions[i]) {
                None => return structural(format!("transition {:?} lacks its inverse {:?}", t.name, t.inverse)),
                Some(inv) if inv.from != t.to || inv.to != t.from || inv.inverse != t.name => {
                    return structural(format!("transition {:?} and {:?} are not paired inverses", t.name, inv.name));
                }
                Some(_) => {}
            }
        }
        let atlas = Self {
            m,
            n,
            charts,
            transitions,
            triples,
        };
        for &[i, j, k] in &atlas.triples {
            if [i, j, k].iter().any(|&c| c >= atlas.charts.len()) || i == j || j == k || i == k {
                return structural(format!("triple {:?} has bad chart indices", [i, j, k]));
            }
            for (a, b) in [(i, j), (j, k), (i, k)] {
                if atlas.transition(a, b).is_none() {
                    return structural(format!("triple {:?} needs a transition {a} -> {b}", [i, j, k]));
                }
            }
        }
        Ok(atlas)
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("atlas algebra is nonempty")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn chart_index(&self, name: &str) -> Option<usize> {
        self.charts.iter().position(|c| c.name == name)
    }

    /// The transition from chart `i` to chart `j`, if declared.
    pub fn transition(&self, i: usize, j: usize) -> Option<&Transition> {
        self.transitions.iter().find(|t| t.from == i && t.to == j)
    }

    pub fn inverse_of(&self, t: &Transition) -> &Transition {
        self.transitions
            .iter()
            .find(|s| s.name == t.inverse)
            .expect("inverse presence is checked at construction")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AtlasFile = serde_json::from_str(text)?;
        file.into_atlas()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AtlasFile::from(self)).expect("atlas serialization is infallible")
    }
}

fn check_map_shape(map: &TransitionMap, m: usize, n: usize) -> Result<()> {
    let bad = |what: &str, expected: usize, found: usize| {
        Err(Error::StructuralError(format!("{what} expects rank {expected}, found {found}")))
    };
    match map {
        TransitionMap::Affine { matrix, translation } => {
            if matrix.rows() != n || matrix.cols() != n {
                return bad("affine matrix", n, matrix.rows().max(matrix.cols()));
            }
            if translation.rank() != n {
                return bad("affine translation", n, translation.rank());
            }
            if matrix.m() != m || translation.m() != m {
                return Err(Error::MismatchedAlgebra {
                    expected: m,
                    found: matrix.m(),
                });
            }
        }
        TransitionMap::Polynomial(p) => {
            if p.n() != n || p.k() != n {
                return bad("polynomial", n, p.n().max(p.k()));
            }
        }
        TransitionMap::Coordinate(p) => {
            if p.n() != n || p.k() != n {
                return bad("coordinate polynomial", n, p.n().max(p.k()));
            }
        }
        TransitionMap::MonomialInversion { variables } => {
            if let Some(&l) = variables.iter().find(|&&l| l >= n) {
                return bad("inverted variable", n, l + 1);
            }
        }
    }
    Ok(())
}

/// JSON form of a transition map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum MapFile {
    Affine { matrix: ALinearMap, translation: AVector },
    Polynomial { terms: Vec<PolyTerm> },
    CoordinatePolynomial { terms: Vec<CoordTerm> },
    MonomialInversion { variables: Vec<usize> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TransitionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    from: String,
    to: String,
    overlap: DomainDescriptor,
    map: MapFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inverse: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AtlasFile {
    m: usize,
    n: usize,
    charts: Vec<Chart>,
    transitions: Vec<TransitionFile>,
    #[serde(default)]
    triples: Vec<[usize; 3]>,
}

impl AtlasFile {
    fn into_atlas(self) -> Result<Atlas> {
        let algebra = Algebra::new(self.m)?;
        let lookup = |name: &str| {
            self.charts
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| Error::StructuralError(format!("unknown chart {name:?}")))
        };
        let transitions = self
            .transitions
            .iter()
            .map(|t| {
                let name = t.name.clone().unwrap_or_else(|| format!("{}->{}", t.from, t.to));
                let inverse = t
                    .inverse
                    .clone()
                    .ok_or_else(|| Error::StructuralError(format!("transition {name:?} lacks its inverse")))?;
                let map = match &t.map {
                    MapFile::Affine { matrix, translation } => TransitionMap::Affine {
                        matrix: matrix.clone(),
                        translation: translation.clone(),
                    },
                    MapFile::Polynomial { terms } => {
                        TransitionMap::Polynomial(PolyMap::new(algebra, self.n, self.n, terms.clone())?)
                    }
                    MapFile::CoordinatePolynomial { terms } => {
                        TransitionMap::Coordinate(CoordinatePolyMap::new(algebra, self.n, self.n, terms.clone())?)
                    }
                    MapFile::MonomialInversion { variables } => TransitionMap::MonomialInversion {
                        variables: variables.clone(),
                    },
                };
                Ok(Transition {
                    name,
                    from: lookup(&t.from)?,
                    to: lookup(&t.to)?,
                    overlap: t.overlap.clone(),
                    map,
                    inverse,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Atlas::new(algebra, self.n, self.charts, transitions, self.triples)
    }
}

impl From<&Atlas> for AtlasFile {
    fn from(atlas: &Atlas) -> Self {
        let transitions = atlas
            .transitions
            .iter()
            .map(|t| TransitionFile {
                name: Some(t.name.clone()),
                from: atlas.charts[t.from].name.clone(),
                to: atlas.charts[t.to].name.clone(),
                overlap: t.overlap.clone(),
                map: match &t.map {
                    TransitionMap::Affine { matrix, translation } => MapFile::Affine {
                        matrix: matrix.clone(),
                        translation: translation.clone(),
                    },
                    TransitionMap::Polynomial(p) => MapFile::Polynomial { terms: p.terms().to_vec() },
                    TransitionMap::Coordinate(p) => MapFile::CoordinatePolynomial { terms: p.terms().to_vec() },
                    TransitionMap::MonomialInversion { variables } => MapFile::MonomialInversion {
                        variables: variables.clone(),
                    },
                },
                inverse: Some(t.inverse.clone()),
            })
            .collect();
        Self {
            m: atlas.m,
            n: atlas.n,
            charts: atlas.charts.clone(),
            transitions,
            triples: atlas.triples.clone(),
        }
    }
}

impl std::fmt::Display for Transition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.name, self.map.kind_name())
    }
}
