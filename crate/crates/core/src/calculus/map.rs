//! Maps between open sets of `A^n` and `A^k`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::domain::DomainDescriptor;
use crate::error::{Error, Result};
use crate::multilinear::AVector;

/// One monomial `coeff * prod_l z_l^{e_l}` contributing to output `output`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub output: usize,
    pub exponents: Vec<u32>,
    pub coeff: AlgebraElement,
}

/// Polynomial map `A^n -> A^k` with coefficients in `A` and variables in `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    m: usize,
    n: usize,
    k: usize,
    terms: Vec<PolyTerm>,
}

impl PolyMap {
    pub fn new(algebra: Algebra, n: usize, k: usize, terms: Vec<PolyTerm>) -> Result<Self> {
        for t in &terms {
            algebra.check(&t.coeff)?;
            if t.output >= k {
                return Err(Error::RankMismatch {
                    context: "polynomial term output",
                    expected: k,
                    found: t.output + 1,
                });
            }
            if t.exponents.len() != n {
                return Err(Error::RankMismatch {
                    context: "polynomial term exponents",
                    expected: n,
                    found: t.exponents.len(),
                });
            }
        }
        Ok(Self {
            m: algebra.m(),
            n,
            k,
            terms,
        })
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("polynomial algebra is nonempty")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &AVector) -> Result<AVector> {
        check_input(self.m, self.n, z)?;
        let alg = self.algebra();
        let mut out = vec![alg.zero(); self.k];
        for t in &self.terms {
            let mono = t
                .exponents
                .iter()
                .zip(z.entries())
                .filter(|(&e, _)| e > 0)
                .fold(t.coeff.clone(), |acc, (&e, x)| &acc * &x.powi(e as i32));
            out[t.output] = &out[t.output] + &mono;
        }
        AVector::new(alg, out)
    }

    /// Merges terms with the same output and exponents, keeping first-appearance order.
    pub fn normalized(&self) -> Self {
        let mut order: Vec<PolyTerm> = Vec::new();
        let mut seen: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
        for t in &self.terms {
            let key = (t.output, t.exponents.clone());
            match seen.get(&key) {
                Some(&i) => order[i].coeff = &order[i].coeff + &t.coeff,
                None => {
                    seen.insert(key, order.len());
                    order.push(t.clone());
                }
            }
        }
        Self {
            terms: order,
            ..self.clone()
        }
    }
}

/// Splits an `A`-polynomial map into its `m` complex polynomial maps.
pub fn decompose_map(f: &PolyMap) -> Vec<PolyMap> {
    let one = Algebra::new(1).expect("m = 1");
    (0..f.m)
        .map(|j| PolyMap {
            m: 1,
            n: f.n,
            k: f.k,
            terms: f
                .terms
                .iter()
                .map(|t| PolyTerm {
                    output: t.output,
                    exponents: t.exponents.clone(),
                    coeff: one.scalar(t.coeff.component(j)),
                })
                .collect(),
        })
        .collect()
}

/// Inverse of [`decompose_map`] on normalized maps.
pub fn recompose_map(parts: &[PolyMap]) -> Result<PolyMap> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Precondition("recompose_map needs at least one component".into()))?;
    let m = parts.len();
    let mut keys: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut coeffs: HashMap<(usize, Vec<u32>), Vec<Complex64>> = HashMap::new();
    for (j, p) in parts.iter().enumerate() {
        if p.m != 1 || p.n != first.n || p.k != first.k {
            return Err(Error::Precondition(
                "component maps must be complex maps with equal shapes".into(),
            ));
        }
        for t in &p.terms {
            let key = (t.output, t.exponents.clone());
            let entry = coeffs.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                vec![Complex64::new(0.0, 0.0); m]
            });
            entry[j] += t.coeff.component(0);
        }
    }
    let terms = keys
        .into_iter()
        .map(|key| {
            let c = coeffs.remove(&key).expect("key recorded");
            PolyTerm {
                output: key.0,
                exponents: key.1,
                coeff: AlgebraElement::new(c),
            }
        })
        .collect();
    PolyMap::new(Algebra::new(m)?, first.n, first.k, terms)
}

/// A factor `z_{var, comp}^power` (or its conjugate) of a coordinate monomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordFactor {
    pub var: usize,
    pub comp: usize,
    #[serde(default = "one_u32")]
    pub power: u32,
    #[serde(default)]
    pub conj: bool,
}

fn one_u32() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordTerm {
    /// `(variable, component)` of the output coordinate.
    pub output: [usize; 2],
    pub coeff: [f64; 2],
    #[serde(default)]
    pub factors: Vec<CoordFactor>,
}

/// A polynomial map on the underlying complex coordinates of `A^n`,
/// possibly involving conjugates. Expresses maps that are not `A`-linear or
/// not holomorphic, such as component swaps or `Re z`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinatePolyMap {
    m: usize,
    n: usize,
    k: usize,
    terms: Vec<CoordTerm>,
}

impl CoordinatePolyMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[CoordTerm] {
        &self.terms
    }

    pub fn new(algebra: Algebra, n: usize, k: usize, terms: Vec<CoordTerm>) -> Result<Self> {
        let m = algebra.m();
        for t in &terms {
            if t.output[0] >= k || t.output[1] >= m {
                return Err(Error::RankMismatch {
                    context: "coordinate term output",
                    expected: k * m,
                    found: t.output[0] * m + t.output[1] + 1,
                });
            }
            if let Some(f) = t.factors.iter().find(|f| f.var >= n || f.comp >= m) {
                return Err(Error::RankMismatch {
                    context: "coordinate factor",
                    expected: n * m,
                    found: f.var * m + f.comp + 1,
                });
            }
        }
        Ok(Self { m, n, k, terms })
    }

    pub fn eval(&self, z: &AVector) -> Result<AVector> {
        check_input(self.m, self.n, z)?;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.k]; self.m];
        for t in &self.terms {
            let v = t.factors.iter().fold(Complex64::new(t.coeff[0], t.coeff[1]), |acc, f| {
                let x = z.coord(f.var, f.comp);
                let x = if f.conj { x.conj() } else { x };
                acc * x.powi(f.power as i32)
            });
            out[t.output[1]][t.output[0]] += v;
        }
        AVector::from_components(&out)
    }
}

pub type BlackboxFn = Arc<dyn Fn(&AVector) -> AVector + Send + Sync>;

#[derive(Clone)]
pub enum MapKind {
    Polynomial(PolyMap),
    Coordinate(CoordinatePolyMap),
    Blackbox(BlackboxFn),
}

impl fmt::Debug for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            MapKind::Coordinate(p) => f.debug_tuple("Coordinate").field(p).finish(),
            MapKind::Blackbox(_) => f.write_str("Blackbox(..)"),
        }
    }
}

/// A map from an open set of `A^n` to `A^k`, together with its domain.
#[derive(Debug, Clone)]
pub struct HolomorphicMapSpec {
    m: usize,
    n: usize,
    k: usize,
    kind: MapKind,
    domain: DomainDescriptor,
}

impl HolomorphicMapSpec {
    pub fn polynomial(p: PolyMap) -> Self {
        let domain = DomainDescriptor::full(p.algebra(), p.n);
        Self {
            m: p.m,
            n: p.n,
            k: p.k,
            kind: MapKind::Polynomial(p),
            domain,
        }
    }

    pub fn coordinate(p: CoordinatePolyMap) -> Self {
        let domain = DomainDescriptor::full(Algebra::new(p.m).expect("m >= 1"), p.n);
        Self {
            m: p.m,
            n: p.n,
            k: p.k,
            kind: MapKind::Coordinate(p),
            domain,
        }
    }

    pub fn blackbox(
        algebra: Algebra,
        n: usize,
        k: usize,
        domain: DomainDescriptor,
        f: impl Fn(&AVector) -> AVector + Send + Sync + 'static,
    ) -> Self {
        Self {
            m: algebra.m(),
            n,
            k,
            kind: MapKind::Blackbox(Arc::new(f)),
            domain,
        }
    }

    pub fn with_domain(mut self, domain: DomainDescriptor) -> Result<Self> {
        if domain.n() != self.n || domain.m() != self.m {
            return Err(Error::RankMismatch {
                context: "domain shape",
                expected: self.n * self.m,
                found: domain.n() * domain.m(),
            });
        }
        self.domain = domain;
        Ok(self)
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("map algebra is nonempty")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    pub fn as_polynomial(&self) -> Option<&PolyMap> {
        match &self.kind {
            MapKind::Polynomial(p) => Some(p),
            _ => None,
        }
    }

    pub fn eval(&self, z: &AVector) -> Result<AVector> {
        match &self.kind {
            MapKind::Polynomial(p) => p.eval(z),
            MapKind::Coordinate(p) => p.eval(z),
            MapKind::Blackbox(f) => {
                check_input(self.m, self.n, z)?;
                let out = f(z);
                if out.rank() != self.k || out.m() != self.m {
                    return Err(Error::RankMismatch {
                        context: "blackbox output",
                        expected: self.k,
                        found: out.rank(),
                    });
                }
                Ok(out)
            }
        }
    }

    /// Parses either map file format (see [`MapFile`]).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MapFile = serde_json::from_str(text)?;
        file.into_spec()
    }
}

fn check_input(m: usize, n: usize, z: &AVector) -> Result<()> {
    if z.rank() != n {
        return Err(Error::RankMismatch {
            context: "map input",
            expected: n,
            found: z.rank(),
        });
    }
    if z.m() != m {
        return Err(Error::MismatchedAlgebra {
            expected: m,
            found: z.m(),
        });
    }
    Ok(())
}

/// On-disk map formats. The `A`-polynomial format is the default when `kind` is absent.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapFile {
    Polynomial(PolyMapFile),
    CoordinatePolynomial(CoordMapFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyMapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    pub k: usize,
    pub terms: Vec<PolyTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainDescriptor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoordMapFile {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub terms: Vec<CoordTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainDescriptor>,
}

impl PolyMapFile {
    pub fn into_map(self) -> Result<PolyMap> {
        let m = match (self.m, self.terms.first()) {
            (Some(m), _) => m,
            (None, Some(t)) => t.coeff.m(),
            (None, None) => return Err(Error::Parse("polynomial map without terms needs \"m\"".into())),
        };
        PolyMap::new(Algebra::new(m)?, self.n, self.k, self.terms)
    }
}

impl From<&PolyMap> for PolyMapFile {
    fn from(p: &PolyMap) -> Self {
        Self {
            m: Some(p.m),
            n: p.n,
            k: p.k,
            terms: p.terms.clone(),
            domain: None,
        }
    }
}

impl<'de> Deserialize<'de> for MapFile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut value = serde_json::Value::deserialize(deserializer)?;
        let kind = value
            .as_object_mut()
            .ok_or_else(|| D::Error::custom("map file must be a JSON object"))?
            .remove("kind");
        match kind.as_ref().and_then(|k| k.as_str()) {
            None | Some("polynomial") => serde_json::from_value(value).map(MapFile::Polynomial),
            Some("coordinate_polynomial") => serde_json::from_value(value).map(MapFile::CoordinatePolynomial),
            Some(other) => return Err(D::Error::custom(format!("unknown map kind {other:?}"))),
        }
        .map_err(D::Error::custom)
    }
}

impl MapFile {
    pub fn into_spec(self) -> Result<HolomorphicMapSpec> {
        match self {
            MapFile::Polynomial(file) => {
                let domain = file.domain.clone();
                let spec = HolomorphicMapSpec::polynomial(file.into_map()?);
                match domain {
                    Some(d) => spec.with_domain(DomainDescriptor::new(d.regions().to_vec())?),
                    None => Ok(spec),
                }
            }
            MapFile::CoordinatePolynomial(file) => {
                let map = CoordinatePolyMap::new(Algebra::new(file.m)?, file.n, file.k, file.terms)?;
                let spec = HolomorphicMapSpec::coordinate(map);
                match file.domain {
                    Some(d) => spec.with_domain(DomainDescriptor::new(d.regions().to_vec())?),
                    None => Ok(spec),
                }
            }
        }
    }
}
