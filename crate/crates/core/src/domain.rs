//! Open regions of the complex plane and product domains in `A^n`.
//!
//! A [`DomainDescriptor`] assigns one planar [`Region`] to every complex
//! coordinate `(variable l, character j)`; membership is the conjunction.
//! Distances are measured in the max norm, so the distance from a point to
//! the complement of the product is the smallest per-coordinate distance.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::multilinear::AVector;

/// Finite stand-in for an infinite boundary distance.
pub const DISTANCE_CAP: f64 = 1e9;

/// Default sampling seed for verification routines.
pub const DEFAULT_SEED: u64 = 0x5EED;

// Unbounded regions are sampled inside this radius (or strip half-width).
const SAMPLE_EXTENT: f64 = 2.0;
// Fraction of the distance to the boundary kept free when sampling.
const SAMPLE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    FullPlane,
    Disk { center: [f64; 2], radius: f64 },
    HalfPlaneImGt { c: f64 },
    HalfPlaneImLt { c: f64 },
    PuncturedPlane,
    Annulus { r: f64, #[serde(rename = "R")] big_r: f64 },
}

impl Region {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Region::Disk {
            center: [center.re, center.im],
            radius,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Region::FullPlane | Region::PuncturedPlane => true,
            Region::Disk { center, radius } => center.iter().all(|x| x.is_finite()) && radius.is_finite() && radius > 0.0,
            Region::HalfPlaneImGt { c } | Region::HalfPlaneImLt { c } => c.is_finite(),
            Region::Annulus { r, big_r } => r.is_finite() && big_r.is_finite() && r >= 0.0 && r < big_r,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::StructuralError(format!("empty or malformed region {self:?}")))
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::FullPlane => z.re.is_finite() && z.im.is_finite(),
            Region::Disk { center, radius } => (z - Complex64::new(center[0], center[1])).norm() < radius,
            Region::HalfPlaneImGt { c } => z.im > c,
            Region::HalfPlaneImLt { c } => z.im < c,
            Region::PuncturedPlane => z.norm() > 0.0,
            Region::Annulus { r, big_r } => {
                let a = z.norm();
                a > r && a < big_r
            }
        }
    }

    /// Distance to the complement; `0` outside, `+inf` for the full plane.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        if !self.contains(z) {
            return 0.0;
        }
        match *self {
            Region::FullPlane => f64::INFINITY,
            Region::Disk { center, radius } => radius - (z - Complex64::new(center[0], center[1])).norm(),
            Region::HalfPlaneImGt { c } => z.im - c,
            Region::HalfPlaneImLt { c } => c - z.im,
            Region::PuncturedPlane => z.norm(),
            Region::Annulus { r, big_r } => (z.norm() - r).min(big_r - z.norm()),
        }
    }

    /// Maps `(u, v)` in the unit square to an interior point, keeping a margin from the boundary.
    pub fn sample(&self, u: f64, v: f64) -> Complex64 {
        let angle = 2.0 * PI * v;
        let keep = 1.0 - SAMPLE_MARGIN;
        match *self {
            Region::FullPlane => Complex64::from_polar(SAMPLE_EXTENT * u.sqrt(), angle),
            Region::Disk { center, radius } => {
                Complex64::new(center[0], center[1]) + Complex64::from_polar(keep * radius * u.sqrt(), angle)
            }
            Region::HalfPlaneImGt { c } => {
                Complex64::new(2.0 * SAMPLE_EXTENT * (u - 0.5), c + SAMPLE_MARGIN + SAMPLE_EXTENT * v)
            }
            Region::HalfPlaneImLt { c } => {
                Complex64::new(2.0 * SAMPLE_EXTENT * (u - 0.5), c - SAMPLE_MARGIN - SAMPLE_EXTENT * v)
            }
            Region::PuncturedPlane => {
                let inner = 0.25;
                Complex64::from_polar(inner + (SAMPLE_EXTENT - inner) * u, angle)
            }
            Region::Annulus { r, big_r } => {
                let width = big_r - r;
                let rho = r + width * (SAMPLE_MARGIN + (1.0 - 2.0 * SAMPLE_MARGIN) * u);
                Complex64::from_polar(rho, angle)
            }
        }
    }

    /// Sampled boundary points with their inward unit normals.
    pub fn boundary_points(&self, count: usize) -> Vec<(Complex64, Complex64)> {
        let circle = |center: Complex64, radius: f64, inward: f64| {
            (0..count)
                .map(|t| {
                    let dir = Complex64::from_polar(1.0, 2.0 * PI * t as f64 / count as f64);
                    (center + dir * radius, -dir * inward)
                })
                .collect::<Vec<_>>()
        };
        let line = |c: f64, normal: Complex64| {
            (0..count)
                .map(|t| {
                    let x = 2.0 * SAMPLE_EXTENT * (t as f64 / (count.max(2) - 1) as f64 - 0.5);
                    (Complex64::new(x, c), normal)
                })
                .collect::<Vec<_>>()
        };
        match *self {
            Region::FullPlane => Vec::new(),
            Region::Disk { center, radius } => circle(Complex64::new(center[0], center[1]), radius, 1.0),
            Region::HalfPlaneImGt { c } => line(c, Complex64::new(0.0, 1.0)),
            Region::HalfPlaneImLt { c } => line(c, Complex64::new(0.0, -1.0)),
            Region::PuncturedPlane => vec![(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))],
            Region::Annulus { r, big_r } => {
                let mut pts = if r > 0.0 {
                    circle(Complex64::new(0.0, 0.0), r, -1.0)
                } else {
                    vec![(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))]
                };
                pts.extend(circle(Complex64::new(0.0, 0.0), big_r, 1.0));
                pts
            }
        }
    }
}

/// Product domain in `A^n`: `regions[l][j]` constrains coordinate `(l, j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DomainDescriptor {
    regions: Vec<Vec<Region>>,
}

impl DomainDescriptor {
    pub fn new(regions: Vec<Vec<Region>>) -> Result<Self> {
        let m = regions.first().map_or(0, |r| r.len());
        if m == 0 {
            return Err(Error::StructuralError("domain needs at least one variable and one component".into()));
        }
        for row in &regions {
            if row.len() != m {
                return Err(Error::StructuralError("domain rows have different component counts".into()));
            }
            for r in row {
                r.validate()?;
            }
        }
        Ok(Self { regions })
    }

    /// The whole of `A^n`.
    pub fn full(algebra: Algebra, n: usize) -> Self {
        Self::uniform(algebra, n, Region::FullPlane)
    }

    pub fn uniform(algebra: Algebra, n: usize, region: Region) -> Self {
        Self {
            regions: vec![vec![region; algebra.m()]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.regions.len()
    }

    pub fn m(&self) -> usize {
        self.regions[0].len()
    }

    pub fn region(&self, l: usize, j: usize) -> &Region {
        &self.regions[l][j]
    }

    pub fn regions(&self) -> &[Vec<Region>] {
        &self.regions
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.regions.clone()).map(|_| ())
    }

    fn shape_matches(&self, z: &AVector) -> bool {
        z.rank() == self.n() && z.m() == self.m()
    }

    pub fn contains(&self, z: &AVector) -> bool {
        self.shape_matches(z)
            && self
                .coords()
                .all(|(l, j)| self.regions[l][j].contains(z.coord(l, j)))
    }

    /// Max-norm distance from `z` to the complement (`0` outside, possibly `+inf`).
    pub fn boundary_distance(&self, z: &AVector) -> f64 {
        if !self.shape_matches(z) {
            return 0.0;
        }
        self.coords()
            .map(|(l, j)| self.regions[l][j].boundary_distance(z.coord(l, j)))
            .fold(f64::INFINITY, f64::min)
    }

    fn coords(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.m();
        (0..self.n()).flat_map(move |l| (0..m).map(move |j| (l, j)))
    }

    /// Number of unit-square coordinates consumed per sample point.
    pub fn sample_dim(&self) -> usize {
        2 * self.n() * self.m()
    }

    /// A point from `2 n m` numbers in `[0, 1)`.
    pub fn point_from_unit(&self, us: &[f64]) -> AVector {
        let algebra = Algebra::new(self.m()).expect("descriptor has components");
        let entries = (0..self.n())
            .map(|l| {
                AlgebraElement::new(
                    (0..self.m())
                        .map(|j| {
                            let base = 2 * (l * self.m() + j);
                            self.regions[l][j].sample(us[base], us[base + 1])
                        })
                        .collect(),
                )
            })
            .collect();
        AVector::new(algebra, entries).expect("entries share the descriptor algebra")
    }

    /// `ceil(count / 2)` Halton points followed by `floor(count / 2)` seeded random points.
    pub fn samples(&self, count: usize, seed: u64) -> Vec<AVector> {
        unit_samples(self.sample_dim(), count, seed)
            .iter()
            .map(|us| self.point_from_unit(us))
            .collect()
    }
}

/// Deterministic points of the unit cube: a Halton prefix then ChaCha8 uniforms.
pub fn unit_samples(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let grid = count.div_ceil(2);
    let primes = first_primes(dim);
    let mut out: Vec<Vec<f64>> = (1..=grid)
        .map(|i| primes.iter().map(|&p| radical_inverse(i as u64, p)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((grid..count).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()));
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}
