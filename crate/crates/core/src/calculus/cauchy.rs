//! Circle-average differentiation.
//!
//! For a holomorphic `f` and a direction `ż`,
//!
//! ```text
//! (Df)_z(ż) = C * (1/2π) ∫ e^{-iθ} f(z + e^{iθ} ż / C) dθ
//! ```
//!
//! whenever the closed circle stays inside the domain. The integral is
//! evaluated with the `N`-node trapezoid rule, which is exact (up to
//! rounding) for polynomials of degree below `N`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::HolomorphicMapSpec;
use crate::domain::DISTANCE_CAP;
use crate::error::{Error, Result};
use crate::multilinear::{ALinearMap, AVector};

pub const DEFAULT_NODES: usize = 64;
/// Largest sampling radius, in the max norm.
pub const MAX_RADIUS: f64 = 1.0;
/// Node cap for [`adaptive_directional_derivative`].
pub const MAX_NODES: usize = 4096;
/// Agreement required between `N` and `2N` nodes in [`adaptive_directional_derivative`].
pub const DOUBLING_TOL: f64 = 1e-10;

/// Compensated accumulator over a flat list of complex values.
struct Kahan {
    sum: Vec<Complex64>,
    carry: Vec<Complex64>,
}

impl Kahan {
    fn new(len: usize) -> Self {
        Self {
            sum: vec![Complex64::new(0.0, 0.0); len],
            carry: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    fn add(&mut self, i: usize, x: Complex64) {
        let comp = |s: &mut f64, c: &mut f64, v: f64| {
            let y = v - *c;
            let t = *s + y;
            *c = (t - *s) - y;
            *s = t;
        };
        let (s, c) = (&mut self.sum[i], &mut self.carry[i]);
        comp(&mut s.re, &mut c.re, x.re);
        comp(&mut s.im, &mut c.im, x.im);
    }
}

/// First Fourier modes of `f` on the circle `center + e^{iθ} step`.
pub(crate) struct CircleModes {
    /// `(1/N) Σ e^{-iθ} (f - f(center))`, indexed `[j][o]`.
    pub positive: Vec<Vec<Complex64>>,
    /// `(1/N) Σ e^{+iθ} (f - f(center))`.
    pub negative: Vec<Vec<Complex64>>,
    /// `max_θ |f - f(center)|` per coordinate.
    pub oscillation: Vec<Vec<f64>>,
    /// `max_θ |f|` per coordinate.
    pub magnitude: Vec<Vec<f64>>,
}

pub(crate) fn circle_modes(
    f: &HolomorphicMapSpec,
    center: &AVector,
    step: &AVector,
    nodes: usize,
) -> Result<CircleModes> {
    if nodes == 0 {
        return Err(Error::Precondition("quadrature needs at least one node".into()));
    }
    let (m, k) = (f.algebra().m(), f.k());
    let base = f.eval(center)?;
    let mut pos = Kahan::new(m * k);
    let mut neg = Kahan::new(m * k);
    let mut osc = vec![0.0f64; m * k];
    let mut mag = vec![0.0f64; m * k];
    for q in 0..nodes {
        let w = Complex64::from_polar(1.0, 2.0 * PI * q as f64 / nodes as f64);
        let point = center + &step.scale_complex(w);
        if !f.domain().contains(&point) {
            return Err(Error::DomainViolation(format!(
                "quadrature node {q} of {nodes} leaves the domain"
            )));
        }
        let value = f.eval(&point)?;
        for o in 0..k {
            for j in 0..m {
                let v = value.coord(o, j);
                let d = v - base.coord(o, j);
                let i = j * k + o;
                pos.add(i, w.conj() * d);
                neg.add(i, w * d);
                osc[i] = osc[i].max(d.norm());
                mag[i] = mag[i].max(v.norm());
            }
        }
    }
    let inv_n = 1.0 / nodes as f64;
    let reshape = |flat: Vec<Complex64>| -> Vec<Vec<Complex64>> {
        flat.chunks(k.max(1)).take(m).map(|c| c.iter().map(|v| v * inv_n).collect()).collect()
    };
    let reshape_real =
        |flat: Vec<f64>| -> Vec<Vec<f64>> { flat.chunks(k.max(1)).take(m).map(|c| c.to_vec()).collect() };
    Ok(CircleModes {
        positive: if k == 0 { vec![Vec::new(); m] } else { reshape(pos.sum) },
        negative: if k == 0 { vec![Vec::new(); m] } else { reshape(neg.sum) },
        oscillation: if k == 0 { vec![Vec::new(); m] } else { reshape_real(osc) },
        magnitude: if k == 0 { vec![Vec::new(); m] } else { reshape_real(mag) },
    })
}

/// Distance from `z` to the domain boundary; errors unless it is positive.
fn usable_distance(f: &HolomorphicMapSpec, z: &AVector) -> Result<f64> {
    let dist = f.domain().boundary_distance(z).min(DISTANCE_CAP);
    if dist.is_nan() || dist <= 0.0 {
        return Err(Error::BoundaryTooClose { distance: dist.max(0.0) });
    }
    Ok(dist)
}

fn check_shapes(f: &HolomorphicMapSpec, vs: &[&AVector]) -> Result<()> {
    for v in vs {
        if v.rank() != f.n() {
            return Err(Error::RankMismatch {
                context: "derivative input",
                expected: f.n(),
                found: v.rank(),
            });
        }
        if v.m() != f.algebra().m() {
            return Err(Error::MismatchedAlgebra {
                expected: f.algebra().m(),
                found: v.m(),
            });
        }
    }
    Ok(())
}

/// `(Df)_z(ż)` by the circle average with `nodes` trapezoid nodes.
///
/// The circle has max-norm radius `min(dist(z, ∂U) / 2, MAX_RADIUS)`.
pub fn cauchy_directional_derivative(
    f: &HolomorphicMapSpec,
    z: &AVector,
    zdot: &AVector,
    nodes: usize,
) -> Result<AVector> {
    check_shapes(f, &[z, zdot])?;
    let dist = usable_distance(f, z)?;
    let size = zdot.norm();
    if size == 0.0 {
        return Ok(AVector::zeros(f.algebra(), f.k()));
    }
    let radius = (dist / 2.0).min(MAX_RADIUS);
    let c = size / radius;
    let modes = circle_modes(f, z, &zdot.scale_complex(Complex64::new(1.0 / c, 0.0)), nodes)?;
    let per_component: Vec<Vec<Complex64>> = modes
        .positive
        .into_iter()
        .map(|row| row.into_iter().map(|v| v * c).collect())
        .collect();
    AVector::from_components(&per_component)
}

/// Doubles the node count from [`DEFAULT_NODES`] until consecutive results agree.
///
/// Returns the derivative and the node count used.
pub fn adaptive_directional_derivative(
    f: &HolomorphicMapSpec,
    z: &AVector,
    zdot: &AVector,
) -> Result<(AVector, usize)> {
    let mut nodes = DEFAULT_NODES;
    let mut prev = cauchy_directional_derivative(f, z, zdot, nodes)?;
    loop {
        let next_nodes = nodes * 2;
        let next = cauchy_directional_derivative(f, z, zdot, next_nodes)?;
        let diff = prev.distance(&next);
        if diff <= DOUBLING_TOL * next.norm().max(1.0) {
            return Ok((next, next_nodes));
        }
        if next_nodes >= MAX_NODES {
            return Err(Error::ConvergenceFailure {
                nodes: next_nodes,
                difference: diff,
            });
        }
        nodes = next_nodes;
        prev = next;
    }
}

/// The derivative at `z` as an `A`-linear map; column `l` is `(Df)_z(e_l 1_A)`.
pub fn frechet_matrix(f: &HolomorphicMapSpec, z: &AVector, nodes: usize) -> Result<ALinearMap> {
    let alg = f.algebra();
    let columns = (0..f.n())
        .map(|l| cauchy_directional_derivative(f, z, &AVector::basis(alg, f.n(), l), nodes))
        .collect::<Result<Vec<_>>>()?;
    ALinearMap::from_columns(alg, f.k(), &columns)
}

/// Full complex Jacobian over the `m n` input and `m k` output coordinates,
/// with rows `o * m + j` and columns `l * m + j'`.
#[derive(Debug, Clone)]
pub struct ComplexJacobian {
    pub m: usize,
    pub matrix: DMatrix<Complex64>,
    /// Relative size of the anti-holomorphic circle mode, same layout as `matrix`.
    pub defects: DMatrix<f64>,
}

/// Relative anti-holomorphic mode size counted as holomorphic.
pub const HOLOMORPHY_TOL: f64 = 1e-6;

pub fn complex_jacobian(f: &HolomorphicMapSpec, z: &AVector, nodes: usize) -> Result<ComplexJacobian> {
    check_shapes(f, &[z])?;
    let (m, n, k) = (f.algebra().m(), f.n(), f.k());
    let dist = usable_distance(f, z)?;
    let radius = (dist / 2.0).min(MAX_RADIUS);
    let mut matrix = DMatrix::zeros(m * k, m * n);
    let mut defects = DMatrix::zeros(m * k, m * n);
    for l in 0..n {
        for jp in 0..m {
            let mut step = AVector::zeros(f.algebra(), n);
            step.set_coord(l, jp, Complex64::new(radius, 0.0));
            let modes = circle_modes(f, z, &step, nodes)?;
            for o in 0..k {
                for j in 0..m {
                    let row = o * m + j;
                    let col = l * m + jp;
                    matrix[(row, col)] = modes.positive[j][o] / radius;
                    let neg = modes.negative[j][o].norm();
                    let noise = 1e3 * f64::EPSILON * modes.magnitude[j][o].max(f64::MIN_POSITIVE);
                    let osc = modes.oscillation[j][o];
                    defects[(row, col)] = if neg <= noise || osc == 0.0 { 0.0 } else { neg / osc };
                }
            }
        }
    }
    Ok(ComplexJacobian { m, matrix, defects })
}

/// `((DG)_{z0}(h))(ż0)` for `G(z) = (Df)_z`, as the circle average of first derivatives
/// over `z0 + e^{iθ} r ż0` with `r = 1 / (1 + ‖ż0‖ / ε)`.
pub fn second_derivative(
    f: &HolomorphicMapSpec,
    z0: &AVector,
    h: &AVector,
    zdot0: &AVector,
    nodes: usize,
) -> Result<AVector> {
    check_shapes(f, &[z0, h, zdot0])?;
    if nodes == 0 {
        return Err(Error::Precondition("quadrature needs at least one node".into()));
    }
    let eps = usable_distance(f, z0)?.min(MAX_RADIUS);
    let size = zdot0.norm();
    if size == 0.0 {
        return Ok(AVector::zeros(f.algebra(), f.k()));
    }
    let r = 1.0 / (1.0 + size / eps);
    let base = cauchy_directional_derivative(f, z0, h, nodes)?;
    let (m, k) = (f.algebra().m(), f.k());
    let mut acc = Kahan::new(m * k);
    for q in 0..nodes {
        let w = Complex64::from_polar(1.0, 2.0 * PI * q as f64 / nodes as f64);
        let point = z0 + &zdot0.scale_complex(w * r);
        if !f.domain().contains(&point) {
            return Err(Error::DomainViolation(format!(
                "second-derivative node {q} of {nodes} leaves the domain"
            )));
        }
        let d = cauchy_directional_derivative(f, &point, h, nodes)?;
        for o in 0..k {
            for j in 0..m {
                acc.add(j * k + o, w.conj() * (d.coord(o, j) - base.coord(o, j)));
            }
        }
    }
    let scale = 1.0 / (nodes as f64 * r);
    let per_component: Vec<Vec<Complex64>> = (0..m)
        .map(|j| (0..k).map(|o| acc.sum[j * k + o] * scale).collect())
        .collect();
    AVector::from_components(&per_component)
}
