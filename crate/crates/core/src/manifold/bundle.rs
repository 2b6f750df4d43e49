//! Tangent and cotangent-exterior bundle transitions, and global k-forms.

use serde::Serialize;

use super::validate::{overlap_samples, triple_samples, WitnessRecord};
use super::{Atlas, Transition};
use crate::calculus::{frechet_matrix, is_a_differentiable, HolomorphicMapSpec, DEFAULT_NODES};
use crate::domain::DomainDescriptor;
use crate::error::{Error, Result};
use crate::multilinear::{pullback, wedge_rank, ALinearMap, AVector, AntisymForm};

fn overlap_transition<'a>(atlas: &'a Atlas, i: usize, j: usize, p: &AVector) -> Result<&'a Transition> {
    let names = || {
        let name = |c: usize| atlas.charts().get(c).map_or_else(|| c.to_string(), |ch| ch.name.clone());
        (name(i), name(j))
    };
    let t = atlas.transition(i, j).ok_or_else(|| {
        let (from, to) = names();
        Error::NotInOverlap { from, to }
    })?;
    if !t.overlap.contains(p) || !atlas.charts()[i].domain.contains(p) {
        let (from, to) = names();
        return Err(Error::NotInOverlap { from, to });
    }
    Ok(t)
}

/// `D(phi_j ∘ phi_i^{-1})` at `p` (chart-`i` coordinates).
pub fn tangent_transition(atlas: &Atlas, i: usize, j: usize, p: &AVector) -> Result<ALinearMap> {
    let t = overlap_transition(atlas, i, j, p)?;
    if let Some(d) = t.map.closed_form_derivative(p)? {
        return Ok(d);
    }
    // Polynomial transitions are entire; differentiate them on the whole space
    // so the Cauchy radius does not shrink near the overlap boundary.
    let full = DomainDescriptor::full(atlas.algebra(), atlas.n());
    let spec = t.map.to_spec(atlas.algebra(), atlas.n(), &full)?;
    frechet_matrix(&spec, p, DEFAULT_NODES)
}

/// Coefficient map `f |-> (D(phi_i ∘ phi_j^{-1})_{phi_j(p)})^* f` taking a
/// chart-`i` `k`-form at `p` to the chart-`j` form at the image point.
///
/// Returned as a square `A`-matrix on wedge coefficients (column `r` is the
/// image of the `r`-th basis form).
pub fn cotangent_transition(atlas: &Atlas, i: usize, j: usize, p: &AVector, k: usize) -> Result<ALinearMap> {
    let alg = atlas.algebra();
    let n = atlas.n();
    let forward = tangent_transition(atlas, i, j, p)?;
    forward.inverse()?;
    let image = overlap_transition(atlas, i, j, p)?.map.eval(p)?;
    let back = tangent_transition(atlas, j, i, &image)?;
    let rank = wedge_rank(n, k);
    let columns = (0..rank)
        .map(|r| {
            let mut coeffs = vec![alg.zero(); rank];
            coeffs[r] = alg.one();
            let basis = AntisymForm::from_coeffs(alg, n, k, coeffs)?;
            let image = pullback(&back, &basis)?;
            AVector::new(alg, image.coeffs().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    ALinearMap::from_columns(alg, rank, &columns)
}

/// Applies [`cotangent_transition`] to a form.
pub fn transport_form(atlas: &Atlas, i: usize, j: usize, p: &AVector, f: &AntisymForm) -> Result<AntisymForm> {
    let map = cotangent_transition(atlas, i, j, p, f.degree())?;
    let coeffs = map.apply(&AVector::new(f.algebra(), f.coeffs().to_vec())?)?;
    AntisymForm::from_coeffs(f.algebra(), f.n(), f.degree(), coeffs.entries().to_vec())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CocycleFinding {
    pub charts: [String; 3],
    pub samples: usize,
    /// `max |T_jk T_ij - T_ik|` over samples.
    pub tangent: f64,
    /// Per degree `k = 0..=n`: `max |C_jk C_ij - C_ik|` on wedge coefficients.
    pub cotangent: Vec<f64>,
}

/// Chain-rule cocycle checks for the tangent and cotangent-exterior transitions
/// on every listed triple overlap.
pub fn bundle_cocycles(atlas: &Atlas, samples: usize, seed: u64) -> Result<Vec<CocycleFinding>> {
    let mut out = Vec::new();
    for &triple in atlas.triples() {
        let [i, j, k] = triple;
        let points = triple_samples(atlas, triple, samples, seed)?;
        let tij = atlas.transition(i, j).expect("checked at construction");
        let mut tangent: f64 = 0.0;
        let mut cotangent = vec![0.0f64; atlas.n() + 1];
        for p in &points {
            let q = tij.map.eval(p)?;
            let via = tangent_transition(atlas, j, k, &q)?.compose(&tangent_transition(atlas, i, j, p)?)?;
            tangent = tangent.max(via.distance(&tangent_transition(atlas, i, k, p)?));
            for (deg, worst) in cotangent.iter_mut().enumerate() {
                let via = cotangent_transition(atlas, j, k, &q, deg)?.compose(&cotangent_transition(atlas, i, j, p, deg)?)?;
                *worst = worst.max(via.distance(&cotangent_transition(atlas, i, k, p, deg)?));
            }
        }
        out.push(CocycleFinding {
            charts: triple.map(|c| atlas.charts()[c].name.clone()),
            samples: points.len(),
            tangent,
            cotangent,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartFormFinding {
    pub chart: String,
    pub samples: usize,
    pub a_differentiable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapFormFinding {
    pub from: String,
    pub to: String,
    pub samples: usize,
    /// `max |transport(f_i) - f_j|` in the max norm of wedge coefficients.
    pub worst_mismatch: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalFormReport {
    pub pass: bool,
    pub degree: usize,
    pub charts: Vec<ChartFormFinding>,
    pub overlaps: Vec<OverlapFormFinding>,
}

/// Checks that per-chart wedge-coefficient maps glue to a holomorphic `k`-form.
pub fn check_global_form(
    atlas: &Atlas,
    k: usize,
    coefficients: &[HolomorphicMapSpec],
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<GlobalFormReport> {
    let rank = wedge_rank(atlas.n(), k);
    if coefficients.len() != atlas.charts().len() {
        return Err(Error::MissingChartData(format!(
            "{} coefficient maps for {} charts",
            coefficients.len(),
            atlas.charts().len()
        )));
    }
    for (chart, f) in atlas.charts().iter().zip(coefficients) {
        if f.n() != atlas.n() || f.k() != rank || f.algebra() != atlas.algebra() {
            return Err(Error::MissingChartData(format!(
                "coefficient map for chart {:?} must be A^{} -> A^{}",
                chart.name,
                atlas.n(),
                rank
            )));
        }
    }

    let mut charts = Vec::new();
    for (chart, f) in atlas.charts().iter().zip(coefficients) {
        let spec = f.clone().with_domain(chart.domain.clone())?;
        let points = chart.domain.samples(samples, seed);
        let (ok, witness) = match is_a_differentiable(&spec, &points, tol, DEFAULT_NODES) {
            Ok(r) => (r.verdict, r.witness.as_ref().map(WitnessRecord::from)),
            Err(Error::NonHolomorphic(w)) => (false, Some(WitnessRecord::from(&w))),
            Err(e) => return Err(e),
        };
        charts.push(ChartFormFinding {
            chart: chart.name.clone(),
            samples: points.len(),
            a_differentiable: ok,
            witness,
        });
    }

    let alg = atlas.algebra();
    let mut overlaps = Vec::new();
    for t in atlas.transitions() {
        let points = overlap_samples(&t.overlap, &atlas.charts()[t.from].domain, samples, seed);
        let mut worst: f64 = 0.0;
        for p in &points {
            let q = t.map.eval(p)?;
            let fi = AntisymForm::from_coeffs(alg, atlas.n(), k, coefficients[t.from].eval(p)?.entries().to_vec())?;
            let fj = AntisymForm::from_coeffs(alg, atlas.n(), k, coefficients[t.to].eval(&q)?.entries().to_vec())?;
            worst = worst.max(transport_form(atlas, t.from, t.to, p, &fi)?.distance(&fj));
        }
        overlaps.push(OverlapFormFinding {
            from: atlas.charts()[t.from].name.clone(),
            to: atlas.charts()[t.to].name.clone(),
            samples: points.len(),
            worst_mismatch: worst,
            pass: worst <= tol,
        });
    }
    overlaps.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
    let pass = charts.iter().all(|c| c.a_differentiable) && overlaps.iter().all(|o| o.pass);
    Ok(GlobalFormReport {
        pass,
        degree: k,
        charts,
        overlaps,
    })
}
