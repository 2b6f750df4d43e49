//! Sample-based verification of an atlas.

use serde::Serialize;

use super::Atlas;
use crate::calculus::{is_a_differentiable, BlockWitness, DEFAULT_NODES};
use crate::domain::{unit_samples, DomainDescriptor};
use crate::error::{Error, HolomorphyWitness, Result};
use crate::multilinear::AVector;

/// Samples per overlap used when none is requested: 32 grid + 32 random.
pub const DEFAULT_SAMPLES: usize = 64;
/// Candidate points drawn per accepted triple-overlap sample before giving up.
const TRIPLE_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionFinding {
    pub name: String,
    pub from: String,
    pub to: String,
    pub samples: usize,
    /// Sample indices whose image is undefined or outside the target chart.
    pub image_failures: Vec<usize>,
    /// Sample indices whose image is outside the inverse's overlap.
    pub inverse_domain_failures: Vec<usize>,
    pub worst_a_linearity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_holomorphic: Option<WitnessRecord>,
    /// `max |inverse(forward(z)) - z| / max(1, |z|)`.
    pub worst_round_trip: f64,
    pub pass: bool,
}

/// A sample index with `(variable, character)` input and `(coordinate, character)` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub sample: usize,
    pub input: (usize, usize),
    pub output: (usize, usize),
    pub size: f64,
}

impl From<&BlockWitness> for WitnessRecord {
    fn from(w: &BlockWitness) -> Self {
        Self {
            sample: w.sample,
            input: w.input,
            output: w.output,
            size: w.value.norm(),
        }
    }
}

impl From<&HolomorphyWitness> for WitnessRecord {
    fn from(w: &HolomorphyWitness) -> Self {
        Self {
            sample: w.sample,
            input: w.input,
            output: w.output,
            size: w.defect,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleFinding {
    pub charts: [String; 3],
    pub samples: usize,
    pub worst_cocycle: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasReport {
    pub pass: bool,
    pub tol: f64,
    pub samples_per_overlap: usize,
    pub transitions: Vec<TransitionFinding>,
    pub triples: Vec<TripleFinding>,
}

/// Sample points of `overlap` that also lie in `chart_domain`.
pub fn overlap_samples(
    overlap: &DomainDescriptor,
    chart_domain: &DomainDescriptor,
    count: usize,
    seed: u64,
) -> Vec<AVector> {
    overlap
        .samples(count, seed)
        .into_iter()
        .filter(|z| chart_domain.contains(z))
        .collect()
}

fn relative_distance(a: &AVector, b: &AVector) -> f64 {
    a.distance(b) / b.norm().max(1.0)
}

pub fn validate_atlas(atlas: &Atlas, samples_per_overlap: usize, tol: f64, seed: u64) -> Result<AtlasReport> {
    let mut transitions = Vec::with_capacity(atlas.transitions().len());
    for t in atlas.transitions() {
        let from = &atlas.charts()[t.from];
        let to = &atlas.charts()[t.to];
        let inverse = atlas.inverse_of(t);
        let samples = overlap_samples(&t.overlap, &from.domain, samples_per_overlap, seed);
        if samples.is_empty() && samples_per_overlap > 0 {
            return Err(Error::StructuralError(format!(
                "transition {:?}: no overlap sample lies in chart {:?}",
                t.name, from.name
            )));
        }

        let mut finding = TransitionFinding {
            name: t.name.clone(),
            from: from.name.clone(),
            to: to.name.clone(),
            samples: samples.len(),
            image_failures: Vec::new(),
            inverse_domain_failures: Vec::new(),
            worst_a_linearity: 0.0,
            block_witness: None,
            non_holomorphic: None,
            worst_round_trip: 0.0,
            pass: true,
        };
        for (s, z) in samples.iter().enumerate() {
            let image = match t.map.eval(z) {
                Ok(w) if to.domain.contains(&w) => w,
                _ => {
                    finding.image_failures.push(s);
                    continue;
                }
            };
            if !inverse.overlap.contains(&image) {
                finding.inverse_domain_failures.push(s);
            }
            let back = inverse.map.eval(&image);
            let err = back.map_or(f64::INFINITY, |b| relative_distance(&b, z));
            finding.worst_round_trip = finding.worst_round_trip.max(err);
        }

        let spec = t.map.to_spec(atlas.algebra(), atlas.n(), &t.overlap)?;
        match is_a_differentiable(&spec, &samples, tol, DEFAULT_NODES) {
            Ok(report) => {
                finding.worst_a_linearity = report.worst_violation;
                finding.block_witness = report.witness.as_ref().map(WitnessRecord::from);
            }
            Err(Error::NonHolomorphic(w)) => {
                finding.worst_a_linearity = f64::INFINITY;
                finding.non_holomorphic = Some(WitnessRecord::from(&w));
            }
            Err(e) => return Err(e),
        }
        finding.pass = finding.image_failures.is_empty()
            && finding.inverse_domain_failures.is_empty()
            && finding.worst_a_linearity <= tol
            && finding.worst_round_trip <= tol;
        transitions.push(finding);
    }
    transitions.sort_by(|a, b| (&a.from, &a.to, &a.name).cmp(&(&b.from, &b.to, &b.name)));

    let mut triples = Vec::with_capacity(atlas.triples().len());
    for &triple in atlas.triples() {
        let points = triple_samples(atlas, triple, samples_per_overlap, seed)?;
        let [i, j, k] = triple;
        let (tij, tjk, tik) = (
            atlas.transition(i, j).expect("checked at construction"),
            atlas.transition(j, k).expect("checked at construction"),
            atlas.transition(i, k).expect("checked at construction"),
        );
        let mut worst: f64 = 0.0;
        for z in &points {
            let via = tjk.map.eval(&tij.map.eval(z)?)?;
            let direct = tik.map.eval(z)?;
            worst = worst.max(relative_distance(&via, &direct));
        }
        triples.push(TripleFinding {
            charts: triple.map(|c| atlas.charts()[c].name.clone()),
            samples: points.len(),
            worst_cocycle: worst,
            pass: worst <= tol,
        });
    }
    triples.sort_by(|a, b| a.charts.cmp(&b.charts));

    let pass = transitions.iter().all(|t| t.pass) && triples.iter().all(|t| t.pass);
    Ok(AtlasReport {
        pass,
        tol,
        samples_per_overlap,
        transitions,
        triples,
    })
}

/// Points of chart `i` lying in `U_i ∩ U_j ∩ U_k`, drawn by rejection from the `(i, j)` overlap.
pub fn triple_samples(atlas: &Atlas, [i, j, k]: [usize; 3], count: usize, seed: u64) -> Result<Vec<AVector>> {
    let tij = atlas.transition(i, j).expect("checked at construction");
    let tik = atlas.transition(i, k).expect("checked at construction");
    let tjk = atlas.transition(j, k).expect("checked at construction");
    let domain = &atlas.charts()[i].domain;
    let attempts = count * TRIPLE_ATTEMPTS;
    let mut out = Vec::with_capacity(count);
    for us in unit_samples(tij.overlap.sample_dim(), attempts, seed) {
        if out.len() == count {
            break;
        }
        let z = tij.overlap.point_from_unit(&us);
        if !domain.contains(&z) || !tik.overlap.contains(&z) {
            continue;
        }
        if tij.map.eval(&z).is_ok_and(|w| tjk.overlap.contains(&w)) {
            out.push(z);
        }
    }
    if out.is_empty() && count > 0 {
        return Err(Error::StructuralError(format!(
            "triple ({}, {}, {}) has no sample in its overlap",
            atlas.charts()[i].name,
            atlas.charts()[j].name,
            atlas.charts()[k].name
        )));
    }
    Ok(out)
}
