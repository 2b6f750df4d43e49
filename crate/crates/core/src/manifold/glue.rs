//! Per-component gluing of one-variable atlases and boundary-accumulation
//! detection of non-separated point pairs.
//!
//! Each algebra component of an `n = 1` atlas with affine or inversion
//! transitions is a family of plane regions glued by one-variable maps. For
//! every chain of at most two gluings from chart `a` to chart `b`, boundary
//! points `p` of the chain's domain are approached along a dyadic sequence
//! `p_s` from inside; when `p` lies in chart `a`, the limit `q` of the glued
//! partners lies in chart `b`, and no chain identifies `p` with `q`, the pair
//! is reported as a candidate non-Hausdorff pair. The result is sampled
//! evidence only.

use num_complex::Complex64;
use serde::Serialize;

use super::{Atlas, TransitionMap};
use crate::domain::Region;
use crate::error::{Error, Result};

/// Dyadic approach steps toward each boundary point.
pub const APPROACH_STEPS: usize = 10;
/// Boundary points sampled per boundary curve.
pub const BOUNDARY_POINTS: usize = 16;
const FIRST_STEP: f64 = 0.25;
const IDENTIFY_TOL: f64 = 1e-12;

pub const GLUE_NOTE: &str = "sampled boundary-approach evidence; not a decision about separation";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OneVarMap {
    /// `z |-> scale z + shift`.
    Affine { scale: Complex64, shift: Complex64 },
    /// `z |-> 1 / z`.
    Inversion,
}

impl OneVarMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match *self {
            OneVarMap::Affine { scale, shift } => scale * z + shift,
            OneVarMap::Inversion => z.inv(),
        }
    }

    fn preimage(&self, w: Complex64) -> Complex64 {
        match *self {
            OneVarMap::Affine { scale, shift } => (w - shift) / scale,
            OneVarMap::Inversion => w.inv(),
        }
    }

    /// Pulls a direction at `w` back to the preimage point.
    fn pull_direction(&self, w: Complex64, dir: Complex64) -> Complex64 {
        match *self {
            OneVarMap::Affine { scale, .. } => dir / scale,
            OneVarMap::Inversion => -dir / (w * w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlueChart {
    pub name: String,
    pub region: Region,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gluing {
    pub transition: String,
    pub from: String,
    pub to: String,
    /// Projection of the overlap in the source chart.
    pub source: Region,
    /// Projection of the inverse transition's overlap in the target chart.
    pub target: Region,
    pub map: OneVarMap,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlueCandidate {
    pub charts: (String, String),
    /// Transition names along the gluing chain.
    pub via: Vec<String>,
    pub p: Complex64,
    pub q: Complex64,
    /// `|g(p_s) - q|` along the approach sequence.
    pub approach: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentGlue {
    pub component: usize,
    pub charts: Vec<GlueChart>,
    pub gluings: Vec<Gluing>,
    pub candidates: Vec<GlueCandidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlueReport {
    pub note: &'static str,
    pub components: Vec<ComponentGlue>,
}

/// A chain of gluings with its domain in the first chart's coordinate.
struct Chain<'a> {
    steps: Vec<&'a Gluing>,
}

impl Chain<'_> {
    fn from(&self) -> &str {
        &self.steps[0].from
    }

    fn to(&self) -> &str {
        &self.steps[self.steps.len() - 1].to
    }

    /// Image of `z` if every step's source region contains the running point.
    fn apply(&self, z: Complex64) -> Option<Complex64> {
        self.steps.iter().try_fold(z, |w, g| g.source.contains(w).then(|| g.map.apply(w)))
    }

    fn apply_unchecked(&self, z: Complex64) -> Complex64 {
        self.steps.iter().fold(z, |w, g| g.map.apply(w))
    }

    /// Boundary points of the chain domain with an inward direction.
    fn boundary(&self) -> Vec<(Complex64, Complex64)> {
        let mut out = Vec::new();
        for (depth, g) in self.steps.iter().enumerate() {
            for (mut p, mut dir) in g.source.boundary_points(BOUNDARY_POINTS) {
                for prev in self.steps[..depth].iter().rev() {
                    let pre = prev.map.preimage(p);
                    dir = prev.map.pull_direction(p, dir);
                    p = pre;
                }
                if p.is_finite() && dir.norm() > 0.0 {
                    out.push((p, dir / dir.norm()));
                }
            }
        }
        out
    }
}

fn project(map: &TransitionMap, j: usize) -> Result<OneVarMap> {
    match map {
        TransitionMap::Affine { matrix, translation } => Ok(OneVarMap::Affine {
            scale: matrix.get(0, 0).component(j),
            shift: translation.coord(0, j),
        }),
        TransitionMap::MonomialInversion { variables } if variables.as_slice() == [0] => Ok(OneVarMap::Inversion),
        TransitionMap::MonomialInversion { .. } => Ok(OneVarMap::Affine {
            scale: Complex64::new(1.0, 0.0),
            shift: Complex64::new(0.0, 0.0),
        }),
        _ => Err(Error::UnsupportedTransition(
            "glue report needs affine or monomial-inversion transitions".into(),
        )),
    }
}

pub fn componentwise_glue_report(atlas: &Atlas) -> Result<GlueReport> {
    if atlas.n() != 1 {
        return Err(Error::UnsupportedTransition(format!(
            "glue report supports one-variable atlases, got n = {}",
            atlas.n()
        )));
    }
    let components = (0..atlas.algebra().m())
        .map(|j| component_glue(atlas, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(GlueReport {
        note: GLUE_NOTE,
        components,
    })
}

fn component_glue(atlas: &Atlas, j: usize) -> Result<ComponentGlue> {
    let charts: Vec<GlueChart> = atlas
        .charts()
        .iter()
        .map(|c| GlueChart {
            name: c.name.clone(),
            region: *c.domain.region(0, j),
        })
        .collect();
    let mut gluings = atlas
        .transitions()
        .iter()
        .map(|t| {
            Ok(Gluing {
                transition: t.name.clone(),
                from: charts[t.from].name.clone(),
                to: charts[t.to].name.clone(),
                source: *t.overlap.region(0, j),
                target: *atlas.inverse_of(t).overlap.region(0, j),
                map: project(&t.map, j)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    gluings.sort_by(|a, b| (&a.from, &a.to, &a.transition).cmp(&(&b.from, &b.to, &b.transition)));

    let mut chains: Vec<Chain> = gluings.iter().map(|g| Chain { steps: vec![g] }).collect();
    for a in &gluings {
        for b in gluings.iter().filter(|b| b.from == a.to && b.to != a.from) {
            chains.push(Chain { steps: vec![a, b] });
        }
    }
    let region_of = |name: &str| charts.iter().find(|c| c.name == name).map(|c| c.region);

    let mut candidates = Vec::new();
    for chain in &chains {
        let (Some(ra), Some(rb)) = (region_of(chain.from()), region_of(chain.to())) else {
            continue;
        };
        for (p, dir) in chain.boundary() {
            if !ra.contains(p) || chain.apply(p).is_some() {
                continue;
            }
            let seq: Vec<Complex64> = (0..APPROACH_STEPS)
                .map(|s| p + dir * (FIRST_STEP / (1u64 << s) as f64))
                .collect();
            let Some(partners) = seq.iter().map(|&z| chain.apply(z)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let q = chain.apply_unchecked(p);
            if !q.is_finite() || !rb.contains(q) {
                continue;
            }
            let approach: Vec<f64> = partners.iter().map(|w| (w - q).norm()).collect();
            if !approach.windows(2).all(|w| w[1] <= w[0]) {
                continue;
            }
            let identified = chains
                .iter()
                .filter(|c| c.from() == chain.from() && c.to() == chain.to())
                .any(|c| c.apply(p).is_some_and(|w| (w - q).norm() <= IDENTIFY_TOL));
            if identified {
                continue;
            }
            candidates.push(GlueCandidate {
                charts: (chain.from().to_string(), chain.to().to_string()),
                via: chain.steps.iter().map(|g| g.transition.clone()).collect(),
                p,
                q,
                approach,
            });
        }
    }
    candidates.sort_by(|a, b| {
        (&a.charts, &a.via)
            .cmp(&(&b.charts, &b.via))
            .then(a.p.re.total_cmp(&b.p.re))
            .then(a.p.im.total_cmp(&b.p.im))
    });
    // consecutive steps of a chain can share a boundary line
    candidates.dedup_by(|a, b| a.charts == b.charts && a.via == b.via && a.p == b.p);
    Ok(ComponentGlue {
        component: j,
        charts,
        gluings,
        candidates,
    })
}
