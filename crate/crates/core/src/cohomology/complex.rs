//! Truncated Čech complexes for the supported covers.

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rank::component_rank;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::manifold::{Atlas, TransitionMap};
use crate::multilinear::{wedge_rank, ALinearMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    SingleChart,
    P1TwoChart,
    PolydiskTwoCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheaf {
    /// Holomorphic functions.
    O,
    /// Holomorphic `k`-forms.
    Omega(usize),
}

impl Sheaf {
    pub fn degree(&self) -> usize {
        match *self {
            Sheaf::O => 0,
            Sheaf::Omega(k) => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverSpec {
    pub kind: CoverKind,
    m: usize,
    n: usize,
    /// Truncation degree `D`: chart sections are monomials of degree `0..=D` per variable.
    pub trunc: usize,
}

impl CoverSpec {
    pub fn new(kind: CoverKind, algebra: Algebra, n: usize, trunc: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedCover("covers need at least one variable".into()));
        }
        if kind == CoverKind::P1TwoChart && n != 1 {
            return Err(Error::UnsupportedCover(format!("the projective line has n = 1, got {n}")));
        }
        Ok(Self {
            kind,
            m: algebra.m(),
            n,
            trunc,
        })
    }

    /// A cover of the given kind over an atlas whose transitions match that kind.
    pub fn from_atlas(atlas: &Atlas, kind: CoverKind, trunc: usize) -> Result<Self> {
        let charts = atlas.charts().len();
        let inversions = atlas
            .transitions()
            .iter()
            .all(|t| matches!(&t.map, TransitionMap::MonomialInversion { variables } if variables.as_slice() == [0]));
        let identities = atlas.transitions().iter().all(|t| match &t.map {
            TransitionMap::Affine { matrix, translation } => {
                *matrix == ALinearMap::identity(atlas.algebra(), atlas.n())
                    && translation.entries().iter().all(|a| a.is_zero())
            }
            _ => false,
        });
        let consistent = match kind {
            CoverKind::SingleChart => charts == 1,
            CoverKind::P1TwoChart => charts == 2 && atlas.n() == 1 && inversions,
            CoverKind::PolydiskTwoCover => charts == 2 && identities,
        };
        if !consistent {
            return Err(Error::UnsupportedCover(format!(
                "atlas with {charts} charts does not match cover kind {kind:?}"
            )));
        }
        Self::new(kind, atlas.algebra(), atlas.n(), trunc)
    }

    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("cover algebra is nonempty")
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Monomials `z^a` with every exponent in `[lo, hi]`, tensored with the wedge basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionSpace {
    pub label: String,
    pub window: [i64; 2],
    pub n: usize,
    pub wedge: usize,
}

impl SectionSpace {
    pub fn rank(&self) -> usize {
        let width = (self.window[1] - self.window[0] + 1).max(0) as usize;
        width.pow(self.n as u32) * self.wedge
    }

    fn exponents(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|_| self.window[0]..=self.window[1])
            .multi_cartesian_product()
            .collect()
    }

    /// Basis index of `z^exps` times the `w`-th wedge generator, if inside the window.
    fn index(&self, exps: &[i64], w: usize) -> Option<usize> {
        let width = self.window[1] - self.window[0] + 1;
        let mut flat = 0i64;
        for &e in exps {
            if e < self.window[0] || e > self.window[1] {
                return None;
            }
            flat = flat * width + (e - self.window[0]);
        }
        Some(flat as usize * self.wedge + w)
    }
}

/// How chart sections restrict to the overlap, in overlap coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Restriction {
    Identity,
    /// `w^d (dw)^k |-> (-1)^k z^{-d-2k} (dz)^k` for `w = 1/z`, `n = 1`.
    Inversion { k: usize },
}

/// Cochain spaces `C^0..C^n` and coboundaries `δ_q : C^q -> C^{q+1}`.
#[derive(Debug, Clone)]
pub struct CechComplexData {
    m: usize,
    pub cover: CoverKind,
    pub sheaf_degree: usize,
    pub trunc: usize,
    /// Section spaces of the nerve simplices in each cochain degree.
    pub cochains: Vec<Vec<SectionSpace>>,
    pub coboundaries: Vec<ALinearMap>,
}

impl CechComplexData {
    pub fn algebra(&self) -> Algebra {
        Algebra::new(self.m).expect("complex algebra is nonempty")
    }

    /// Free `A`-module rank of each `C^q`.
    pub fn cochain_ranks(&self) -> Vec<usize> {
        self.cochains.iter().map(|spaces| spaces.iter().map(SectionSpace::rank).sum()).collect()
    }
}

pub fn build_cech_complex(cover: &CoverSpec, sheaf: Sheaf) -> Result<CechComplexData> {
    let alg = cover.algebra();
    let (n, d) = (cover.n, cover.trunc as i64);
    let k = sheaf.degree();
    let wedge = wedge_rank(n, k);
    let space = |label: &str, window: [i64; 2]| SectionSpace {
        label: label.into(),
        window,
        n,
        wedge,
    };

    let (charts, overlap, restrictions) = match cover.kind {
        CoverKind::SingleChart => (vec![space("U0", [0, d])], None, vec![]),
        CoverKind::P1TwoChart => {
            if k >= 1 && cover.trunc < k + 1 {
                return Err(Error::WindowTooSmall(format!(
                    "projective-line cover with {k}-forms needs D >= {}, got {}",
                    k + 1,
                    cover.trunc
                )));
            }
            let shift = 2 * k as i64;
            (
                vec![space("U0", [0, d]), space("U1", [0, d])],
                Some(space("U0∩U1", [-(d + shift), d])),
                vec![Restriction::Identity, Restriction::Inversion { k }],
            )
        }
        CoverKind::PolydiskTwoCover => (
            vec![space("P0", [0, d]), space("P1", [0, d])],
            Some(space("P0∩P1", [0, d])),
            vec![Restriction::Identity, Restriction::Identity],
        ),
    };

    let mut cochains = vec![Vec::new(); n + 1];
    cochains[0] = charts.clone();
    if let Some(o) = &overlap {
        cochains[1] = vec![o.clone()];
    }
    let ranks: Vec<usize> = cochains.iter().map(|s| s.iter().map(SectionSpace::rank).sum()).collect();

    let mut coboundaries: Vec<ALinearMap> = (0..n).map(|q| ALinearMap::zeros(alg, ranks[q + 1], ranks[q])).collect();
    if let Some(o) = &overlap {
        // (δc)_{01} = c_1|_{01} - c_0|_{01}
        let delta = &mut coboundaries[0];
        let mut col = 0;
        for (i, (chart, restriction)) in charts.iter().zip(&restrictions).enumerate() {
            let sign = if i == 1 { 1.0 } else { -1.0 };
            for exps in chart.exponents() {
                for w in 0..wedge {
                    let (target, coeff) = match *restriction {
                        Restriction::Identity => (exps.clone(), 1.0),
                        Restriction::Inversion { k } => (
                            vec![-exps[0] - 2 * k as i64],
                            if k % 2 == 0 { 1.0 } else { -1.0 },
                        ),
                    };
                    let row = o.index(&target, w).ok_or_else(|| {
                        Error::WindowTooSmall(format!(
                            "restriction of z^{exps:?} from {} leaves the overlap window {:?}",
                            chart.label, o.window
                        ))
                    })?;
                    let entry = delta.get(row, col) + &alg.scalar(Complex64::new(sign * coeff, 0.0));
                    delta.set(row, col, entry);
                    col += 1;
                }
            }
        }
    }

    let complex = CechComplexData {
        m: alg.m(),
        cover: cover.kind,
        sheaf_degree: k,
        trunc: cover.trunc,
        cochains,
        coboundaries,
    };
    check_nilpotent(&complex)?;
    Ok(complex)
}

fn check_nilpotent(complex: &CechComplexData) -> Result<()> {
    for (q, pair) in complex.coboundaries.windows(2).enumerate() {
        for j in 0..complex.m {
            let prod: DMatrix<Complex64> = pair[1].component_matrix(j) * pair[0].component_matrix(j);
            if prod.iter().any(|v| *v != Complex64::new(0.0, 0.0)) {
                return Err(Error::CoboundaryNotNilpotent(format!(
                    "δ_{} ∘ δ_{q} is nonzero in component {j}",
                    q + 1
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Windows {
    pub charts: Vec<[i64; 2]>,
    pub overlaps: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyReport {
    /// Common rank of `H^q` over all components, when they agree.
    pub ranks: Option<Vec<usize>>,
    pub per_component: Vec<Vec<usize>>,
    pub cochain_ranks: Vec<usize>,
    /// `Σ (-1)^q rank C^q`.
    pub euler: i64,
    /// Whether `Σ (-1)^q dim H^q` equals `euler` in every component.
    pub euler_consistent: bool,
    /// Whether every rank came from exact integer elimination.
    pub exact: bool,
    pub windows: Windows,
}

pub fn cohomology_ranks(complex: &CechComplexData) -> Result<CohomologyReport> {
    check_nilpotent(complex)?;
    let dims = complex.cochain_ranks();
    let mut exact = true;
    let mut per_component = Vec::with_capacity(complex.m);
    for j in 0..complex.m {
        let mut image_ranks = Vec::with_capacity(complex.coboundaries.len());
        for delta in &complex.coboundaries {
            let (r, was_exact) = component_rank(&delta.component_matrix(j), j)?;
            exact &= was_exact;
            image_ranks.push(r);
        }
        let h: Vec<usize> = (0..dims.len())
            .map(|q| {
                let out = image_ranks.get(q).copied().unwrap_or(0);
                let inc = if q == 0 { 0 } else { image_ranks[q - 1] };
                dims[q] - out - inc
            })
            .collect();
        per_component.push(h);
    }
    let alternating = |v: &[usize]| v.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
    let euler = alternating(&dims);
    let euler_consistent = per_component.iter().all(|h| alternating(h) == euler);
    let ranks = per_component.iter().all_equal().then(|| per_component[0].clone());
    let windows = Windows {
        charts: complex.cochains[0].iter().map(|s| s.window).collect(),
        overlaps: complex.cochains.get(1).map_or_else(Vec::new, |o| o.iter().map(|s| s.window).collect()),
    };
    Ok(CohomologyReport {
        ranks,
        per_component,
        cochain_ranks: dims,
        euler,
        euler_consistent,
        exact,
        windows,
    })
}

pub const VANISHING_NOTE: &str =
    "truncated two-set cover of a polydisk; vanishing here is evidence, not a proof, for the full sheaf";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingDemo {
    pub n: usize,
    pub trunc: usize,
    pub ranks: Vec<usize>,
    pub higher_vanish: bool,
    pub note: &'static str,
}

/// `H^q` of the truncated structure sheaf on a two-set cover of a polydisk in `C^n`.
pub fn polydisk_vanishing_demo(trunc: usize, n: usize) -> Result<VanishingDemo> {
    if n == 0 || n > 3 || trunc > 8 {
        return Err(Error::UnsupportedCover(format!(
            "the polydisk demo runs for 1 <= n <= 3 and D <= 8, got n = {n}, D = {trunc}"
        )));
    }
    let cover = CoverSpec::new(CoverKind::PolydiskTwoCover, Algebra::new(1)?, n, trunc)?;
    let report = cohomology_ranks(&build_cech_complex(&cover, Sheaf::O)?)?;
    let ranks = report.per_component[0].clone();
    Ok(VanishingDemo {
        n,
        trunc,
        higher_vanish: ranks[1..].iter().all(|&r| r == 0),
        ranks,
        note: VANISHING_NOTE,
    })
}
