//! Numerical `A`-differentiation and `A`-differentiability detection.

mod cauchy;
mod detect;
mod locality;
mod map;

pub use cauchy::{
    adaptive_directional_derivative, cauchy_directional_derivative, complex_jacobian, frechet_matrix,
    second_derivative, ComplexJacobian, DEFAULT_NODES, DOUBLING_TOL, HOLOMORPHY_TOL, MAX_NODES, MAX_RADIUS,
};
pub use detect::{is_a_differentiable, ADiffReport, BlockWitness, DEFAULT_TOL};
pub use locality::{check_pointwise_locality, LocalityOutcome, LocalityReport};
pub use map::{
    decompose_map, recompose_map, BlackboxFn, CoordFactor, CoordMapFile, CoordTerm, CoordinatePolyMap,
    HolomorphicMapSpec, MapFile, MapKind, PolyMap, PolyMapFile, PolyTerm,
};
