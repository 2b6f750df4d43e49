//! Truncated Čech cohomology of `O` and `Ω^k` over finite covers.

mod complex;
mod rank;

pub use complex::{
    build_cech_complex, cohomology_ranks, polydisk_vanishing_demo, CechComplexData, CohomologyReport, CoverKind,
    CoverSpec, SectionSpace, Sheaf, VanishingDemo, Windows, VANISHING_NOTE,
};
pub use rank::{all_integer, component_rank, exact_rank, svd_rank, SVD_RANK_TOL};
