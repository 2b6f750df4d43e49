//! Atlases over `A`, their verification, and bundle transitions.

mod atlas;
mod bundle;
mod examples;
mod glue;
mod validate;

pub use atlas::{Atlas, Chart, Transition, TransitionMap};
pub use bundle::{
    bundle_cocycles, check_global_form, cotangent_transition, tangent_transition, transport_form, ChartFormFinding,
    CocycleFinding, GlobalFormReport, OverlapFormFinding,
};
pub use examples::{build_manifold_n, build_projective_line};
pub use glue::{
    componentwise_glue_report, ComponentGlue, GlueCandidate, GlueChart, GlueReport, Gluing, OneVarMap, APPROACH_STEPS,
    BOUNDARY_POINTS, GLUE_NOTE,
};
pub use validate::{
    overlap_samples, triple_samples, validate_atlas, AtlasReport, TransitionFinding, TripleFinding, WitnessRecord,
    DEFAULT_SAMPLES,
};

#[cfg(test)]
mod tests;
