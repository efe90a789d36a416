//! Topological Hochschild homology of quotients `R/I` relative to `R`.

mod bokstedt;
mod chart;
mod extension;
mod homology;
mod resolve;

pub use chart::{
    e2_chart_named, e2_cohomology, e2_homology, gamma_name, module_action, q_name, Bidegree, Chart,
    ChartEntry, Variant,
};

pub use bokstedt::{
    bokstedt_e2, bokstedt_run, BokstedtEntry, BokstedtGenerator, BokstedtState, GenKind, GenName,
    MAX_DEGREE,
};
pub use extension::{
    apply_structure_change, bimodule_extension_change, classify, completed_ring_spec,
    default_q_order, e1_extension_system, e1_spec, extension_from_height1, jacobian_invertible,
    kn_conjectural_terms, kn_extension_system, kn_spec, BimoduleTerm, ExtensionJson,
    ExtensionSystem, HigherTerm, UnitClass, CONJECTURAL,
};
pub use homology::{
    default_filtration, pair_relation, resolve_homology, DegreeShape, ResolvedHomology, Tower,
    TowerFamily,
};
pub use resolve::{
    resolve_cohomology, resolve_with_stability, EliminationStep, ResolutionKind, ResolvedCohomology,
};
