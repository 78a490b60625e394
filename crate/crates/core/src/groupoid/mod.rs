//! Finite groups and groupoids, phase 2-cocycles, their central extensions,
//! and the assembly of a global extension of an action groupoid from
//! chart-local data.
//!
//! Composability follows `s(x) = t(y)` for the pair `(x, y)`. For an action
//! groupoid this forces `s(x,g) = x·g` and `t(x,g) = x`, so that
//! `(x,g)·(x·g,g') = (x, gg')`.

mod cocycle;
mod eta;
mod extension;
mod glue;
mod group;
#[allow(clippy::module_inception)]
mod groupoid;
mod json;

pub use cocycle::{
    chord, coboundary_twist, cocycle_check, ContinuousCocycle, CyclicCocycle, PhaseCocycle,
    CONTINUOUS_TOL,
};
pub use eta::{eta_from_omega, MAX_STEP, MIN_STEP};
pub use extension::{
    central_extend, central_extend_continuous, centrality_check, extension_diagnostics,
    CentralExtension, ContinuousExtension,
};
pub use glue::{glue_local_data, refine_global_cocycle, LocalExtensionData, OmegaKey, TransitionKey};
pub use group::{FiniteGroup, RightAction};
pub use groupoid::{
    action_arrow, action_groupoid, axioms_check, Axiom, AxiomViolation, FiniteGroupoid, MAX_ARROWS,
};
pub use json::{ArrowJson, CocycleJson, CoverJson, GroupoidJson, ObjectRef};
