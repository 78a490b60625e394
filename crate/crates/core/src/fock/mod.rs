//! Exact fermionic Fock space on `m` modes.
//!
//! States are indexed by occupation bitmasks (bit `i` ↔ mode `i`) in
//! ascending order. The creator on mode `i` flips bit `i` and carries the sign
//! `(-1)^{#occupied modes below i}`, so every generator matrix has entries in
//! `{0, ±1}` and the anticommutation relations hold exactly.
//!
//! The vacuum of a polarization `C^m = H+ ⊕ H-` is the Dirac sea: every `H-`
//! mode occupied, every `H+` mode empty, so `ψ*(u)` kills it for `u ∈ H-` and
//! `ψ(v)` kills it for `v ∈ H+`.

mod quantize;
mod sparse;
mod space;
mod vacuum;

pub use quantize::{
    bogoliubov_implement, conjugation_defect, d_gamma, schwinger_over_backgrounds,
    schwinger_term, SchwingerTerm, DGAMMA_TOL, SCALARNESS_TOL,
};
pub use space::{build_car, vacuum, FockOperator, FockSpace, FockVector, MAX_MODES};
pub use vacuum::{
    gerbe_triple_check, line_transition, triple_witness, vacuum_at_level, vacuum_line,
    SpectralBackground, VacuumLine, LEVEL_MARGIN, UNITARY_TOL,
};
