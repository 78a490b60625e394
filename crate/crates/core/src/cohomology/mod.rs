//! Nerves of finite groupoids and their cohomology with `Z_N` coefficients.
//!
//! Cochain complexes are assembled from the face maps of the nerve and
//! reduced by Smith normal form over `Z_N`, so groups come out as lists of
//! invariant factors and classes as coordinates in the matching basis.

mod groups;
mod nerve;
mod smith;

pub use groups::{
    coboundary, coboundary_matrix, cocycle_class, cohomology_group, cohomology_of_nerve, extension_class,
    same_class, Cochain, CohomologyClass, CohomologyGroup,
};
pub use nerve::{Nerve, MAX_CELLS, MAX_LEVEL};
pub use smith::{smith_mod, ModMatrix, SmithForm};
