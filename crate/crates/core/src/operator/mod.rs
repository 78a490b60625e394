//! Dense complex operators, polarizations, block decompositions and norms.

mod json;
mod linalg;
mod matrix;
mod norms;
mod polarization;

pub use json::{matrix_from_json, matrix_to_json, MatrixJson};
pub use linalg::{
    column_projector, determinant, hermitian_eigensystem, hermitian_violation, inverse,
    matrix_exponential, rank, singular_values, spectral_radius, unitarity_violation, Eigensystem,
    HERMITIAN_TOL,
};
pub use matrix::{inner_product, vector_norm, CMatrix, C64};
pub use norms::{mr_distance, mr_norm_report, operator_norm, schatten_norm, weak_quasi_norm, NormReport};
pub use polarization::{block_decompose, sign_commutator, BlockOperator, Polarization};
