//! Finite-dimensional laboratory for regularized Fredholm determinants,
//! determinant lines over a truncated Grassmannian, fermionic Fock-space
//! Schwinger terms, and phase central extensions of finite groupoids together
//! with the cohomology that classifies them.
//!
//! The layers build on each other:
//!
//! - [`operator`]: dense complex matrices, polarizations `C^n = H₊ ⊕ H₋`,
//!   Schatten norms and linear algebra.
//! - [`regdet`]: `det_p(1+A)`, its multiplicativity anomaly `γ_p` and the
//!   cocycle `ω_p`.
//! - [`grassmann`]: frames, the line `Det_p` with its twisted right action and
//!   the α consistency ratio.
//! - [`fock`]: exact CAR representation, `dΓ`, Schwinger terms, Bogoliubov
//!   implementers and the vacuum-line gerbe.
//! - [`groupoid`]: finite groups and groupoids, `μ_N` 2-cocycles, central
//!   extensions and gluing chart-local data into a global extension.
//! - [`cohomology`]: nerves, coboundaries and `H^p(·; Z_N)` via Smith normal
//!   form over `Z_N`.
//! - [`harness`]: seeded invariant batteries and the file-level commands behind
//!   the `anomaly-lab` binary.
//!
//! ```
//! use anomaly_lab::operator::{CMatrix, C64};
//! use anomaly_lab::regdet::det_p;
//!
//! let a = CMatrix::from_real_diagonal(&[0.5, 0.0]);
//! let d = det_p(&a, 2).unwrap();
//! assert!((d.value - C64::new(1.5 * (-0.5f64).exp(), 0.0)).norm() < 1e-14);
//! ```

pub mod cohomology;
pub mod error;
pub mod fock;
pub mod grassmann;
pub mod groupoid;
pub mod harness;
pub mod operator;
pub mod random;
pub mod regdet;

pub use error::{Error, Result};
