//! Exact computations for finite-dimensional 3-Hom-Lie algebras, coalgebras
//! and local cocycle bialgebras given by structure constants.
//!
//! All algebraic checks are carried out over exact rationals (optionally
//! Gaussian rationals) and report the maximal residual over basis tuples, so
//! "passes" always means "holds identically". Floating point appears only in
//! [`solver`], where it proposes candidates that are then verified exactly.
//!
//! Conventions: slot indices of tensors are 1-based; basis indices in the
//! Rust API are 0-based (the JSON documents use 1-based basis indices); a
//! linear map is stored as a matrix whose column `j` is the image of `e_j`;
//! an element `r ∈ L⊗L` is the matrix `R` with `r = Σ R[a][b] e_a⊗e_b`.

pub mod bialgebra;
pub mod bundled;
pub mod coalgebra;
pub mod document;
pub mod error;
pub mod homlie;
pub mod matrix;
pub mod repcoh;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod tensor;
pub mod verify;
pub mod ybe;

pub use error::{Error, Result};
pub use homlie::{HomTriAlgebra, TriBracket, TwistMap};
pub use matrix::{Matrix, Vector};
pub use report::{CheckEntry, Residual, VerificationReport};
pub use scalar::Scalar;
pub use tensor::Tensor;
pub use ybe::RMatrix;
