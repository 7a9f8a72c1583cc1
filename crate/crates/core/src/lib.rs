//! Exact symbolic engine for graded automorphism algebras of rigid
//! real-analytic model hypersurfaces in low-dimensional complex space.
//!
//! Everything is computed over the Gaussian rationals: polynomial algebra
//! with a conjugation involution, weighted gradings, model-surface fixtures,
//! homological operators derived by symbolic linearization of the tangency
//! equation, and exact sparse kernels on jet windows.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod flows;
pub mod grading;
pub mod kernel;
pub mod surfaces;
pub mod tangency;
pub mod verify;

pub use algebra::{GaussRat, Monomial, Poly, VarId, VarTable};
pub use error::{Error, Result};
