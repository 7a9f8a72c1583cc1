//! Exact arithmetic layer: Gaussian rational scalars, variable tables, and
//! sparse polynomials with the conjugation involution.

pub mod gauss;
pub mod poly;
pub mod vars;

pub use gauss::GaussRat;
pub use poly::{imag_unit, rat_const, Monomial, Poly};
pub use vars::{conj_name, same_table, VarId, VarKind, VarTable};
