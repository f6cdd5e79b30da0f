//! Pauli and Clifford groups over arbitrary finite abelian groups.
//!
//! Exact arithmetic lives in `i64` and rational phases; the dense oracle in
//! [`sim`] is generic over the float type.

pub mod arith;
pub mod canonical;
pub mod elim;
pub mod error;
pub mod forms;
pub mod group;
pub mod hom;
pub mod phase;
pub mod snf;
pub mod pauli;
pub mod clifford;
pub mod symplectic;
pub mod sim;
pub mod protocols;
pub mod format;
pub mod suite;

pub use error::{Error, Result};
pub use group::{Group, GroupElement};
pub use phase::Phase;

pub type DenseStateF64 = sim::DenseState<f64>;
pub type DenseStateF32 = sim::DenseState<f32>;
pub type DenseMatrixF64 = sim::DenseMatrix<f64>;
pub type DenseMatrixF32 = sim::DenseMatrix<f32>;
