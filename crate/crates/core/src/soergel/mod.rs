//! Bott–Samelson bimodules as free left `S`-modules with right-action
//! matrices, their tensor products, and spaces of bimodule maps.

mod bimodule;
mod hom;
mod matrix;

pub use bimodule::{
    id_tensor_matrix, matrix_tensor_id, SoergelBimodule, ValidationReport, Violation,
};
pub use hom::{hom_space, BimoduleMap};
pub use matrix::{MatrixEvaluator, PolyMatrix};

pub(crate) use bimodule::monomials_of_topological_degree;

use crate::groundring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SoergelError {
    #[error("a bimodule needs at least one variable")]
    NoVariables,
    #[error("simple index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("variable counts differ: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("maps do not compose")]
    NotComposable,
    #[error("invalid bimodule: {0}")]
    Invalid(Violation),
    #[error("bad bimodule JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
