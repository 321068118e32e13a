//! Root systems of finite type, inversion sets, the exponents predicted in
//! the smooth case, and Bruhat-interval Poincaré polynomials used to check
//! them.

mod bruhat;
mod element;
mod roots;
mod smooth;

pub use bruhat::{bruhat_poincare, factor_q_integers, BruhatPoincare};
pub use element::{inversion_set, WeylElement};
pub use roots::{positive_roots, CartanType, RootSystemData};
pub use smooth::{is_smooth_type_a, smooth_degrees, smooth_hilbert_series, Pad};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("unknown Cartan type {0}")]
    UnknownType(String),
    #[error("malformed element: {0}")]
    BadElement(String),
    #[error("word of length {length} is not reduced ({inversions} inversions)")]
    NotReduced { length: usize, inversions: usize },
    #[error("height counts decrease: exponent {height} would occur {multiplicity} times")]
    NegativeMultiplicity { height: i64, multiplicity: i64 },
    #[error("cannot pad {needed} exponents to {pad}")]
    PadTooSmall { needed: usize, pad: usize },
}
