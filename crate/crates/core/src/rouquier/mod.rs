//! Braid complexes of bimodules, their simplification, and the triply
//! graded homology of braid closures.

mod braid;
mod complex;
mod eliminate;
mod homology;
mod normalize;

pub use braid::BraidWord;
pub use complex::{crossing_complex, tensor_complexes, BimoduleComplex};
pub use eliminate::gaussian_eliminate;
pub use homology::{
    braid_complex, euler_characteristic, kr_homology, kr_of_complex, TriplyGradedTable,
};
pub use normalize::{
    calibrate, calibration_family, kr_homology_normalized, normalize, AffineExponent, Normalization,
};

use crate::groundring::HalfInt;
use crate::koszul::KoszulError;
use crate::soergel::SoergelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouquierError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is not a generator of the braid group on {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("cannot read braid letter '{0}'")]
    BadLetter(String),
    #[error("variable counts differ: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("cutoff q^{cutoff} lies below the lowest degree q^{minimum} of the complex")]
    CutoffTooSmall { cutoff: HalfInt, minimum: HalfInt },
    #[error("normalization calibration failed: {0}")]
    Calibration(String),
    #[error(transparent)]
    Soergel(#[from] SoergelError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error("{0}")]
    Internal(String),
}
