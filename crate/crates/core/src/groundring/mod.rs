//! Exact graded polynomial arithmetic over ℚ, Demazure operators, and the
//! `(a, q)` series type used for Hilbert series.

mod halfint;
mod poly;
mod rational;
mod series;

pub use halfint::{HalfInt, ParseHalfIntError};
pub use poly::{Monomial, Poly};
pub use rational::{parse_rat, rat, rat_frac, Rat};
pub use series::LaurentSeries2;

pub(crate) use rational::write_term;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("variable counts differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("simple index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
