//! Exact computation of Hochschild homology of Bott–Samelson bimodules and of
//! triply graded Khovanov–Rozansky homology of type-A braid closures.
//!
//! * [`groundring`]: polynomials over ℚ, Demazure operators, `(a, q)` series
//! * [`linalg`]: sparse exact linear algebra over ℚ
//! * [`soergel`]: bimodules as free left modules with right-action matrices
//! * [`koszul`]: Hochschild homology through the Koszul complex
//! * [`rouquier`]: braid complexes and link homology
//! * [`weyl`]: root systems, inversion sets, Bruhat intervals
//! * [`hecke`]: Hecke algebra trace and HOMFLY-PT polynomial
//! * [`cli`]: the command-line front end

pub mod cli;
pub mod groundring;
pub mod hecke;
pub mod koszul;
pub mod linalg;
pub mod rouquier;
pub mod soergel;
pub mod weyl;
