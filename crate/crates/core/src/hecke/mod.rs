//! Hecke algebra of type A, its Ocneanu trace, and the HOMFLY-PT polynomial
//! of braid closures computed two independent ways.
//!
//! Convention: `v P(L+) - v^{-1} P(L-) = z P(L0)` with `P(unknot) = 1`, where
//! a positive letter is a positive crossing. Polynomials print in `v` and `z`.

mod algebra;
mod dictionary;
mod laurent;
mod skein;

pub use algebra::{unlink_factor, HeckeAlgebra, HeckeElement, Perm, Trace, TraceValue};
pub use dictionary::{Dictionary, Exponents, Term};
pub use laurent::Laurent2;
pub use skein::SkeinEvaluator;

use crate::groundring::rat;
use crate::rouquier::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("generator {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
}

/// HOMFLY-PT polynomial of the closure of `b` through the trace:
/// `v^{-e} Σ_k v^k D^{n-1-k} p_k` where `tr(b) = Σ_k p_k c^k` and `D` is
/// [`unlink_factor`].
pub fn homfly(b: &BraidWord) -> Laurent2 {
    let n = b.strands();
    let algebra = HeckeAlgebra::skein(n);
    let x = algebra
        .word(b.letters())
        .expect("braid letters are in range");
    let trace = Trace::new(&algebra).of(&x);
    let d = unlink_factor();
    let mut out = Laurent2::zero();
    for (k, p) in trace.iter().enumerate() {
        let weight = &Laurent2::monomial(k as i64, 0, rat(1)) * &d.pow((n - 1 - k) as u32);
        out = &out + &(p * &weight);
    }
    &out * &Laurent2::monomial(-b.writhe(), 0, rat(1))
}

/// The same polynomial by the skein recursion on the closed diagram.
pub fn homfly_skein(b: &BraidWord) -> Laurent2 {
    SkeinEvaluator::new(b.strands()).evaluate(b.letters())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(n: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn unknots() {
        assert_eq!(homfly(&braid(1, &[])), Laurent2::one());
        assert_eq!(homfly(&braid(2, &[1])), Laurent2::one());
        assert_eq!(homfly(&braid(2, &[-1])), Laurent2::one());
        assert_eq!(homfly(&braid(3, &[1, -2])), Laurent2::one());
    }

    #[test]
    fn routes_agree() {
        for (n, w) in [
            (2, vec![1, 1, 1]),
            (2, vec![1, 1]),
            (3, vec![1, -2, 1, -2]),
            (3, vec![1, 1, 2, -1, 2]),
            (4, vec![1, 2, 3, -2, 1, 3, 3]),
            (3, vec![]),
        ] {
            let b = braid(n, &w);
            assert_eq!(homfly(&b), homfly_skein(&b), "{b}");
        }
    }

    #[test]
    fn trefoil_value() {
        assert_eq!(
            homfly(&braid(2, &[1, 1, 1])).to_string(),
            "v^-2*z^2 + 2*v^-2 - v^-4"
        );
    }
}
