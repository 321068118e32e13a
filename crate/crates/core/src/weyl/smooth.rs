use std::collections::BTreeMap;

use super::element::{inversion_set, WeylElement};
use super::roots::RootSystemData;
use super::WeylError;
use crate::groundring::{rat, HalfInt, LaurentSeries2};

/// How many entries the exponent list is padded to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pad {
    /// No padding.
    None,
    /// `rank`: the semisimple group.
    Sl,
    /// `rank + 1` in type A (polynomial ring in `n` variables); `rank` otherwise.
    Gl,
    Exactly(usize),
}

impl Pad {
    pub fn target(self, r: &RootSystemData) -> Option<usize> {
        match self {
            Pad::None => None,
            Pad::Sl => Some(r.rank()),
            Pad::Gl if r.cartan_type.family == 'A' => Some(r.rank() + 1),
            Pad::Gl => Some(r.rank()),
            Pad::Exactly(k) => Some(k),
        }
    }
}

/// The exponents `k`: `m ≥ 2` occurs `N_{m-1} - N_m` times, `N_h` counting
/// inversions of height `h`; then 1's up to the padding. Sorted.
pub fn smooth_degrees(
    w: &WeylElement,
    r: &RootSystemData,
    pad: Pad,
) -> Result<Vec<usize>, WeylError> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for h in inversion_set(w, r) {
        *counts.entry(h).or_default() += 1;
    }
    let count = |h: i64| counts.get(&h).copied().unwrap_or(0);
    let top = counts.keys().next_back().copied().unwrap_or(0);
    let mut k = Vec::new();
    for m in 2..=top + 1 {
        let mult = count(m - 1) - count(m);
        if mult < 0 {
            return Err(WeylError::NegativeMultiplicity {
                height: m,
                multiplicity: mult,
            });
        }
        k.extend(std::iter::repeat_n(m as usize, mult as usize));
    }
    if let Some(target) = pad.target(r) {
        if target < k.len() {
            return Err(WeylError::PadTooSmall {
                needed: k.len(),
                pad: target,
            });
        }
        k.splice(0..0, std::iter::repeat_n(1, target - k.len()));
    }
    Ok(k)
}

/// `Π_k (1 + a q^k) / (1 - q)` through q-degree `cutoff`.
pub fn smooth_hilbert_series(k: &[usize], cutoff: HalfInt) -> LaurentSeries2 {
    let mut out = LaurentSeries2::one().truncated(cutoff);
    for &e in k {
        let factor = LaurentSeries2::one().add(&LaurentSeries2::monomial(
            HalfInt::from_int(1),
            HalfInt::from_int(e as i64),
            rat(1),
        ));
        out = out.mul(&factor).truncated(cutoff);
    }
    out.mul(&LaurentSeries2::inverse_one_minus_q_pow(
        k.len() as u32,
        cutoff,
    ))
    .truncated(cutoff)
}

/// Avoidance of 3412 and 4231, by scanning every 4-element subsequence.
pub fn is_smooth_type_a(p: &[usize]) -> bool {
    let n = p.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (w, x, y, z) = (p[a], p[b], p[c], p[d]);
                    // 3412: y < z < w < x ; 4231: z < x < y < w
                    if (y < z && z < w && w < x) || (z < x && x < y && y < w) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{positive_roots, CartanType};

    fn system(t: &str) -> RootSystemData {
        positive_roots(CartanType::parse(t).unwrap())
    }

    #[test]
    fn degree_examples() {
        let a2 = system("A2");
        let w0 = WeylElement::longest(&a2);
        assert_eq!(
            smooth_degrees(&w0, &a2, Pad::Exactly(2)).unwrap(),
            vec![2, 3]
        );
        assert_eq!(smooth_degrees(&w0, &a2, Pad::Gl).unwrap(), vec![1, 2, 3]);
        let a1 = system("A1");
        assert_eq!(
            smooth_degrees(&WeylElement::longest(&a1), &a1, Pad::Sl).unwrap(),
            vec![2]
        );
        assert!(matches!(
            smooth_degrees(&w0, &a2, Pad::Exactly(1)),
            Err(WeylError::PadTooSmall { .. })
        ));
        let a3 = system("A3");
        let w = WeylElement::parse("2,4,1,3", &a3).unwrap();
        assert!(matches!(
            smooth_degrees(&w, &a3, Pad::None),
            Err(WeylError::NegativeMultiplicity { .. })
        ));
    }

    #[test]
    fn series_examples() {
        let h = HalfInt::from_int;
        let one = HalfInt::ZERO;
        let s = smooth_hilbert_series(&[1], h(6));
        for j in 0..=6 {
            assert_eq!(s.coeff(one, h(j)), rat(1));
            assert_eq!(s.coeff(h(1), h(j)), rat(if j >= 1 { 1 } else { 0 }));
        }
        let e = smooth_hilbert_series(&[], h(6));
        assert!(e.agrees_through(&LaurentSeries2::one(), h(6)));
        let two = smooth_hilbert_series(&[1, 2], h(4));
        // (1+aq)(1+aq^2)/(1-q)^2 at a^2 q^3: only a^2 q^3 * 1
        assert_eq!(two.coeff(h(2), h(3)), rat(1));
        assert_eq!(two.coeff(h(0), h(4)), rat(5));
    }

    #[test]
    fn patterns() {
        assert!(is_smooth_type_a(&[1, 2, 3, 4]));
        assert!(!is_smooth_type_a(&[3, 4, 1, 2]));
        assert!(!is_smooth_type_a(&[4, 2, 3, 1]));
        assert!(is_smooth_type_a(&[4, 3, 2, 1]));
        assert!(!is_smooth_type_a(&[1, 4, 5, 2, 3]));
    }
}
