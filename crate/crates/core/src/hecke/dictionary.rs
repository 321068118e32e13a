use serde::Deserialize;

use super::laurent::Laurent2;
use crate::groundring::{rat, HalfInt, LaurentSeries2};

const FROZEN: &str = include_str!("../../config/dictionary.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Exponents {
    pub a: HalfInt,
    pub q: HalfInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Term {
    pub a: HalfInt,
    pub q: HalfInt,
    pub coefficient: i64,
}

/// How `v` and `z` are expressed in `a` and `q`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Dictionary {
    pub v: Exponents,
    pub z: Vec<Term>,
}

impl Dictionary {
    /// The table shipped in `config/dictionary.toml`.
    pub fn frozen() -> Self {
        toml::from_str(FROZEN).expect("shipped dictionary parses")
    }

    /// Dictionary for a Markov shift multiplying by `a^α q^β` per unit of
    /// writhe: `v` undoes one crossing's shift and `z = q^{-1/2} - q^{1/2}`
    /// is the difference of the two crossing complexes.
    pub fn from_writhe_shift(a: HalfInt, q: HalfInt) -> Self {
        let half = HalfInt::from_twice(1);
        Dictionary {
            v: Exponents { a: -a, q: -q },
            z: vec![
                Term {
                    a: HalfInt::ZERO,
                    q: -half,
                    coefficient: 1,
                },
                Term {
                    a: HalfInt::ZERO,
                    q: half,
                    coefficient: -1,
                },
            ],
        }
    }

    fn z_series(&self) -> LaurentSeries2 {
        self.z.iter().fold(LaurentSeries2::zero(), |acc, t| {
            acc.add(&LaurentSeries2::monomial(t.a, t.q, rat(t.coefficient)))
        })
    }

    /// Euler characteristic predicted from `p`, exact through q-degree `cutoff`.
    pub fn euler_series(&self, p: &Laurent2, cutoff: HalfInt) -> Option<LaurentSeries2> {
        let z = self.z_series();
        let one = HalfInt::from_int(1);
        let mut total = LaurentSeries2::zero_through(cutoff);
        for ((x, y), c) in p.terms() {
            let v_power = LaurentSeries2::monomial(self.v.a.scale(x), self.v.q.scale(x), c.clone());
            let bound = cutoff - self.v.q.scale(x);
            let z_power = if y >= 0 {
                z.pow(y as u32)
            } else {
                z.inverse(bound)?.pow((-y) as u32).truncated(bound)
            };
            let term = v_power.mul(&z_power);
            let Some(low) = term.min_q() else { continue };
            let unknot = LaurentSeries2::one()
                .sub(&LaurentSeries2::monomial(one, one, rat(1)))
                .mul(&LaurentSeries2::inverse_one_minus_q_pow(1, cutoff - low));
            total = total.add(&term.mul(&unknot));
        }
        let mut out = LaurentSeries2::zero_through(cutoff);
        for (a, q, c) in total.terms() {
            let sign = if a.floor().rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(a, q, c * rat(sign));
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_matches_derivation() {
        let h = HalfInt::from_twice;
        assert_eq!(
            Dictionary::frozen(),
            Dictionary::from_writhe_shift(h(1), h(1))
        );
    }

    #[test]
    fn unknot_series() {
        let h = HalfInt::from_twice;
        let e = Dictionary::frozen()
            .euler_series(&Laurent2::one(), h(12))
            .unwrap();
        let expected = LaurentSeries2::one()
            .add(&LaurentSeries2::monomial(h(2), h(2), rat(1)))
            .mul(&LaurentSeries2::inverse_one_minus_q_pow(1, h(12)));
        assert!(e.agrees_through(&expected, h(12)));
    }
}
