use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::homology::{kr_homology, TriplyGradedTable};
use super::RouquierError;
use crate::groundring::HalfInt;

const FROZEN: &str = include_str!("../../config/normalization.toml");

/// `writhe·e + strands·n + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineExponent {
    pub writhe: HalfInt,
    pub strands: HalfInt,
    pub constant: HalfInt,
}

impl AffineExponent {
    pub fn eval(&self, writhe: i64, strands: usize) -> HalfInt {
        self.writhe.scale(writhe) + self.strands.scale(strands as i64) + self.constant
    }
}

/// Affine shift rule for `a`, `q` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub a: AffineExponent,
    pub q: AffineExponent,
    pub t: AffineExponent,
}

impl Normalization {
    /// The constants shipped in `config/normalization.toml`.
    pub fn frozen() -> Self {
        toml::from_str(FROZEN).expect("shipped normalization config parses")
    }

    pub fn shift_for(&self, b: &BraidWord) -> (HalfInt, HalfInt, HalfInt) {
        let (e, n) = (b.writhe(), b.strands());
        (self.a.eval(e, n), self.q.eval(e, n), self.t.eval(e, n))
    }
}

/// Applies the frozen Markov shift for `b` to a raw table.
pub fn normalize(t: &TriplyGradedTable, b: &BraidWord) -> TriplyGradedTable {
    let (a, q, h) = Normalization::frozen().shift_for(b);
    t.shifted(a, q, h)
}

/// Normalized homology of the closure of `b`, exact through normalized
/// q-degree `cutoff`.
pub fn kr_homology_normalized(
    b: &BraidWord,
    cutoff: HalfInt,
) -> Result<TriplyGradedTable, RouquierError> {
    let (_, q, _) = Normalization::frozen().shift_for(b);
    Ok(normalize(&kr_homology(b, cutoff - q)?, b))
}

/// The braids whose closures are the unknot and pin down the shift rule:
/// the empty word on one strand, `σ1^{±1}` on two, and `σ1σ2` on three.
pub fn calibration_family() -> Vec<BraidWord> {
    [(1, vec![]), (2, vec![1]), (2, vec![-1]), (3, vec![1, 2])]
        .into_iter()
        .map(|(n, w)| BraidWord::new(n, w).expect("calibration braids are valid"))
        .collect()
}

fn halve(v: HalfInt) -> Result<HalfInt, RouquierError> {
    if v.twice() % 2 != 0 {
        return Err(RouquierError::Calibration(format!(
            "{v} is not twice a half-integer"
        )));
    }
    Ok(HalfInt::from_twice(v.twice() / 2))
}

/// Re-derives the affine shift rule by requiring every unknot braid of the
/// calibration family to match the one-strand empty braid.
pub fn calibrate(cutoff: HalfInt) -> Result<Normalization, RouquierError> {
    let family = calibration_family();
    let tables: Vec<TriplyGradedTable> = family
        .iter()
        .map(|b| kr_homology(b, cutoff))
        .collect::<Result<_, _>>()?;
    let anchor = tables[0]
        .lowest()
        .ok_or_else(|| RouquierError::Calibration("empty unknot table".into()))?;
    let mut shifts = Vec::new();
    for t in &tables {
        let low = t
            .lowest()
            .ok_or_else(|| RouquierError::Calibration("empty unknot table".into()))?;
        shifts.push((anchor.0 - low.0, anchor.1 - low.1, anchor.2 - low.2));
    }
    // points (e, n): (0,1), (1,2), (-1,2), (2,3)
    let solve = |pick: fn(&(HalfInt, HalfInt, HalfInt)) -> HalfInt| -> Result<AffineExponent, RouquierError> {
        let (s01, s12, sm12, s23) = (pick(&shifts[0]), pick(&shifts[1]), pick(&shifts[2]), pick(&shifts[3]));
        let writhe = halve(s12 - sm12)?;
        let strands = s12 - s01 - writhe;
        let constant = s01 - strands;
        let rule = AffineExponent { writhe, strands, constant };
        if rule.eval(2, 3) != s23 {
            return Err(RouquierError::Calibration("the three-strand unknot breaks the affine rule".into()));
        }
        Ok(rule)
    };
    let rule = Normalization {
        a: solve(|s| s.0)?,
        q: solve(|s| s.1)?,
        t: solve(|s| s.2)?,
    };
    for (b, t) in family.iter().zip(&tables) {
        let (a, q, h) = rule.shift_for(b);
        if !t.shifted(a, q, h).agrees_with(&tables[0].shifted(
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
        )) {
            return Err(RouquierError::Calibration(format!(
                "{b} does not match the unknot after shifting"
            )));
        }
    }
    Ok(rule)
}
