use super::RouquierError;
use crate::soergel::{
    hom_space, id_tensor_matrix, matrix_tensor_id, BimoduleMap, PolyMatrix, SoergelBimodule,
};

/// A bounded complex of bimodules whose terms are direct sums of listed
/// summands, with differentials of degree 0 stored blockwise.
#[derive(Clone, Debug)]
pub struct BimoduleComplex {
    pub(super) nvars: usize,
    pub(super) low: i64,
    pub(super) terms: Vec<Vec<SoergelBimodule>>,
    // blocks[t][k][i]: summand i of term t -> summand k of term t+1
    pub(super) blocks: Vec<Vec<Vec<PolyMatrix>>>,
}

impl BimoduleComplex {
    /// Assembles a complex from summands and blocks; see [`squares_to_zero`](Self::squares_to_zero).
    pub fn from_blocks(
        nvars: usize,
        low: i64,
        terms: Vec<Vec<SoergelBimodule>>,
        blocks: Vec<Vec<Vec<PolyMatrix>>>,
    ) -> Self {
        assert_eq!(
            blocks.len() + 1,
            terms.len().max(1),
            "one block matrix per adjacent pair"
        );
        BimoduleComplex {
            nvars,
            low,
            terms,
            blocks,
        }
    }

    /// A single module in homological degree `t`.
    pub fn single(m: SoergelBimodule, t: i64) -> Self {
        BimoduleComplex {
            nvars: m.nvars(),
            low: t,
            terms: vec![vec![m]],
            blocks: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Lowest homological degree stored.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest homological degree stored.
    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.low..=self.high()
    }

    fn pos(&self, t: i64) -> Option<usize> {
        let p = t - self.low;
        (0..self.terms.len() as i64)
            .contains(&p)
            .then_some(p as usize)
    }

    pub fn summands(&self, t: i64) -> &[SoergelBimodule] {
        self.pos(t).map_or(&[], |p| &self.terms[p])
    }

    /// The term in degree `t` as one module (rank zero when absent).
    pub fn term(&self, t: i64) -> SoergelBimodule {
        let parts: Vec<&SoergelBimodule> = self.summands(t).iter().collect();
        if parts.is_empty() {
            SoergelBimodule::zero(self.nvars)
        } else {
            SoergelBimodule::direct_sum(&parts).expect("summands share variables")
        }
    }

    pub fn term_rank(&self, t: i64) -> usize {
        self.summands(t).iter().map(SoergelBimodule::rank).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().flatten().map(SoergelBimodule::rank).sum()
    }

    pub(crate) fn block(&self, t: i64, target: usize, source: usize) -> &PolyMatrix {
        &self.blocks[self.pos(t).unwrap()][target][source]
    }

    /// The differential out of degree `t` as one matrix.
    pub fn differential(&self, t: i64) -> PolyMatrix {
        let rows = self.term_rank(t + 1);
        let cols = self.term_rank(t);
        let mut out = PolyMatrix::zeros(self.nvars, rows, cols);
        let Some(p) = self.pos(t) else { return out };
        if p + 1 >= self.terms.len() {
            return out;
        }
        let mut r0 = 0;
        for (k, tgt) in self.terms[p + 1].iter().enumerate() {
            let mut c0 = 0;
            for (i, src) in self.terms[p].iter().enumerate() {
                out.set_block(r0, c0, &self.blocks[p][k][i]);
                c0 += src.rank();
            }
            r0 += tgt.rank();
        }
        out
    }

    pub fn differential_map(&self, t: i64) -> BimoduleMap {
        BimoduleMap {
            source: self.term(t),
            target: self.term(t + 1),
            degree: 0,
            matrix: self.differential(t),
        }
    }

    /// `d ∘ d = 0` everywhere.
    pub fn squares_to_zero(&self) -> bool {
        (self.low..self.high() - 1).all(|t| {
            self.differential(t + 1)
                .mul(&self.differential(t))
                .is_zero()
        })
    }

    /// Every differential is a degree-0 bimodule map.
    pub fn differentials_valid(&self) -> bool {
        (self.low..self.high()).all(|t| self.differential_map(t).is_valid())
    }

    /// Drops empty terms at both ends.
    pub(crate) fn trim(&mut self) {
        while self.terms.len() > 1 && self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.blocks.pop();
        }
        while self.terms.len() > 1 && self.terms[0].is_empty() {
            self.terms.remove(0);
            self.blocks.remove(0);
            self.low += 1;
        }
    }
}

/// `F(σ_i)` (positive) or `F(σ_i^{-1})` (negative), with `B_{s_i}` in degree 0.
pub fn crossing_complex(
    i: usize,
    positive: bool,
    nvars: usize,
) -> Result<BimoduleComplex, RouquierError> {
    let bs = SoergelBimodule::bott_samelson(&[i], nvars)?;
    let (low, source, target) = if positive {
        (-1, SoergelBimodule::unit(nvars, -1)?, bs)
    } else {
        (0, bs, SoergelBimodule::unit(nvars, 1)?)
    };
    let mut maps = hom_space(&source, &target, 0)?;
    if maps.len() != 1 {
        return Err(RouquierError::Internal(format!(
            "expected a unique crossing map, found {} of them",
            maps.len()
        )));
    }
    let d = maps.remove(0).matrix;
    Ok(BimoduleComplex {
        nvars,
        low,
        terms: vec![vec![source], vec![target]],
        blocks: vec![vec![vec![d]]],
    })
}

/// Total complex of `C ⊗_S D` with sign `(-1)^p` on `id ⊗ d_D` from `C_p`.
///
/// Summands of a term are the products `X ⊗ Y` of summands, ordered by the
/// degree of `X`, then by `X`, then by `Y`.
pub fn tensor_complexes(
    c: &BimoduleComplex,
    d: &BimoduleComplex,
) -> Result<BimoduleComplex, RouquierError> {
    if c.nvars != d.nvars {
        return Err(RouquierError::VariableMismatch {
            left: c.nvars,
            right: d.nvars,
        });
    }
    let nvars = c.nvars;
    let low = c.low + d.low;
    let high = c.high() + d.high();
    // index[(p, i, q, j)] = position in term p+q
    let mut index = std::collections::HashMap::new();
    let mut terms: Vec<Vec<SoergelBimodule>> = Vec::new();
    for t in low..=high {
        let mut summands = Vec::new();
        for p in c.degrees() {
            let q = t - p;
            if q < d.low || q > d.high() {
                continue;
            }
            for (i, x) in c.summands(p).iter().enumerate() {
                for (j, y) in d.summands(q).iter().enumerate() {
                    index.insert((p, i, q, j), summands.len());
                    summands.push(x.tensor(y)?);
                }
            }
        }
        terms.push(summands);
    }
    let mut blocks: Vec<Vec<Vec<PolyMatrix>>> = (0..terms.len().saturating_sub(1))
        .map(|t| {
            terms[t + 1]
                .iter()
                .map(|tgt| {
                    terms[t]
                        .iter()
                        .map(|src| PolyMatrix::zeros(nvars, tgt.rank(), src.rank()))
                        .collect()
                })
                .collect()
        })
        .collect();
    for (&(p, i, q, j), &src_idx) in &index {
        let t = (p + q - low) as usize;
        let x = &c.summands(p)[i];
        let y = &d.summands(q)[j];
        if p < c.high() {
            for k in 0..c.summands(p + 1).len() {
                let f = c.block(p, k, i);
                if f.is_zero() {
                    continue;
                }
                let tgt_idx = index[&(p + 1, k, q, j)];
                blocks[t][tgt_idx][src_idx] = matrix_tensor_id(f, y.rank());
            }
        }
        if q < d.high() {
            for l in 0..d.summands(q + 1).len() {
                let g = d.block(q, l, j);
                if g.is_zero() {
                    continue;
                }
                let tgt_idx = index[&(p, i, q + 1, l)];
                let mut m = id_tensor_matrix(x, g);
                if p.rem_euclid(2) == 1 {
                    m = m.scale(&crate::groundring::rat(-1));
                }
                blocks[t][tgt_idx][src_idx] = m;
            }
        }
    }
    let mut out = BimoduleComplex {
        nvars,
        low,
        terms,
        blocks,
    };
    out.trim();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossings() {
        let pos = crossing_complex(1, true, 2).unwrap();
        assert_eq!((pos.low(), pos.high()), (-1, 0));
        assert_eq!(pos.term(-1).degrees(), &[1]);
        assert!(pos.differentials_valid());
        let neg = crossing_complex(1, false, 2).unwrap();
        assert_eq!((neg.low(), neg.high()), (0, 1));
        // multiplication sends 1⊗1 to a nonzero scalar
        assert!(neg.differential(0).get(0, 0).as_constant().is_some());
        assert!(neg.squares_to_zero());
        assert!(crossing_complex(2, true, 2).is_err());
    }

    #[test]
    fn tensor_ranks_and_signs() {
        let pos = crossing_complex(1, true, 2).unwrap();
        let sq = tensor_complexes(&pos, &pos).unwrap();
        assert_eq!((sq.low(), sq.high()), (-2, 0));
        assert_eq!(
            [sq.term_rank(-2), sq.term_rank(-1), sq.term_rank(0)],
            [1, 4, 4]
        );
        assert!(sq.squares_to_zero());
        assert!(sq.differentials_valid());
        let unit = BimoduleComplex::single(SoergelBimodule::unit(2, 0).unwrap(), 0);
        let left = tensor_complexes(&unit, &pos).unwrap();
        assert_eq!(left.term(-1), pos.term(-1));
        assert_eq!(left.differential(-1), pos.differential(-1));
        let neg = crossing_complex(1, false, 3).unwrap();
        let other = crossing_complex(2, true, 3).unwrap();
        let mixed = tensor_complexes(&tensor_complexes(&neg, &other).unwrap(), &neg).unwrap();
        assert!(mixed.squares_to_zero());
    }
}
