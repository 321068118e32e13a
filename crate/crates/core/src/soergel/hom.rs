use std::collections::HashMap;

use num_traits::Zero;

use super::bimodule::{monomials_of_topological_degree, SoergelBimodule};
use super::matrix::PolyMatrix;
use super::SoergelError;
use crate::groundring::{Monomial, Poly, Rat};
use crate::linalg::{SparseMatrix, SparseVec};

/// A graded bimodule homomorphism. Column `b` of `matrix` is the image of
/// source basis element `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    pub source: SoergelBimodule,
    pub target: SoergelBimodule,
    pub degree: i64,
    pub matrix: PolyMatrix,
}

impl BimoduleMap {
    pub fn identity(m: &SoergelBimodule) -> Self {
        BimoduleMap {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            matrix: PolyMatrix::identity(m.nvars(), m.rank()),
        }
    }

    pub fn zero(source: &SoergelBimodule, target: &SoergelBimodule, degree: i64) -> Self {
        BimoduleMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            matrix: PolyMatrix::zeros(source.nvars(), target.rank(), source.rank()),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BimoduleMap) -> Result<BimoduleMap, SoergelError> {
        if first.target != self.source {
            return Err(SoergelError::NotComposable);
        }
        Ok(BimoduleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: self.degree + first.degree,
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    /// Checks entry degrees and commutation with the right action.
    pub fn is_valid(&self) -> bool {
        let (src, tgt) = (&self.source, &self.target);
        if self.matrix.rows() != tgt.rank() || self.matrix.cols() != src.rank() {
            return false;
        }
        let degrees_ok = self.matrix.entries().all(|(a, b, p)| {
            p.is_zero()
                || p.topological_degree() == Some(src.degrees()[b] + self.degree - tgt.degrees()[a])
        });
        degrees_ok
            && (0..src.nvars()).all(|k| {
                tgt.right_action(k).mul(&self.matrix) == self.matrix.mul(src.right_action(k))
            })
    }
}

/// Basis of the degree-`degree` bimodule maps `source → target`.
///
/// The unknowns are the monomial coefficients of the entries, ordered by
/// (target index, source index, monomial); the basis is the echelon null
/// space of the commutation equations in that order.
pub fn hom_space(
    source: &SoergelBimodule,
    target: &SoergelBimodule,
    degree: i64,
) -> Result<Vec<BimoduleMap>, SoergelError> {
    source.check_same_vars(target)?;
    let n = source.nvars();
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for a in 0..target.rank() {
        for b in 0..source.rank() {
            let e = source.degrees()[b] + degree - target.degrees()[a];
            for m in monomials_of_topological_degree(n, e) {
                unknowns.push((a, b, m));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }

    // equation key: (k, target row, source column, monomial)
    let mut rows: HashMap<(usize, usize, usize, Monomial), usize> = HashMap::new();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(unknowns.len());
    for (r, s, m) in &unknowns {
        let mut entries: HashMap<usize, Rat> = HashMap::new();
        let mut push = |key: (usize, usize, usize, Monomial), c: &Rat| {
            let next = rows.len();
            let idx = *rows.entry(key).or_insert(next);
            *entries.entry(idx).or_insert_with(Rat::zero) += c;
        };
        for k in 0..n {
            let rn = target.right_action(k);
            for a2 in 0..target.rank() {
                for (mono, c) in rn.get(a2, *r).terms() {
                    push((k, a2, *s, mono.mul(m)), c);
                }
            }
            let rm = source.right_action(k);
            for b in 0..source.rank() {
                for (mono, c) in rm.get(*s, b).terms() {
                    push((k, *r, b, mono.mul(m)), &-c);
                }
            }
        }
        let mut col: SparseVec = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        col.sort_by_key(|(i, _)| *i);
        cols.push(col);
    }
    let system = SparseMatrix::from_cols(rows.len(), cols);
    let basis = system
        .kernel()
        .into_iter()
        .map(|v| {
            let mut matrix = PolyMatrix::zeros(n, target.rank(), source.rank());
            for (u, c) in v {
                let (a, b, m) = &unknowns[u];
                let entry = matrix.get(*a, *b) + &Poly::from_term(m.clone(), c);
                matrix.set(*a, *b, entry);
            }
            BimoduleMap {
                source: source.clone(),
                target: target.clone(),
                degree,
                matrix,
            }
        })
        .collect();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundring::rat;

    fn unit(n: usize, shift: i64) -> SoergelBimodule {
        SoergelBimodule::unit(n, shift).unwrap()
    }

    #[test]
    fn scalars_on_unit() {
        let h = hom_space(&unit(2, 0), &unit(2, 0), 0).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0], BimoduleMap::identity(&unit(2, 0)));
        // degree-2 endomorphisms of S: multiplication by x1, x2
        assert_eq!(hom_space(&unit(2, 0), &unit(2, 0), 2).unwrap().len(), 2);
        assert!(hom_space(&unit(2, 0), &unit(2, 0), 1).unwrap().is_empty());
    }

    #[test]
    fn unit_and_counit_of_bs() {
        let b = SoergelBimodule::bott_samelson(&[1], 2).unwrap();
        let into = hom_space(&unit(2, -1), &b, 0).unwrap();
        assert_eq!(into.len(), 1);
        let out = hom_space(&b, &unit(2, 1), 0).unwrap();
        assert_eq!(out.len(), 1);
        assert!(into[0].is_valid() && out[0].is_valid());
        // the multiplication map sends 1⊗1 to a nonzero scalar
        assert!(out[0]
            .matrix
            .get(0, 0)
            .as_constant()
            .is_some_and(|c| !c.is_zero()));
        let composite = out[0].compose(&into[0]).unwrap();
        // degree 0 between S[-1] and S[1]: multiplication by a multiple of x1 - x2
        let p = composite.matrix.get(0, 0).clone();
        let root = &Poly::var(2, 1) - &Poly::var(2, 2);
        let c = p.coeff(&Monomial::var(2, 0));
        assert!(!c.is_zero());
        assert_eq!(p, root.scale(&c));
    }

    #[test]
    fn wrong_shift_gives_no_maps() {
        let b = SoergelBimodule::bott_samelson(&[1], 2).unwrap();
        assert!(hom_space(&unit(2, 1), &b, 0).unwrap().is_empty());
        assert!(hom_space(&b, &unit(2, -1), 0).unwrap().is_empty());
    }

    #[test]
    fn compose_checks_endpoints() {
        let id = BimoduleMap::identity(&unit(2, 0));
        let other = BimoduleMap::identity(&unit(2, 1));
        assert!(id.compose(&other).is_err());
        let z = BimoduleMap::zero(&unit(2, 0), &unit(2, 0), 0);
        assert!(z.is_valid());
        assert_eq!(
            id.compose(&z).unwrap().matrix.get(0, 0),
            &Poly::constant(2, rat(0))
        );
    }
}
