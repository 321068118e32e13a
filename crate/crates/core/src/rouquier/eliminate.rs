use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::complex::BimoduleComplex;
use crate::groundring::{Monomial, Rat};
use crate::linalg::{solve, sparse_from_dense, DenseMatrix, Echelon, SparseMatrix};
use crate::soergel::{hom_space, PolyMatrix, SoergelBimodule};

enum Cancellation {
    Iso { inverse: PolyMatrix },
    Injection { retraction: PolyMatrix },
    Surjection { section: PolyMatrix },
}

fn constant_part(m: &PolyMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(m.rows(), m.cols());
    let one = Monomial::one(m.nvars());
    for (r, c, p) in m.entries() {
        let v = p.coeff(&one);
        if !v.is_zero() {
            out.set(r, c, v);
        }
    }
    out
}

/// Finds `Σ c_l basis_l` with `combine(candidate) = identity`, where
/// `combine` is linear in the candidate.
fn solve_for_identity(
    basis: &[PolyMatrix],
    size: usize,
    combine: impl Fn(&PolyMatrix) -> PolyMatrix,
) -> Option<PolyMatrix> {
    let mut keys: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let products: Vec<PolyMatrix> = basis.iter().map(&combine).collect();
    let nvars = basis.first()?.nvars();
    for p in &products {
        for (r, c, e) in p.entries() {
            for (m, _) in e.terms() {
                let next = keys.len();
                keys.entry((r, c, m.clone())).or_insert(next);
            }
        }
    }
    let one = Monomial::one(nvars);
    for d in 0..size {
        let next = keys.len();
        keys.entry((d, d, one.clone())).or_insert(next);
    }
    let cols = products
        .iter()
        .map(|p| {
            let mut col: Vec<(usize, Rat)> = p
                .entries()
                .flat_map(|(r, c, e)| {
                    let keys = &keys;
                    e.terms()
                        .map(move |(m, v)| (keys[&(r, c, m.clone())], v.clone()))
                })
                .collect();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    let system = SparseMatrix::from_cols(keys.len(), cols);
    let mut rhs: Vec<(usize, Rat)> = (0..size)
        .map(|d| (keys[&(d, d, one.clone())], Rat::one()))
        .collect();
    rhs.sort_by_key(|(i, _)| *i);
    let coeffs = solve(&system, &rhs)?;
    let mut out = PolyMatrix::zeros(nvars, basis[0].rows(), basis[0].cols());
    for (l, c) in coeffs {
        out = out.add(&basis[l].scale(&c));
    }
    Some(out)
}

fn classify(
    source: &SoergelBimodule,
    target: &SoergelBimodule,
    phi: &PolyMatrix,
) -> Option<Cancellation> {
    let (rows, cols) = (phi.rows(), phi.cols());
    let rank = constant_part(phi).rank();
    if rank < rows.min(cols) {
        return None;
    }
    if rows == cols {
        return phi
            .inverse_unit()
            .map(|inverse| Cancellation::Iso { inverse });
    }
    let back: Vec<PolyMatrix> = hom_space(target, source, 0)
        .ok()?
        .into_iter()
        .map(|f| f.matrix)
        .collect();
    if rows > cols {
        solve_for_identity(&back, cols, |psi| psi.mul(phi))
            .map(|retraction| Cancellation::Injection { retraction })
    } else {
        solve_for_identity(&back, rows, |chi| phi.mul(chi))
            .map(|section| Cancellation::Surjection { section })
    }
}

/// The image of a degree-0 idempotent endomorphism of `m`, as a free module
/// with inclusion and projection matrices.
pub(crate) struct IdempotentImage {
    pub module: SoergelBimodule,
    pub inclusion: PolyMatrix,
    pub projection: PolyMatrix,
}

pub(crate) fn idempotent_image(m: &SoergelBimodule, e: &PolyMatrix) -> IdempotentImage {
    let e0 = constant_part(e);
    let mut col_span = Echelon::new(e0.rows);
    let mut cols = Vec::new();
    for j in 0..e0.cols {
        let v = sparse_from_dense(
            &(0..e0.rows)
                .map(|r| e0.get(r, j).clone())
                .collect::<Vec<_>>(),
        );
        if col_span.insert(v) {
            cols.push(j);
        }
    }
    let mut row_span = Echelon::new(cols.len());
    let mut rows = Vec::new();
    for r in 0..e0.rows {
        let v = sparse_from_dense(
            &cols
                .iter()
                .map(|&j| e0.get(r, j).clone())
                .collect::<Vec<_>>(),
        );
        if row_span.insert(v) {
            rows.push(r);
        }
    }
    let all: Vec<usize> = (0..e.rows()).collect();
    let inclusion = e.submatrix(&all, &cols);
    let square = inclusion.submatrix(&rows, &(0..cols.len()).collect::<Vec<_>>());
    let inverse = square
        .inverse_unit()
        .expect("idempotent image has a unit square block");
    let projection = inverse.mul(&e.submatrix(&rows, &all));
    let degrees = cols.iter().map(|&j| m.degrees()[j]).collect();
    let actions = m
        .right_actions()
        .iter()
        .map(|r| projection.mul(&r.mul(&inclusion)))
        .collect();
    IdempotentImage {
        module: SoergelBimodule::from_parts(m.nvars(), degrees, actions),
        inclusion,
        projection,
    }
}

impl BimoduleComplex {
    fn cancel(&mut self, p: usize, i: usize, k: usize, how: Cancellation) {
        let x = self.terms[p][i].clone();
        let y = self.terms[p + 1][k].clone();
        let phi = self.blocks[p][k][i].clone();
        let others_src: Vec<usize> = (0..self.terms[p].len()).filter(|&a| a != i).collect();
        let others_tgt: Vec<usize> = (0..self.terms[p + 1].len()).filter(|&b| b != k).collect();
        // the zig-zag correction δ - β·(inverse)·γ
        let back = match &how {
            Cancellation::Iso { inverse } => inverse.clone(),
            Cancellation::Injection { retraction } => retraction.clone(),
            Cancellation::Surjection { section } => section.clone(),
        };
        for &b in &others_tgt {
            let beta = self.blocks[p][b][i].clone();
            if beta.is_zero() {
                continue;
            }
            let beta_back = beta.mul(&back);
            for &a in &others_src {
                let gamma = &self.blocks[p][k][a];
                if gamma.is_zero() {
                    continue;
                }
                let corrected = self.blocks[p][b][a].sub(&beta_back.mul(gamma));
                self.blocks[p][b][a] = corrected;
            }
        }
        let n = self.nvars;
        match how {
            Cancellation::Iso { .. } => {
                self.drop_summand(p + 1, k);
                self.drop_summand(p, i);
            }
            Cancellation::Injection { retraction } => {
                let e = PolyMatrix::identity(n, y.rank()).sub(&phi.mul(&retraction));
                let img = idempotent_image(&y, &e);
                for &a in &others_src {
                    let g = img.projection.mul(&self.blocks[p][k][a]);
                    self.blocks[p][k][a] = g;
                }
                if p + 1 < self.blocks.len() {
                    for row in self.blocks[p + 1].iter_mut() {
                        row[k] = row[k].mul(&img.inclusion);
                    }
                }
                self.terms[p + 1][k] = img.module;
                self.blocks[p][k][i] = PolyMatrix::zeros(n, self.terms[p + 1][k].rank(), x.rank());
                self.drop_summand(p, i);
            }
            Cancellation::Surjection { section } => {
                let e = PolyMatrix::identity(n, x.rank()).sub(&section.mul(&phi));
                let img = idempotent_image(&x, &e);
                for &b in &others_tgt {
                    let g = self.blocks[p][b][i].mul(&img.inclusion);
                    self.blocks[p][b][i] = g;
                }
                if p > 0 {
                    let incoming = &mut self.blocks[p - 1][i];
                    for blk in incoming.iter_mut() {
                        *blk = img.projection.mul(blk);
                    }
                }
                self.terms[p][i] = img.module;
                self.blocks[p][k][i] = PolyMatrix::zeros(n, y.rank(), self.terms[p][i].rank());
                self.drop_summand(p + 1, k);
            }
        }
    }

    /// Removes summand `s` of term `p` together with every block touching it.
    fn drop_summand(&mut self, p: usize, s: usize) {
        self.terms[p].remove(s);
        if p > 0 {
            self.blocks[p - 1].remove(s);
        }
        if p < self.blocks.len() {
            for row in self.blocks[p].iter_mut() {
                row.remove(s);
            }
        }
    }
}

/// Repeatedly cancels a summand pair joined by a split component of the
/// differential, scanning from the lowest homological degree and the first
/// summands. The result is homotopy equivalent to the input.
pub fn gaussian_eliminate(c: &BimoduleComplex) -> BimoduleComplex {
    let mut out = c.clone();
    let mut failed: Vec<(SoergelBimodule, SoergelBimodule, PolyMatrix)> = Vec::new();
    'scan: loop {
        for p in 0..out.blocks.len() {
            for i in 0..out.terms[p].len() {
                for k in 0..out.terms[p + 1].len() {
                    let phi = &out.blocks[p][k][i];
                    if phi.is_zero() {
                        continue;
                    }
                    let (x, y) = (&out.terms[p][i], &out.terms[p + 1][k]);
                    if failed
                        .iter()
                        .any(|(fx, fy, fp)| fp == phi && fx == x && fy == y)
                    {
                        continue;
                    }
                    match classify(x, y, phi) {
                        Some(how) => {
                            out.cancel(p, i, k, how);
                            debug_assert!(out.squares_to_zero());
                            continue 'scan;
                        }
                        None => {
                            if constant_part(phi).rank() == phi.rows().min(phi.cols()) {
                                failed.push((x.clone(), y.clone(), phi.clone()));
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    out.trim();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rouquier::complex::{crossing_complex, tensor_complexes};

    #[test]
    fn identity_component_cancels() {
        let s = SoergelBimodule::unit(2, 0).unwrap();
        let c = BimoduleComplex::from_blocks(
            2,
            0,
            vec![vec![s.clone()], vec![s.clone()]],
            vec![vec![vec![PolyMatrix::identity(2, 1)]]],
        );
        let r = gaussian_eliminate(&c);
        assert_eq!(r.total_rank(), 0);
    }

    #[test]
    fn reduced_complex_is_fixed() {
        let pos = crossing_complex(1, true, 2).unwrap();
        let r = gaussian_eliminate(&pos);
        assert_eq!(r.total_rank(), pos.total_rank());
        assert_eq!(r.differential(-1), pos.differential(-1));
    }

    #[test]
    fn crossing_and_inverse_reduce_to_unit() {
        let pos = crossing_complex(1, true, 2).unwrap();
        let neg = crossing_complex(1, false, 2).unwrap();
        for c in [
            tensor_complexes(&pos, &neg).unwrap(),
            tensor_complexes(&neg, &pos).unwrap(),
        ] {
            let r = gaussian_eliminate(&c);
            assert_eq!((r.low(), r.high()), (0, 0));
            assert_eq!(r.term_rank(0), 1);
            assert_eq!(r.term(0).degrees(), &[0]);
            assert!(r.term(0).validate().passed());
        }
    }

    #[test]
    fn idempotent_image_of_bs_square() {
        let b = SoergelBimodule::bott_samelson(&[1], 2).unwrap();
        let bb = b.tensor(&b).unwrap();
        let maps = hom_space(&b.shifted(1), &bb, 0).unwrap();
        assert!(!maps.is_empty());
        let split = maps
            .iter()
            .find_map(|f| match classify(&b.shifted(1), &bb, &f.matrix) {
                Some(Cancellation::Injection { retraction }) => {
                    Some((f.matrix.clone(), retraction))
                }
                _ => None,
            });
        let (phi, retraction) = split.expect("a split injection exists");
        let e = PolyMatrix::identity(2, 4).sub(&phi.mul(&retraction));
        let img = idempotent_image(&bb, &e);
        assert_eq!(img.module.rank(), 2);
        assert!(img.module.validate().passed());
        assert_eq!(
            img.projection.mul(&img.inclusion),
            PolyMatrix::identity(2, 2)
        );
    }
}
