use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::KoszulError;
use crate::groundring::{Monomial, Poly, Rat};
use crate::linalg::{HomologyBasis, SparseMatrix, SparseVec};
use crate::soergel::{monomials_of_topological_degree, PolyMatrix, SoergelBimodule};

type SparseColumns = Vec<Vec<(usize, Poly)>>;

fn sparse_columns(m: &PolyMatrix) -> SparseColumns {
    let mut cols = vec![Vec::new(); m.cols()];
    for (r, c, p) in m.entries() {
        if !p.is_zero() {
            cols[c].push((r, p.clone()));
        }
    }
    cols
}

/// `M ⊗ Λ(θ_1..θ_n)` with differential contracting `θ_k` against
/// `x_k⊗1 - 1⊗x_k`.
///
/// Term `i` has basis `m_a⊗θ_I` (`|I| = i`, subsets in lexicographic order)
/// at index `a·C(n,i) + position(I)`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    module: SoergelBimodule,
    subsets: Vec<Vec<Vec<usize>>>,
    // differentials[i - 1] = D_i : term i -> term i-1
    differentials: Vec<PolyMatrix>,
    columns: Vec<SparseColumns>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl KoszulComplex {
    pub fn new(module: &SoergelBimodule) -> Result<Self, KoszulError> {
        if let Some(v) = module.validate().violation {
            return Err(KoszulError::Invalid(v));
        }
        let n = module.nvars();
        let r = module.rank();
        let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets_of_size(n, k)).collect();
        let mut differentials = Vec::with_capacity(n);
        let blocks: Vec<PolyMatrix> = (0..n)
            .map(|k| PolyMatrix::scalar(&Poly::var(n, k + 1), r).sub(module.right_action(k)))
            .collect();
        for i in 1..=n {
            let (src, tgt) = (&subsets[i], &subsets[i - 1]);
            let position: HashMap<&Vec<usize>, usize> =
                tgt.iter().enumerate().map(|(j, s)| (s, j)).collect();
            let mut d = PolyMatrix::zeros(n, r * tgt.len(), r * src.len());
            for (col_idx, set) in src.iter().enumerate() {
                for (pos, &k) in set.iter().enumerate() {
                    let mut rest = set.clone();
                    rest.remove(pos);
                    let row_idx = position[&rest];
                    let block = &blocks[k];
                    for (b, a, p) in block.entries() {
                        if p.is_zero() {
                            continue;
                        }
                        let entry = if pos % 2 == 0 { p.clone() } else { -p };
                        d.set(b * tgt.len() + row_idx, a * src.len() + col_idx, entry);
                    }
                }
            }
            differentials.push(d);
        }
        let columns = differentials.iter().map(sparse_columns).collect();
        Ok(KoszulComplex {
            module: module.clone(),
            subsets,
            differentials,
            columns,
        })
    }

    pub fn module(&self) -> &SoergelBimodule {
        &self.module
    }

    pub fn nvars(&self) -> usize {
        self.module.nvars()
    }

    pub fn term_rank(&self, i: usize) -> usize {
        self.module.rank() * self.subsets[i].len()
    }

    /// Topological degree of each basis element of term `i`.
    pub fn term_degrees(&self, i: usize) -> Vec<i64> {
        self.module
            .degrees()
            .iter()
            .flat_map(|d| self.subsets[i].iter().map(move |_| d + 2 * i as i64))
            .collect()
    }

    /// `D_i`, for `1 <= i <= n`.
    pub fn differential(&self, i: usize) -> &PolyMatrix {
        &self.differentials[i - 1]
    }

    pub fn slice(&self, i: usize, degree: i64) -> GradedSlice {
        GradedSlice::new(&self.term_degrees(i), self.nvars(), degree)
    }

    /// `D_i` restricted to the degree-`degree` slices.
    pub fn slice_differential(
        &self,
        i: usize,
        src: &GradedSlice,
        tgt: &GradedSlice,
    ) -> SparseMatrix {
        apply_columns(&self.columns[i - 1], src, tgt)
    }

    /// Ranks of `D_1..D_n` on the degree-`degree` slices, plus slice dimensions.
    fn slice_ranks(&self, degree: i64) -> (Vec<usize>, Vec<usize>) {
        let n = self.nvars();
        let slices: Vec<GradedSlice> = (0..=n).map(|i| self.slice(i, degree)).collect();
        let dims = slices.iter().map(GradedSlice::dim).collect();
        let ranks = (1..=n)
            .map(|i| {
                self.slice_differential(i, &slices[i], &slices[i - 1])
                    .rank()
            })
            .collect();
        (dims, ranks)
    }

    /// Homology dimensions `(i, d) -> dim` for `d` up to `cutoff`.
    pub fn homology_dims(&self, cutoff: i64) -> BTreeMap<(usize, i64), usize> {
        let n = self.nvars();
        let degrees: Vec<i64> = self.degree_range(cutoff).collect();
        let per_degree: Vec<(i64, Vec<usize>)> = degrees
            .par_iter()
            .map(|&d| {
                let (dims, ranks) = self.slice_ranks(d);
                let h = (0..=n)
                    .map(|i| {
                        let out = if i > 0 { ranks[i - 1] } else { 0 };
                        let inc = if i < n { ranks[i] } else { 0 };
                        dims[i] - out - inc
                    })
                    .collect();
                (d, h)
            })
            .collect();
        let mut table = BTreeMap::new();
        for (d, h) in per_degree {
            for (i, dim) in h.into_iter().enumerate() {
                if dim > 0 {
                    table.insert((i, d), dim);
                }
            }
        }
        table
    }

    /// `Σ_i (-1)^i dim(term_i)_d`.
    pub fn chain_euler_characteristic(&self, degree: i64) -> i64 {
        (0..=self.nvars())
            .map(|i| {
                let d = self.slice(i, degree).dim() as i64;
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    pub(crate) fn degree_range(&self, cutoff: i64) -> impl Iterator<Item = i64> {
        let low = self
            .module
            .degrees()
            .iter()
            .copied()
            .min()
            .unwrap_or(cutoff + 1);
        low..=cutoff
    }

    /// Homology with chosen representatives at every `(i, d)` with `d <= cutoff`.
    pub fn homology(&self, cutoff: i64) -> HochschildHomology {
        let n = self.nvars();
        let degrees: Vec<i64> = self.degree_range(cutoff).collect();
        let per_degree: Vec<Vec<((usize, i64), HomologySpot)>> = degrees
            .par_iter()
            .map(|&d| {
                let slices: Vec<GradedSlice> = (0..=n).map(|i| self.slice(i, d)).collect();
                let maps: Vec<SparseMatrix> = (1..=n)
                    .map(|i| self.slice_differential(i, &slices[i], &slices[i - 1]))
                    .collect();
                slices
                    .into_iter()
                    .enumerate()
                    .map(|(i, slice)| {
                        let out = if i > 0 { Some(&maps[i - 1]) } else { None };
                        let inc = if i < n { Some(&maps[i]) } else { None };
                        let basis = HomologyBasis::new(slice.dim(), out, inc);
                        ((i, d), HomologySpot { slice, basis })
                    })
                    .collect()
            })
            .collect();
        HochschildHomology {
            spots: per_degree.into_iter().flatten().collect(),
            cutoff,
        }
    }
}

/// Coordinates of one graded piece of a free module: pairs (basis element,
/// monomial) with total topological degree fixed.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    coords: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl GradedSlice {
    pub fn new(basis_degrees: &[i64], nvars: usize, degree: i64) -> Self {
        let mut coords = Vec::new();
        for (b, &deg) in basis_degrees.iter().enumerate() {
            for m in monomials_of_topological_degree(nvars, degree - deg) {
                coords.push((b, m));
            }
        }
        let index = coords
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, c)| (c, k))
            .collect();
        GradedSlice { coords, index }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(usize, Monomial)] {
        &self.coords
    }

    pub fn position(&self, basis: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(basis, m.clone())).copied()
    }
}

/// Applies a left-linear map (given by sparse polynomial columns) to the
/// coordinates of `src`, landing in `tgt`.
fn apply_columns(columns: &SparseColumns, src: &GradedSlice, tgt: &GradedSlice) -> SparseMatrix {
    let cols = src
        .coords
        .iter()
        .map(|(a, m)| {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (b, p) in &columns[*a] {
                for (mono, c) in p.terms() {
                    let idx = tgt
                        .position(*b, &mono.mul(m))
                        .expect("map respects the grading");
                    *acc.entry(idx).or_insert_with(Rat::zero) += c;
                }
            }
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect::<SparseVec>()
        })
        .collect();
    SparseMatrix::from_cols(tgt.dim(), cols)
}

#[derive(Clone, Debug)]
pub struct HomologySpot {
    pub slice: GradedSlice,
    pub basis: HomologyBasis,
}

/// `HH_i(M)_d` with representatives, for every `d` up to a cutoff.
#[derive(Clone, Debug)]
pub struct HochschildHomology {
    spots: BTreeMap<(usize, i64), HomologySpot>,
    cutoff: i64,
}

impl HochschildHomology {
    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn spot(&self, i: usize, degree: i64) -> Option<&HomologySpot> {
        self.spots.get(&(i, degree))
    }

    pub fn dim(&self, i: usize, degree: i64) -> usize {
        self.spot(i, degree).map_or(0, |s| s.basis.dim())
    }

    pub fn dims(&self) -> BTreeMap<(usize, i64), usize> {
        self.spots
            .iter()
            .filter(|(_, s)| s.basis.dim() > 0)
            .map(|(k, s)| (*k, s.basis.dim()))
            .collect()
    }
}

/// The map `HH_i(M)_d -> HH_i(N)_{d + degree}` induced by a bimodule map
/// with matrix `f : M -> N`, one matrix per `(i, d)` with `d` the source degree.
///
/// Columns index source representatives, rows target representatives.
pub fn induced_maps(
    source: &KoszulComplex,
    source_hh: &HochschildHomology,
    target_hh: &HochschildHomology,
    f: &PolyMatrix,
    degree: i64,
) -> BTreeMap<(usize, i64), SparseMatrix> {
    let keys: Vec<(usize, i64)> = source_hh.spots.keys().copied().collect();
    keys.par_iter()
        .filter_map(|&(i, d)| {
            let src = source_hh.spot(i, d)?;
            let tgt = target_hh.spot(i, d + degree)?;
            let columns = wedge_columns(f, source.subsets[i].len());
            let on_chains = apply_columns(&columns, &src.slice, &tgt.slice);
            let cols = src
                .basis
                .representatives()
                .map(|z| {
                    let image = on_chains.mul_vec(z);
                    let coords = tgt.basis.coordinates(&image);
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect::<SparseVec>()
                })
                .collect();
            Some(((i, d), SparseMatrix::from_cols(tgt.basis.dim(), cols)))
        })
        .collect()
}

/// `f ⊗ id` on `M ⊗ Λ^i`, where term index is `a·width + position`.
fn wedge_columns(f: &PolyMatrix, width: usize) -> SparseColumns {
    let mut cols = vec![Vec::new(); f.cols() * width];
    for (b, a, p) in f.entries() {
        if p.is_zero() {
            continue;
        }
        for j in 0..width {
            cols[a * width + j].push((b * width + j, p.clone()));
        }
    }
    for c in &mut cols {
        c.sort_by_key(|(r, _)| *r);
    }
    cols
}
