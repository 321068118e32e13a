//! Sparse linear algebra over ℚ: echelon bases, ranks, kernels, and
//! homology-with-coordinates for finite complexes of vector spaces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::groundring::Rat;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn sparse_from_dense(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Columns must be sorted and zero-free.
    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(cols
            .iter()
            .all(|c| c.iter().all(|(i, v)| *i < nrows && !v.is_zero())));
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.cols.len(),
            cols: rows,
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc = vec![Rat::zero(); self.nrows];
        for (j, c) in v {
            for (i, a) in &self.cols[*j] {
                acc[*i] += a * c;
            }
        }
        sparse_from_dense(&acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "matrix shapes do not compose");
        SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.nrows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.len()
    }

    /// Basis of the null space, one vector per free column of the row echelon form.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let n = self.ncols();
        let mut rows = Echelon::new(n);
        for r in self.transpose().cols {
            rows.insert(r);
        }
        rows.null_space()
    }
}

/// One solution of `a x = b`, with free variables set to zero.
pub fn solve(a: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let n = a.ncols();
    let mut rows: Vec<SparseVec> = a.transpose().cols;
    for (i, c) in b {
        rows[*i].push((n, c.clone()));
    }
    let mut e = Echelon::new(n + 1);
    for r in rows {
        e.insert(r);
    }
    if e.rows.contains_key(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (&p, row) in e.rows.iter().rev() {
        let mut s = Rat::zero();
        for (c, r) in row.iter().skip(1) {
            if *c == n {
                s += r;
            } else if !x[*c].is_zero() {
                s -= r * &x[*c];
            }
        }
        x[p] = s;
    }
    Some(sparse_from_dense(&x))
}

/// A row-echelon basis of a subspace of ℚ^dim.
///
/// Every stored row has leading entry 1 at its pivot. Rows are not fully
/// reduced against later pivots; reduction sweeps pivots in increasing order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    fn sweep(&self, v: &SparseVec, mut record: impl FnMut(usize, &Rat)) -> SparseVec {
        if self.rows.is_empty() || v.is_empty() {
            return v.clone();
        }
        let mut acc = vec![Rat::zero(); self.dim];
        for (i, c) in v {
            acc[*i] = c.clone();
        }
        let first = v[0].0;
        for (&p, row) in self.rows.range(first..) {
            if acc[p].is_zero() {
                continue;
            }
            let c = acc[p].clone();
            record(p, &c);
            for (i, r) in row {
                acc[*i] -= &c * r;
            }
        }
        sparse_from_dense(&acc)
    }

    /// `v` minus its component along the stored rows; zero at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.sweep(v, |_, _| {})
    }

    /// Like [`reduce`](Self::reduce), also returning `v`'s coefficients on the
    /// stored rows, indexed by position in pivot order.
    pub fn reduce_with_coords(&self, v: &SparseVec) -> (SparseVec, Vec<Rat>) {
        let index: BTreeMap<usize, usize> =
            self.rows.keys().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut coords = vec![Rat::zero(); self.rows.len()];
        let rem = self.sweep(v, |p, c| coords[index[&p]] = c.clone());
        (rem, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns false when it was already in it.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let (pivot, lead) = (r[0].0, r[0].1.clone());
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, c) in r.iter_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Null space of the linear functionals given by the rows.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let free: Vec<usize> = (0..self.dim)
            .filter(|c| !self.rows.contains_key(c))
            .collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rat::zero(); self.dim];
            x[f] = Rat::one();
            // entries of row p sit at indices >= p, so back-substitute from the top pivot down
            for (&p, row) in self.rows.iter().rev() {
                let mut s = Rat::zero();
                for (c, r) in row.iter().skip(1) {
                    if !x[*c].is_zero() {
                        s += r * &x[*c];
                    }
                }
                x[p] = -s;
            }
            basis.push(sparse_from_dense(&x));
        }
        basis
    }
}

/// Homology `ker(out) / im(in)` at one spot of a complex of finite vector
/// spaces, with a fixed basis of representatives.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    boundaries: Echelon,
    reps: Echelon,
}

impl HomologyBasis {
    /// `outgoing: C -> C'` and `incoming: C'' -> C`, where `C` has dimension `dim`.
    pub fn new(
        dim: usize,
        outgoing: Option<&SparseMatrix>,
        incoming: Option<&SparseMatrix>,
    ) -> Self {
        let mut boundaries = Echelon::new(dim);
        if let Some(m) = incoming {
            debug_assert_eq!(m.nrows(), dim);
            for c in m.cols() {
                boundaries.insert(c.clone());
            }
        }
        let cycles: Vec<SparseVec> = match outgoing {
            Some(m) => {
                debug_assert_eq!(m.ncols(), dim);
                m.kernel()
            }
            None => (0..dim).map(|i| vec![(i, Rat::one())]).collect(),
        };
        let mut reps = Echelon::new(dim);
        for z in cycles {
            if reps.len() + boundaries.len() == dim {
                break;
            }
            let r = boundaries.reduce(&z);
            reps.insert(r);
        }
        HomologyBasis { boundaries, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &SparseVec> {
        self.reps.rows()
    }

    /// Coordinates of the class of the cycle `v` in the representative basis.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<Rat> {
        let r = self.boundaries.reduce(v);
        let (rem, coords) = self.reps.reduce_with_coords(&r);
        debug_assert!(rem.is_empty(), "vector is not a cycle");
        coords
    }
}

/// Dense matrix over ℚ, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(sparse_from_dense(
                &self.data[i * self.cols..(i + 1) * self.cols],
            ));
        }
        e.len()
    }
}
