use std::collections::HashMap;
use std::fmt;

use crate::groundring::{Monomial, Poly, Rat};

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    /// `p * Id`.
    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zeros(p.nvars(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            nvars,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.data[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(self.nvars, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> PolyMatrix {
        self.submatrix(&rows.collect::<Vec<_>>(), &cols.collect::<Vec<_>>())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &PolyMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, m: &PolyMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                let idx = (r0 + i) * self.cols + c0 + j;
                self.data[idx] = &self.data[idx] + m.get(i, j);
            }
        }
    }

    pub fn block_diag(nvars: usize, blocks: &[&PolyMatrix]) -> PolyMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(nvars, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Constant terms of the entries.
    pub fn constant_part(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).coeff(&Monomial::one(self.nvars)))
                    .collect()
            })
            .collect()
    }

    /// Inverse of a square matrix whose constant part is invertible and whose
    /// entries make it a graded degree-0 map. Gauss–Jordan with scalar pivots;
    /// returns `None` if no scalar pivot is available in some column.
    pub fn inverse_unit(&self) -> Option<PolyMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.nvars, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| {
                let p = a.get(r, col);
                !p.is_zero() && p.homogeneous_degree() == Some(0)
            })?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let c = a.get(col, col).as_constant().unwrap().recip();
            a.scale_row(col, &c);
            inv.scale_row(col, &c);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rat) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].scale(c);
        }
    }

    // row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let prod = factor * s;
            let idx = target * self.cols + j;
            self.data[idx] = &self.data[idx] - &prod;
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Evaluates polynomials at a tuple of commuting square matrices, caching
/// monomial products.
pub struct MatrixEvaluator<'a> {
    mats: &'a [PolyMatrix],
    size: usize,
    cache: HashMap<Monomial, PolyMatrix>,
}

impl<'a> MatrixEvaluator<'a> {
    pub fn new(mats: &'a [PolyMatrix], size: usize) -> Self {
        MatrixEvaluator {
            mats,
            size,
            cache: HashMap::new(),
        }
    }

    fn monomial(&mut self, m: &Monomial, entry_vars: usize) -> PolyMatrix {
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let value = match m.exponents().iter().position(|&e| e > 0) {
            None => PolyMatrix::identity(entry_vars, self.size),
            Some(k) => {
                let mut e = m.exponents().to_vec();
                e[k] -= 1;
                let rest = self.monomial(&Monomial::new(e), entry_vars);
                self.mats[k].mul(&rest)
            }
        };
        self.cache.insert(m.clone(), value.clone());
        value
    }

    /// `p(M_1, ..., M_n)`.
    pub fn eval(&mut self, p: &Poly) -> PolyMatrix {
        let entry_vars = self.mats.first().map_or(p.nvars(), PolyMatrix::nvars);
        let mut out = PolyMatrix::zeros(entry_vars, self.size, self.size);
        for (m, c) in p.terms() {
            let mm = self.monomial(m, entry_vars);
            out = out.add(&mm.scale(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundring::rat;

    #[test]
    fn unit_inverse() {
        let n = 2;
        let x1 = Poly::var(n, 1);
        // [[1, x1], [0, 2]]
        let m = PolyMatrix::from_rows(
            n,
            vec![
                vec![Poly::one(n), x1.clone()],
                vec![Poly::zero(n), Poly::constant(n, rat(2))],
            ],
        );
        let inv = m.inverse_unit().unwrap();
        assert_eq!(m.mul(&inv), PolyMatrix::identity(n, 2));
        let singular = PolyMatrix::from_rows(n, vec![vec![x1.clone()]]);
        assert!(singular.inverse_unit().is_none());
    }
}
