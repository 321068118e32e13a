use serde::{Deserialize, Serialize};

use super::matrix::{MatrixEvaluator, PolyMatrix};
use super::SoergelError;
use crate::groundring::{Monomial, Poly};

/// A graded `S`-bimodule that is free as a left module.
///
/// Entry `(a, b)` of `right_action[k]` is the coefficient of basis `a` in
/// `(basis b)·x_{k+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoergelBimodule {
    nvars: usize,
    degrees: Vec<i64>,
    right_action: Vec<PolyMatrix>,
}

/// First detected failure of a structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape {
        matrix: usize,
        rows: usize,
        cols: usize,
    },
    NotCommuting {
        first: usize,
        second: usize,
    },
    EntryDegree {
        matrix: usize,
        row: usize,
        col: usize,
        expected: i64,
        entry: String,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Shape { matrix, rows, cols } => {
                write!(f, "right action of x{matrix} has shape {rows}x{cols}")
            }
            Violation::NotCommuting { first, second } => {
                write!(f, "right actions of x{first} and x{second} do not commute")
            }
            Violation::EntryDegree { matrix, row, col, expected, entry } => write!(
                f,
                "entry ({row}, {col}) of the action of x{matrix} is {entry}, expected homogeneous of degree {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl SoergelBimodule {
    /// `S` with lowest degree `-shift`.
    pub fn unit(nvars: usize, shift: i64) -> Result<Self, SoergelError> {
        if nvars == 0 {
            return Err(SoergelError::NoVariables);
        }
        let right_action = (1..=nvars)
            .map(|k| PolyMatrix::from_rows(nvars, vec![vec![Poly::var(nvars, k)]]))
            .collect();
        Ok(SoergelBimodule {
            nvars,
            degrees: vec![-shift],
            right_action,
        })
    }

    /// The rank-zero module.
    pub fn zero(nvars: usize) -> Self {
        SoergelBimodule {
            nvars,
            degrees: Vec::new(),
            right_action: vec![PolyMatrix::zeros(nvars, 0, 0); nvars],
        }
    }

    /// Assembles a module without checking invariants; see [`validate`](Self::validate).
    pub fn from_parts(nvars: usize, degrees: Vec<i64>, right_action: Vec<PolyMatrix>) -> Self {
        SoergelBimodule {
            nvars,
            degrees,
            right_action,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Right action of `x_{k+1}`.
    pub fn right_action(&self, k: usize) -> &PolyMatrix {
        &self.right_action[k]
    }

    pub fn right_actions(&self) -> &[PolyMatrix] {
        &self.right_action
    }

    /// `M[shift]`: every basis degree drops by `shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        SoergelBimodule {
            nvars: self.nvars,
            degrees: self.degrees.iter().map(|d| d - shift).collect(),
            right_action: self.right_action.clone(),
        }
    }

    fn check_simple(&self, i: usize) -> Result<(), SoergelError> {
        if i == 0 || i >= self.nvars {
            Err(SoergelError::IndexOutOfRange {
                index: i,
                max: self.nvars.saturating_sub(1),
            })
        } else {
            Ok(())
        }
    }

    /// `M ⊗_{S^{s_i}} S[1]`, with basis `m_a⊗1, m_a⊗x_i` interleaved.
    pub fn induct_through_s(&self, i: usize) -> Result<Self, SoergelError> {
        self.check_simple(i)?;
        let n = self.nvars;
        let r = self.rank();
        let xi = Poly::var(n, i);
        let mut eval = MatrixEvaluator::new(&self.right_action, r);
        let mut right_action = Vec::with_capacity(n);
        for k in 1..=n {
            let xk = Poly::var(n, k);
            let (f0, f1) = xk.invariant_split(i)?;
            let (g0, g1) = (&xi * &xk).invariant_split(i)?;
            let blocks = [
                [eval.eval(&f0), eval.eval(&g0)],
                [eval.eval(&f1), eval.eval(&g1)],
            ];
            let mut mat = PolyMatrix::zeros(n, 2 * r, 2 * r);
            for (e_out, row) in blocks.iter().enumerate() {
                for (e_in, blk) in row.iter().enumerate() {
                    for (b, a, p) in blk.entries() {
                        if !p.is_zero() {
                            mat.set(2 * b + e_out, 2 * a + e_in, p.clone());
                        }
                    }
                }
            }
            right_action.push(mat);
        }
        let degrees = self.degrees.iter().flat_map(|d| [d - 1, d + 1]).collect();
        Ok(SoergelBimodule {
            nvars: n,
            degrees,
            right_action,
        })
    }

    /// The Bott–Samelson bimodule of a word of simple indices.
    pub fn bott_samelson(word: &[usize], nvars: usize) -> Result<Self, SoergelError> {
        let mut m = Self::unit(nvars, 0)?;
        for &i in word {
            m.check_simple(i)?;
        }
        for &i in word {
            m = m.induct_through_s(i)?;
        }
        Ok(m)
    }

    /// `M ⊗_S N`, basis `m_a ⊗ n_c` at index `a·rank(N) + c`.
    pub fn tensor(&self, other: &SoergelBimodule) -> Result<Self, SoergelError> {
        self.check_same_vars(other)?;
        let degrees = self
            .degrees
            .iter()
            .flat_map(|d| other.degrees.iter().map(move |e| d + e))
            .collect();
        let right_action = other
            .right_action
            .iter()
            .map(|rn| id_tensor_matrix(self, rn))
            .collect();
        Ok(SoergelBimodule {
            nvars: self.nvars,
            degrees,
            right_action,
        })
    }

    pub fn direct_sum(parts: &[&SoergelBimodule]) -> Result<Self, SoergelError> {
        let first = parts.first().ok_or(SoergelError::NoVariables)?;
        for p in parts {
            first.check_same_vars(p)?;
        }
        let n = first.nvars;
        let degrees = parts
            .iter()
            .flat_map(|p| p.degrees.iter().copied())
            .collect();
        let right_action = (0..n)
            .map(|k| {
                let blocks: Vec<&PolyMatrix> = parts.iter().map(|p| &p.right_action[k]).collect();
                PolyMatrix::block_diag(n, &blocks)
            })
            .collect();
        Ok(SoergelBimodule {
            nvars: n,
            degrees,
            right_action,
        })
    }

    /// The summand spanned by a contiguous range of basis elements; only
    /// meaningful when that range is stable under the right action.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        SoergelBimodule {
            nvars: self.nvars,
            degrees: self.degrees[range.clone()].to_vec(),
            right_action: self
                .right_action
                .iter()
                .map(|m| m.block(range.clone(), range.clone()))
                .collect(),
        }
    }

    pub(crate) fn check_same_vars(&self, other: &SoergelBimodule) -> Result<(), SoergelError> {
        if self.nvars != other.nvars {
            Err(SoergelError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let r = self.rank();
        let fail = |v| ValidationReport { violation: Some(v) };
        if self.right_action.len() != self.nvars {
            return fail(Violation::Shape {
                matrix: self.right_action.len(),
                rows: r,
                cols: r,
            });
        }
        for (k, m) in self.right_action.iter().enumerate() {
            if m.rows() != r || m.cols() != r {
                return fail(Violation::Shape {
                    matrix: k + 1,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        for (k, m) in self.right_action.iter().enumerate() {
            for (a, b, p) in m.entries() {
                if p.is_zero() {
                    continue;
                }
                let expected = self.degrees[b] + 2 - self.degrees[a];
                if p.topological_degree() != Some(expected) {
                    return fail(Violation::EntryDegree {
                        matrix: k + 1,
                        row: a,
                        col: b,
                        expected,
                        entry: p.to_string(),
                    });
                }
            }
        }
        for j in 0..self.nvars {
            for k in j + 1..self.nvars {
                let (mj, mk) = (&self.right_action[j], &self.right_action[k]);
                if mj.mul(mk) != mk.mul(mj) {
                    return fail(Violation::NotCommuting {
                        first: j + 1,
                        second: k + 1,
                    });
                }
            }
        }
        ValidationReport { violation: None }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = BimoduleJson {
            n: self.nvars,
            rank: self.rank(),
            basis_degrees: self.degrees.clone(),
            right_action: self
                .right_action
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|a| (0..m.cols()).map(|b| m.get(a, b).to_string()).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("bimodule serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SoergelError> {
        let doc: BimoduleJson =
            serde_json::from_value(value.clone()).map_err(|e| SoergelError::Json(e.to_string()))?;
        if doc.basis_degrees.len() != doc.rank {
            return Err(SoergelError::Json(format!(
                "rank {} but {} basis degrees",
                doc.rank,
                doc.basis_degrees.len()
            )));
        }
        let mut right_action = Vec::with_capacity(doc.right_action.len());
        for rows in &doc.right_action {
            let parsed = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| Poly::parse(s, doc.n))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parsed.len() != doc.rank || parsed.iter().any(|row| row.len() != doc.rank) {
                return Err(SoergelError::Json(
                    "right-action matrix has the wrong shape".into(),
                ));
            }
            right_action.push(if doc.rank == 0 {
                PolyMatrix::zeros(doc.n, 0, 0)
            } else {
                PolyMatrix::from_rows(doc.n, parsed)
            });
        }
        let m = SoergelBimodule {
            nvars: doc.n,
            degrees: doc.basis_degrees,
            right_action,
        };
        match m.validate().violation {
            Some(v) => Err(SoergelError::Invalid(v)),
            None => Ok(m),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BimoduleJson {
    n: usize,
    rank: usize,
    basis_degrees: Vec<i64>,
    right_action: Vec<Vec<Vec<String>>>,
}

/// `id_M ⊗ g` for a polynomial matrix `g` between free modules over `N`'s
/// basis: entry `[(b,e),(a,c)] = (g[e,c] evaluated at M's right action)[b,a]`.
pub fn id_tensor_matrix(m: &SoergelBimodule, g: &PolyMatrix) -> PolyMatrix {
    let r = m.rank();
    let mut eval = MatrixEvaluator::new(&m.right_action, r);
    let mut out = PolyMatrix::zeros(m.nvars, r * g.rows(), r * g.cols());
    for (e, c, p) in g.entries() {
        if p.is_zero() {
            continue;
        }
        let block = eval.eval(p);
        for (b, a, q) in block.entries() {
            if !q.is_zero() {
                out.set(b * g.rows() + e, a * g.cols() + c, q.clone());
            }
        }
    }
    out
}

/// `f ⊗ id_N` where `N` has rank `rank`: entry `[(b,c),(a,c)] = f[b,a]`.
pub fn matrix_tensor_id(f: &PolyMatrix, rank: usize) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(f.nvars(), f.rows() * rank, f.cols() * rank);
    for (b, a, p) in f.entries() {
        if p.is_zero() {
            continue;
        }
        for c in 0..rank {
            out.set(b * rank + c, a * rank + c, p.clone());
        }
    }
    out
}

pub(crate) fn monomials_of_topological_degree(nvars: usize, degree: i64) -> Vec<Monomial> {
    if degree < 0 || degree % 2 != 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(nvars, (degree / 2) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundring::rat;

    fn bs(word: &[usize], n: usize) -> SoergelBimodule {
        SoergelBimodule::bott_samelson(word, n).unwrap()
    }

    #[test]
    fn unit_shapes() {
        let u = SoergelBimodule::unit(2, 0).unwrap();
        assert_eq!(u.rank(), 1);
        assert_eq!(u.degrees(), &[0]);
        assert_eq!(u.right_action(1).get(0, 0), &Poly::var(2, 2));
        assert_eq!(SoergelBimodule::unit(1, 1).unwrap().degrees(), &[-1]);
        assert_eq!(SoergelBimodule::unit(3, -1).unwrap().degrees(), &[1]);
        assert!(SoergelBimodule::unit(0, 0).is_err());
    }

    #[test]
    fn single_letter_action() {
        let b = bs(&[1], 2);
        assert_eq!(b.degrees(), &[-1, 1]);
        let (x1, x2) = (Poly::var(2, 1), Poly::var(2, 2));
        // (1⊗1)·x2 = (x1+x2)(1⊗1) - (1⊗x1)
        let r2 = b.right_action(1);
        assert_eq!(r2.get(0, 0), &(&x1 + &x2));
        assert_eq!(r2.get(1, 0), &Poly::constant(2, rat(-1)));
        // (1⊗x1)·x1 = 1⊗x1² = -x1x2(1⊗1) + (x1+x2)(1⊗x1)
        let r1 = b.right_action(0);
        assert_eq!(r1.get(0, 1), &(-&(&x1 * &x2)));
        assert_eq!(r1.get(1, 1), &(&x1 + &x2));
        assert!(b.validate().passed());
    }

    #[test]
    fn word_structure() {
        assert_eq!(bs(&[], 2), SoergelBimodule::unit(2, 0).unwrap());
        let m = bs(&[1, 2, 1], 3);
        assert_eq!(m.rank(), 8);
        let mut d = m.degrees().to_vec();
        d.sort();
        assert_eq!(d, vec![-3, -1, -1, -1, 1, 1, 1, 3]);
        assert!(m.validate().passed());
        assert!(bs(&[1, 2], 3).validate().passed());
        assert!(SoergelBimodule::unit(4, 0).unwrap().validate().passed());
        assert!(matches!(
            SoergelBimodule::bott_samelson(&[3], 3),
            Err(SoergelError::IndexOutOfRange { index: 3, .. })
        ));
        assert!(SoergelBimodule::bott_samelson(&[0], 3).is_err());
    }

    #[test]
    fn tensor_units_and_squares() {
        let b = bs(&[1], 2);
        let u = SoergelBimodule::unit(2, 0).unwrap();
        assert_eq!(b.tensor(&u).unwrap(), b);
        assert_eq!(u.tensor(&b).unwrap(), b);
        let shifted = SoergelBimodule::unit(2, 3).unwrap().tensor(&b).unwrap();
        assert_eq!(shifted, b.shifted(3));
        assert_eq!(b.tensor(&b).unwrap(), bs(&[1, 1], 2));
        let m = bs(&[1, 2], 3);
        assert_eq!(m.tensor(&bs(&[1], 3)).unwrap(), bs(&[1, 2, 1], 3));
        assert!(b.tensor(&SoergelBimodule::unit(3, 0).unwrap()).is_err());
    }

    #[test]
    fn corrupted_entry_fails_validation() {
        let b = bs(&[1, 2], 3);
        let mut actions = b.right_actions().to_vec();
        let bumped = actions[0].get(0, 0) + &Poly::var(3, 3);
        actions[0].set(0, 0, bumped);
        let bad = SoergelBimodule::from_parts(3, b.degrees().to_vec(), actions);
        match bad.validate().violation {
            Some(Violation::NotCommuting { first, .. }) => assert_eq!(first, 1),
            other => panic!("unexpected report {other:?}"),
        }
        let mut actions = b.right_actions().to_vec();
        actions[1].set(0, 0, Poly::one(3));
        let bad = SoergelBimodule::from_parts(3, b.degrees().to_vec(), actions);
        assert!(matches!(
            bad.validate().violation,
            Some(Violation::EntryDegree { matrix: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = bs(&[2, 1], 3);
        let v = m.to_json();
        assert_eq!(v["rank"], 4);
        assert_eq!(SoergelBimodule::from_json(&v).unwrap(), m);
        let mut broken = v.clone();
        broken["right_action"][0][0][0] = serde_json::json!("x3^5");
        assert!(SoergelBimodule::from_json(&broken).is_err());
    }
}
