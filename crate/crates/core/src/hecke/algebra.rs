use std::collections::{BTreeMap, HashMap};

use super::laurent::Laurent2;
use super::HeckeError;
use crate::groundring::rat;

/// A permutation in one-line notation: `w[j]` is the image of `j`.
pub type Perm = Vec<u8>;

/// Hecke algebra of `S_n` with `T_i² = linear·T_i + constant`, `constant` a
/// unit monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeAlgebra {
    n: usize,
    linear: Laurent2,
    constant: Laurent2,
    constant_inv: Laurent2,
}

/// `Σ c_w T_w`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Perm, Laurent2>,
}

impl HeckeElement {
    pub fn identity(n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0..n as u8).collect(), Laurent2::one());
        HeckeElement { n, terms }
    }

    pub fn basis(w: Perm) -> Self {
        let n = w.len();
        let mut terms = BTreeMap::new();
        terms.insert(w, Laurent2::one());
        HeckeElement { n, terms }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Laurent2)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u8]) -> Laurent2 {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Perm, c: Laurent2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn empty(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }
}

/// Simple transposition swapping positions `i-1` and `i` (right action).
fn right_swap(w: &[u8], i: usize) -> Perm {
    let mut out = w.to_vec();
    out.swap(i - 1, i);
    out
}

/// Swaps the values `i-1` and `i` (left action).
fn left_swap(w: &[u8], i: usize) -> Perm {
    w.iter()
        .map(|&x| match x as usize {
            v if v == i - 1 => i as u8,
            v if v == i => (i - 1) as u8,
            _ => x,
        })
        .collect()
}

fn position(w: &[u8], value: usize) -> usize {
    w.iter()
        .position(|&x| x as usize == value)
        .expect("permutation contains every value")
}

impl HeckeAlgebra {
    /// `T² = (q-1)T + q`, with `q` the first variable of the coefficients.
    pub fn standard(n: usize) -> Self {
        let q = Laurent2::x();
        Self::with_relation(n, &q - &Laurent2::one(), q)
    }

    /// `g² = z·g + 1`, with `z` the second variable of the coefficients.
    pub fn skein(n: usize) -> Self {
        Self::with_relation(n, Laurent2::y(), Laurent2::one())
    }

    pub fn with_relation(n: usize, linear: Laurent2, constant: Laurent2) -> Self {
        let constant_inv = constant
            .monomial_inverse()
            .expect("constant term of the relation is a unit");
        HeckeAlgebra {
            n,
            linear,
            constant,
            constant_inv,
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    fn check(&self, i: usize) -> Result<(), HeckeError> {
        if i == 0 || i >= self.n {
            return Err(HeckeError::GeneratorOutOfRange {
                index: i,
                strands: self.n,
            });
        }
        Ok(())
    }

    /// `x · T_i^{sign}`.
    pub fn multiply_by_generator(
        &self,
        x: &HeckeElement,
        i: usize,
        sign: i32,
    ) -> Result<HeckeElement, HeckeError> {
        self.check(i)?;
        let mut out = HeckeElement::empty(self.n);
        for (w, c) in &x.terms {
            let up = w[i - 1] < w[i];
            self.generator_step(&mut out, w, right_swap(w, i), up, c, sign);
        }
        Ok(out)
    }

    /// `T_i^{sign} · x`.
    pub fn generator_times(
        &self,
        i: usize,
        sign: i32,
        x: &HeckeElement,
    ) -> Result<HeckeElement, HeckeError> {
        self.check(i)?;
        let mut out = HeckeElement::empty(self.n);
        for (w, c) in &x.terms {
            let up = position(w, i - 1) < position(w, i);
            self.generator_step(&mut out, w, left_swap(w, i), up, c, sign);
        }
        Ok(out)
    }

    // T_w T_i for w, ws = w s_i; `up` when the length grows.
    fn generator_step(
        &self,
        out: &mut HeckeElement,
        w: &[u8],
        ws: Perm,
        up: bool,
        c: &Laurent2,
        sign: i32,
    ) {
        if sign > 0 {
            if up {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w.to_vec(), c * &self.linear);
                out.add_term(ws, c * &self.constant);
            }
        } else if up {
            // T^{-1} = constant^{-1} (T - linear)
            out.add_term(ws, c * &self.constant_inv);
            out.add_term(w.to_vec(), -&(&(c * &self.linear) * &self.constant_inv));
        } else {
            out.add_term(ws, c.clone());
        }
    }

    /// Image of a signed word `[±i, ...]`.
    pub fn word(&self, letters: &[i32]) -> Result<HeckeElement, HeckeError> {
        letters
            .iter()
            .try_fold(HeckeElement::identity(self.n), |acc, &l| {
                self.multiply_by_generator(&acc, l.unsigned_abs() as usize, l.signum())
            })
    }
}

/// Polynomial in the trace parameter `c`: entry `k` is the coefficient of `c^k`.
pub type TraceValue = Vec<Laurent2>;

fn add_into(acc: &mut TraceValue, other: &TraceValue, factor: &Laurent2, shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, Laurent2::zero());
    }
    for (k, v) in other.iter().enumerate() {
        acc[k + shift] = &acc[k + shift] + &(v * factor);
    }
}

/// Ocneanu trace with `tr(1) = 1` and `tr(x T_{n-1}) = c·tr(x)` for `x` on
/// fewer strands, memoized over basis elements.
pub struct Trace<'a> {
    algebra: &'a HeckeAlgebra,
    memo: HashMap<Perm, TraceValue>,
}

impl<'a> Trace<'a> {
    pub fn new(algebra: &'a HeckeAlgebra) -> Self {
        Trace {
            algebra,
            memo: HashMap::new(),
        }
    }

    pub fn of(&mut self, x: &HeckeElement) -> TraceValue {
        let mut acc = vec![Laurent2::zero()];
        for (w, c) in &x.terms {
            let t = self.basis(w);
            add_into(&mut acc, &t, c, 0);
        }
        acc
    }

    fn basis(&mut self, w: &[u8]) -> TraceValue {
        let mut m = w.len();
        while m > 0 && w[m - 1] as usize == m - 1 {
            m -= 1;
        }
        let w = &w[..m];
        if let Some(t) = self.memo.get(w) {
            return t.clone();
        }
        let value = if m == 0 {
            vec![Laurent2::one()]
        } else {
            // w = u · s_{m-1} ⋯ s_k with u fixing the last point
            let k = position(w, m - 1) + 1;
            let mut u = w.to_vec();
            for j in k..m {
                u.swap(j - 1, j);
            }
            u.pop();
            let small = HeckeAlgebra {
                n: m - 1,
                linear: self.algebra.linear.clone(),
                constant: self.algebra.constant.clone(),
                constant_inv: self.algebra.constant_inv.clone(),
            };
            let mut y = HeckeElement::basis(u);
            for j in k..m - 1 {
                y = small.generator_times(j, 1, &y).expect("generator in range");
            }
            let inner = self.of(&y);
            let mut out = Vec::new();
            add_into(&mut out, &inner, &Laurent2::one(), 1);
            out
        };
        self.memo.insert(w.to_vec(), value.clone());
        value
    }
}

/// `(v - v^{-1}) / z`, the value of a split unknot.
pub fn unlink_factor() -> Laurent2 {
    let v = Laurent2::x();
    let vinv = v.monomial_inverse().unwrap();
    &(&v - &vinv) * &Laurent2::monomial(0, -1, rat(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Laurent2 {
        Laurent2::x()
    }

    #[test]
    fn generator_examples() {
        let h = HeckeAlgebra::standard(2);
        let e = HeckeElement::identity(2);
        let s1 = h.multiply_by_generator(&e, 1, 1).unwrap();
        assert_eq!(s1, HeckeElement::basis(vec![1, 0]));
        let sq = h.multiply_by_generator(&s1, 1, 1).unwrap();
        assert_eq!(sq.coeff(&[1, 0]), &q() - &Laurent2::one());
        assert_eq!(sq.coeff(&[0, 1]), q());
        assert_eq!(h.multiply_by_generator(&s1, 1, -1).unwrap(), e);
        assert_eq!(
            h.multiply_by_generator(&e, 1, -1)
                .and_then(|x| h.multiply_by_generator(&x, 1, 1))
                .unwrap(),
            e
        );
        assert!(matches!(
            h.multiply_by_generator(&e, 2, 1),
            Err(HeckeError::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn left_and_right_agree_on_words() {
        let h = HeckeAlgebra::standard(4);
        let word = [1, 2, -3, 1, 2, 2, -1];
        let right = h.word(&word).unwrap();
        let mut left = HeckeElement::identity(4);
        for &l in word.iter().rev() {
            left = h
                .generator_times(l.unsigned_abs() as usize, l.signum(), &left)
                .unwrap();
        }
        assert_eq!(left, right);
        // braid relation
        assert_eq!(h.word(&[1, 2, 1]).unwrap(), h.word(&[2, 1, 2]).unwrap());
        assert_eq!(h.word(&[1, 3]).unwrap(), h.word(&[3, 1]).unwrap());
    }

    #[test]
    fn trace_is_central() {
        let h = HeckeAlgebra::skein(3);
        let mut tr = Trace::new(&h);
        let ab = h.word(&[1, -2, 2, 2, 2, 1, -2]).unwrap();
        let ba = h.word(&[2, 1, -2, 1, -2, 2, 2]).unwrap();
        assert_eq!(tr.of(&ab), tr.of(&ba));
        assert_eq!(tr.of(&HeckeElement::identity(3)), vec![Laurent2::one()]);
        assert_eq!(
            tr.of(&h.word(&[2]).unwrap()),
            vec![Laurent2::zero(), Laurent2::one()]
        );
    }
}
