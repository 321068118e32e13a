use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{parse_rat, rat, split_terms, write_term, Rat};
use super::RingError;

/// Exponent vector of a monomial in `x_1..x_n`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `x_1`, then `x_2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `x_k` with `k` zero-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All monomials of the given degree, in increasing graded-lex order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Monomial>) {
            if left == 1 {
                prefix.push(remaining);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=remaining {
                prefix.push(e);
                rec(prefix, left - 1, remaining - e, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            return if degree == 0 {
                vec![Monomial(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
        // rec emits x_1-exponent ascending, which is graded-lex ascending.
        out
    }

    fn body(&self) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", k + 1)),
                _ => parts.push(format!("x{}^{}", k + 1, e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `S = ℚ[x_1..x_n]`; each variable has topological degree 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Poly::from_term(Monomial::one(nvars), c)
    }

    pub fn from_term(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// The variable `x_k`, `k` one-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(
            k >= 1 && k <= nvars,
            "variable x{k} out of range for {nvars} variables"
        );
        Poly::from_term(Monomial::var(nvars, k - 1), Rat::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The scalar value if `self` is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Polynomial degree (sum of exponents) when all monomials agree; `None`
    /// for zero or mixed-degree polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Topological degree, twice the polynomial degree, for homogeneous input.
    pub fn topological_degree(&self) -> Option<i64> {
        self.homogeneous_degree().map(|d| 2 * d as i64)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<(), RingError> {
        if self.nvars != other.nvars {
            Err(RingError::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_same(other)?;
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn check_simple(&self, i: usize) -> Result<(), RingError> {
        if i == 0 || i >= self.nvars {
            Err(RingError::IndexOutOfRange {
                index: i,
                max: self.nvars.saturating_sub(1),
            })
        } else {
            Ok(())
        }
    }

    /// The action of the simple transposition `s_i`, swapping `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> Result<Poly, RingError> {
        self.check_simple(i)?;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, i);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Demazure operator `(f - s_i f) / (x_i - x_{i+1})`.
    pub fn demazure(&self, i: usize) -> Result<Poly, RingError> {
        self.check_simple(i)?;
        let (l, r) = (i - 1, i);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let (a, b) = (m.0[l], m.0[r]);
            if a == b {
                continue;
            }
            // x_l^a x_r^b - x_l^b x_r^a = sign * (x_l x_r)^min * (x_l^k - x_r^k) with k = |a - b|
            let (lo, k, sign) = if a > b {
                (b, a - b, Rat::one())
            } else {
                (a, b - a, -Rat::one())
            };
            for j in 0..k {
                let mut e = m.0.clone();
                e[l] = lo + j;
                e[r] = lo + (k - 1 - j);
                out.add_term(Monomial(e), c * &sign);
            }
        }
        Ok(out)
    }

    /// Writes `f = f0 + f1 * x_i` with `f0`, `f1` invariant under `s_i`.
    pub fn invariant_split(&self, i: usize) -> Result<(Poly, Poly), RingError> {
        let f1 = self.demazure(i)?;
        let f0 = self - &(&f1 * &Poly::var(self.nvars, i));
        Ok((f0, f1))
    }

    /// Parses the text form, e.g. `3*x1^2*x2 - 1/2*x3`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly, RingError> {
        let err = |msg: &str| RingError::Parse(format!("{msg} in {s:?}"));
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut out = Poly::zero(nvars);
        for (negative, term) in split_terms(trimmed) {
            let mut coeff = Rat::one();
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => {
                            (i, e.trim().parse::<u32>().map_err(|_| err("bad exponent"))?)
                        }
                        None => (rest, 1),
                    };
                    let k: usize = idx.trim().parse().map_err(|_| err("bad variable"))?;
                    if k == 0 || k > nvars {
                        return Err(err(&format!("variable x{k} outside x1..x{nvars}")));
                    }
                    exps[k - 1] += exp;
                } else {
                    coeff *= parse_rat(factor).ok_or_else(|| err("bad coefficient"))?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, idx == 0, c, &m.body());
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomial variable counts differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("polynomial variable counts differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomial variable counts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1))
    }
}
