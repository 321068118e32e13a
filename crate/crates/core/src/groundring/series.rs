use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::halfint::HalfInt;
use super::rational::{parse_rat, rat, split_terms, write_term, Rat};
use super::RingError;

/// A power series in `a` and `q` with half-integer exponents, exact through a
/// q-cutoff.
///
/// `cutoff == None` means the value is an exact (finite) Laurent polynomial.
/// Otherwise every coefficient with q-exponent at most `cutoff` is correct and
/// nothing above it is stored. Arithmetic tracks how far results stay exact.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries2 {
    // keyed by (q, a) so iteration runs in increasing q
    terms: BTreeMap<(HalfInt, HalfInt), Rat>,
    cutoff: Option<HalfInt>,
}

impl LaurentSeries2 {
    /// The exact zero polynomial.
    pub fn zero() -> Self {
        LaurentSeries2 {
            terms: BTreeMap::new(),
            cutoff: None,
        }
    }

    pub fn one() -> Self {
        Self::monomial(HalfInt::ZERO, HalfInt::ZERO, Rat::one())
    }

    /// Exact monomial `c * a^a_exp * q^q_exp`.
    pub fn monomial(a_exp: HalfInt, q_exp: HalfInt, c: Rat) -> Self {
        let mut s = Self::zero();
        s.add_term(a_exp, q_exp, c);
        s
    }

    /// Zero, known to vanish through `cutoff`.
    pub fn zero_through(cutoff: HalfInt) -> Self {
        LaurentSeries2 {
            terms: BTreeMap::new(),
            cutoff: Some(cutoff),
        }
    }

    /// `1 / (1 - q)^k` through the given q-cutoff.
    pub fn inverse_one_minus_q_pow(k: u32, cutoff: HalfInt) -> Self {
        let mut out = Self::one().truncated(cutoff);
        let geometric = {
            let mut g = Self::zero_through(cutoff);
            let mut j = 0;
            while HalfInt::from_int(j) <= cutoff {
                g.add_term(HalfInt::ZERO, HalfInt::from_int(j), Rat::one());
                j += 1;
            }
            g
        };
        for _ in 0..k {
            out = &out * &geometric;
        }
        out
    }

    pub fn cutoff(&self) -> Option<HalfInt> {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(a, q, coefficient)` in increasing q.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, HalfInt, &Rat)> {
        self.terms.iter().map(|(&(q, a), c)| (a, q, c))
    }

    pub fn coeff(&self, a_exp: HalfInt, q_exp: HalfInt) -> Rat {
        self.terms
            .get(&(q_exp, a_exp))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, a_exp: HalfInt, q_exp: HalfInt, c: Rat) {
        if c.is_zero() || self.cutoff.is_some_and(|cut| q_exp > cut) {
            return;
        }
        let entry = self.terms.entry((q_exp, a_exp)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(q_exp, a_exp));
        }
    }

    /// Drops everything above `cutoff` (keeping any tighter existing cutoff).
    pub fn truncated(&self, cutoff: HalfInt) -> Self {
        let cut = self.cutoff.map_or(cutoff, |c| c.min(cutoff));
        LaurentSeries2 {
            terms: self
                .terms
                .iter()
                .filter(|((q, _), _)| *q <= cut)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            cutoff: Some(cut),
        }
    }

    /// Forgets the cutoff, asserting the stored terms are the whole value.
    pub fn into_exact(mut self) -> Self {
        self.cutoff = None;
        self
    }

    /// Lowest term in `(q, a)` order.
    pub fn lowest_term(&self) -> Option<(HalfInt, HalfInt, Rat)> {
        self.terms
            .iter()
            .next()
            .map(|(&(q, a), c)| (a, q, c.clone()))
    }

    pub fn max_q(&self) -> Option<HalfInt> {
        self.terms.keys().map(|(q, _)| *q).max()
    }

    pub fn min_q(&self) -> Option<HalfInt> {
        self.terms.keys().next().map(|(q, _)| *q)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = LaurentSeries2 {
            terms: BTreeMap::new(),
            cutoff: self.cutoff,
        };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    /// Multiplies by `a^a_exp q^q_exp`; the cutoff moves along with q.
    pub fn shift(&self, a_exp: HalfInt, q_exp: HalfInt) -> Self {
        LaurentSeries2 {
            terms: self
                .terms
                .iter()
                .map(|(&(q, a), v)| ((q + q_exp, a + a_exp), v.clone()))
                .collect(),
            cutoff: self.cutoff.map(|c| c + q_exp),
        }
    }

    /// Evaluation at `a = q = 1`.
    pub fn sum_coefficients(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Coefficients of terms with q-exponent at most `bound` agree.
    pub fn agrees_through(&self, other: &Self, bound: HalfInt) -> bool {
        let lhs = self.terms.iter().filter(|((q, _), _)| *q <= bound);
        let rhs = other.terms.iter().filter(|((q, _), _)| *q <= bound);
        lhs.eq(rhs)
    }

    /// All coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| *c >= Rat::zero())
    }

    fn combine_cutoff(a: Option<HalfInt>, b: Option<HalfInt>) -> Option<HalfInt> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = Self::combine_cutoff(self.cutoff, other.cutoff);
        let mut out = LaurentSeries2 {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (&(q, a), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(a, q, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        // f exact through cf, g through cg: the product is exact through
        // min(cf + min_q(g), cg + min_q(f)).
        let bound = |cut: Option<HalfInt>, partner: &Self| -> Option<HalfInt> {
            let c = cut?;
            Some(partner.min_q().map_or(c, |m| c + m))
        };
        let cutoff = match (bound(self.cutoff, other), bound(other.cutoff, self)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let mut out = LaurentSeries2 {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (&(q1, a1), c1) in &self.terms {
            for (&(q2, a2), c2) in &other.terms {
                out.add_term(a1 + a2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    /// Multiplicative inverse through `cutoff`, when the lowest q-degree
    /// part of `self` is a single term.
    pub fn inverse(&self, cutoff: HalfInt) -> Option<Self> {
        let (a0, q0, c0) = self.lowest_term()?;
        if self.terms.keys().filter(|(q, _)| *q == q0).count() != 1 {
            return None;
        }
        let lead_inv = Self::monomial(-a0, -q0, c0.recip());
        let bound = cutoff + q0;
        // 1 - self / lead has only positive q-exponents
        let rest = Self::one().sub(&self.mul(&lead_inv)).truncated(bound);
        let mut sum = Self::one().truncated(bound);
        let mut power = Self::one().truncated(bound);
        let mut k = 0;
        while !power.is_zero() && HalfInt::from_int(k) <= bound.scale(2) + HalfInt::from_int(1) {
            power = power.mul(&rest).truncated(bound);
            sum = sum.add(&power);
            k += 1;
        }
        Some(sum.mul(&lead_inv).truncated(cutoff))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl std::ops::Add for &LaurentSeries2 {
    type Output = LaurentSeries2;
    fn add(self, rhs: &LaurentSeries2) -> LaurentSeries2 {
        LaurentSeries2::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentSeries2 {
    type Output = LaurentSeries2;
    fn sub(self, rhs: &LaurentSeries2) -> LaurentSeries2 {
        LaurentSeries2::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentSeries2 {
    type Output = LaurentSeries2;
    fn mul(self, rhs: &LaurentSeries2) -> LaurentSeries2 {
        LaurentSeries2::mul(self, rhs)
    }
}

pub(crate) fn power_body(var: char, e: HalfInt) -> String {
    if e == HalfInt::ZERO {
        String::new()
    } else if e == HalfInt::from_int(1) {
        var.to_string()
    } else if e.is_integer() && e > HalfInt::ZERO {
        format!("{var}^{e}")
    } else {
        format!("{var}^({e})")
    }
}

fn monomial_body(a: HalfInt, q: HalfInt) -> String {
    let parts: Vec<String> = [power_body('a', a), power_body('q', q)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    parts.join("*")
}

impl fmt::Display for LaurentSeries2 {
    /// `1 + q + a*q + ... + O(q^(c+1/2))`; exact values omit the `O` term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (idx, (&(q, a), c)) in self.terms.iter().enumerate() {
            write_term(&mut out, idx == 0, c, &monomial_body(a, q));
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Some(c) = self.cutoff {
            out.push_str(" + O(");
            out.push_str(&power_body('q', c + HalfInt::from_twice(1)));
            out.push(')');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for LaurentSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_power(factor: &str, var: char) -> Option<HalfInt> {
    let rest = factor.strip_prefix(var)?;
    if rest.is_empty() {
        return Some(HalfInt::from_int(1));
    }
    let e = rest.strip_prefix('^')?.trim();
    let e = e
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(e);
    e.parse().ok()
}

impl FromStr for LaurentSeries2 {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        let err = |msg: &str| RingError::Parse(format!("{msg} in series {s:?}"));
        let mut out = LaurentSeries2::zero();
        let mut cutoff = None;
        for (negative, term) in split_terms(s.trim()) {
            if let Some(inner) = term.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
                let e = parse_power(inner.trim(), 'q').ok_or_else(|| err("bad O-term"))?;
                cutoff = Some(e - HalfInt::from_twice(1));
                continue;
            }
            let mut coeff = Rat::one();
            let (mut a, mut q) = (HalfInt::ZERO, HalfInt::ZERO);
            for factor in term.split('*').map(str::trim) {
                if let Some(e) = parse_power(factor, 'a') {
                    a += e;
                } else if let Some(e) = parse_power(factor, 'q') {
                    q += e;
                } else {
                    coeff *= parse_rat(factor).ok_or_else(|| err("bad factor"))?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(a, q, coeff);
        }
        if let Some(c) = cutoff {
            out = out.truncated(c);
        }
        Ok(out)
    }
}
