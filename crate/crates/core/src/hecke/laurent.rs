use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::groundring::{rat, write_term, Rat};

/// Laurent polynomial over ℚ in two variables, printed as `v` and `z`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Laurent2::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(x: i64, y: i64, c: Rat) -> Self {
        let mut out = Self::zero();
        out.add_term(x, y, c);
        out
    }

    /// The first variable.
    pub fn x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    /// The second variable.
    pub fn y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rat)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, x: i64, y: i64) -> Rat {
        self.terms.get(&(x, y)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, x: i64, y: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((x, y)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(x, y));
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent2 {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Inverse of a single-term element.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(x, y), c) = self.terms.iter().next()?;
        Some(Self::monomial(-x, -y, c.recip()))
    }

    /// `x -> x^{-1}`, `y -> -y`.
    pub fn mirror(&self) -> Self {
        let mut out = Self::zero();
        for (&(x, y), c) in &self.terms {
            let sign = if y.rem_euclid(2) == 0 {
                rat(1)
            } else {
                rat(-1)
            };
            out.add_term(-x, y, c * sign);
        }
        out
    }

    /// Text with chosen variable names, highest exponents of the second
    /// variable first, then highest of the first.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(i64, i64)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.1, k.0)));
        let mut out = String::new();
        for (n, k) in keys.into_iter().enumerate() {
            let mut parts = Vec::new();
            for (name, e) in [(x, k.0), (y, k.1)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write_term(&mut out, n == 0, &self.terms[k], &parts.join("*"));
        }
        out
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("v", "z"))
    }
}

impl fmt::Debug for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent2({self})")
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&(x, y), c) in &rhs.terms {
            out.add_term(x, y, c.clone());
        }
        out
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        self + &(-rhs)
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        self.scale(&rat(-1))
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(x1, y1), c1) in &self.terms {
            for (&(x2, y2), c2) in &rhs.terms {
                out.add_term(x1 + x2, y1 + y2, c1 * c2);
            }
        }
        out
    }
}
